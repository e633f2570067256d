#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "nclab/gns.hpp"
#include "nclab/measure.hpp"

namespace nclab {

/// Norm of the compression of I - sum_k shift_k shift_k^* to the interior
/// span. Zero means every interior class lies in the joint shift range at
/// this truncation, the finite shadow of surjectivity; the vacuum state
/// scores exactly one.
double cuntz_defect(const GnsTruncation& g);

struct WanderingReport {
    double max_correlation = 0;  // max |<x, shift^a x>| over 1 <= |a| <= depth
    double normalized = 0;       // the same divided by |x|^2
};

/// Correlation of a coordinate vector with its own shift orbit. A zero
/// report certifies the vector wandering to the given depth. Exact when the
/// degrees present in x plus the depth stay within the truncation.
WanderingReport wandering_check(const GnsTruncation& g, const Eigen::VectorXcd& x, int depth);

struct AcFitReport {
    double residual = 0;  // relative Frobenius misfit of the final iterate
    int iterations = 0;
    FockVector f, g;
};

/// Least-squares fit of the truncated moment matrix mu(L^{a*} L^b) by a
/// vector functional <f, L^{a*} L^b g> over Fock vectors supported on words
/// of length <= trunc. The objective is bilinear in (f, g), so the solver
/// alternates linear solves starting from the vacuum pair. A small residual
/// is evidence, at this truncation only, that mu is a vector functional.
AcFitReport ac_fit(const PositiveMeasure& mu, int trunc, int max_iterations = 50,
                   double target = 1e-10);

struct CauchySupport {
    int nonzero_count = 0;
    int max_degree = -1;           // largest |a| with a surviving coefficient
    bool reaches_boundary = false; // no cutoff visible inside the window
};

/// Support of the coefficient sequence a -> mu(L^{w*} L^{a*} L^w) for
/// |a| <= depth. Finitely supported sequences signal that the compression
/// of mu by L^w acts like a polynomial Cauchy transform.
CauchySupport polynomial_cauchy_check(const PositiveMeasure& mu, const Word& window, int depth,
                                      double tol = 1e-12);

/// Measured quantities only; no Kennedy type is ever asserted, because the
/// types are defined through weak-* closures that no truncation can decide.
struct TypeReport {
    double cuntz_defect = 0;
    std::vector<std::pair<Word, double>> wandering_witnesses;
    double ac_fit_residual = 0;
    std::string notes;
};

TypeReport type_report(const PositiveMeasure& mu, int trunc, double tol = 1e-9);

}  // namespace nclab
