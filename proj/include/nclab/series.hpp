#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "nclab/fock.hpp"
#include "nclab/measure.hpp"
#include "nclab/word.hpp"

namespace nclab {

/// A free power series truncated at a degree cap: finitely many complex
/// coefficients indexed by words of length <= cap. Coefficients above the
/// cap are unknown, not zero; arithmetic truncates results at the smaller
/// cap of its operands and never inflates degrees silently.
class FreeSeries {
public:
    FreeSeries(int d, int cap);

    static FreeSeries constant(int d, int cap, Complex c);
    static FreeSeries letter(int d, int cap, int k, Complex c = Complex(1));

    int dim() const { return d_; }
    int cap() const { return cap_; }
    const CoeffTable& coeffs() const { return coeffs_; }

    Complex coeff(const Word& w) const;  // zero when absent
    void set_coeff(const Word& w, Complex c);

    /// Largest length of a word with a nonzero coefficient (0 when none).
    int degree() const;

    FreeSeries scaled(Complex c) const;
    friend FreeSeries operator+(const FreeSeries& a, const FreeSeries& b);
    friend FreeSeries operator-(const FreeSeries& a, const FreeSeries& b);

private:
    int d_ = 0;
    int cap_ = 0;
    CoeffTable coeffs_;
};

/// Cauchy product on words (concatenation order: (a b)(w) sums a(u) b(v)
/// over the splits w = u v). Truncated at the smaller cap.
FreeSeries mul(const FreeSeries& a, const FreeSeries& b);

/// Multiplicative inverse up to the cap; requires a nonzero constant term
/// (NonInvertibleConstantTerm below 1e-12 in magnitude).
FreeSeries inverse(const FreeSeries& a);

/// Largest coefficient difference between two series on the common cap.
double sup_coeff_diff(const FreeSeries& a, const FreeSeries& b);

/// Herglotz series of a positive measure: coefficient mu(I) at the unit and
/// 2 conj(mu(L^{w^t})) at every other word, where w^t reverses the word.
/// Requires cap <= mu.max_len().
FreeSeries herglotz_series(const PositiveMeasure& mu, int cap);

/// b = (H - 1)(H + 1)^{-1}. NonInvertibleConstantTerm when H(0) + 1
/// vanishes.
FreeSeries cayley(const FreeSeries& herglotz);

/// H = (1 + b)(1 - b)^{-1}. SchurConstantTermTooLarge when |b(0)| >= 1.
FreeSeries inverse_cayley(const FreeSeries& schur);

/// Positive measure whose Herglotz series is the inverse Cayley transform
/// of the Schur-class series b. Moments are read off the series to depth
/// 2 * trunc (so b.cap() >= 2 * trunc is required) and the truncated Gram
/// is verified PSD; NotPositive when b is not Schur class.
PositiveMeasure clark_measure(const FreeSeries& schur, int trunc, double tol = 1e-10);

/// A tuple of n x n complex matrices, one per letter. Strict points have
/// row norm (largest singular value of the row [Z_1 ... Z_d]) below one.
struct MatrixPoint {
    std::vector<Eigen::MatrixXcd> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    Eigen::Index level() const { return coords.empty() ? 0 : coords.front().rows(); }
    double row_norm() const;

    /// Z^w, multiplying coordinates left to right along the word.
    Eigen::MatrixXcd power(const Word& w) const;
};

/// Deterministic Gaussian sample rescaled so that the row norm equals
/// target_norm exactly (up to floating point).
MatrixPoint random_strict_point(int d, int level, double target_norm, std::uint64_t seed);

struct SeriesValue {
    Eigen::MatrixXcd value;
    double tail_bound = 0;
    bool within_tolerance = true;
};

/// Degree-by-degree evaluation sum_{|w| <= cap} Z^w coeff(w) together with
/// the crude geometric tail bound C r^{cap+1} / (1 - r), where C is the
/// largest per-degree sum of coefficient magnitudes and r the row norm.
/// NotStrict when r >= 1; within_tolerance records tail_bound <= tol.
SeriesValue evaluate(const FreeSeries& s, const MatrixPoint& z,
                     double tol = std::numeric_limits<double>::infinity());

/// Compression of a measure by an analytic polynomial: the moment of the
/// result at w is sum_{u,v} conj(a0(u)) a0(v) mu(L^{u*} L^{w v}). Needs
/// moments of mu one polynomial-degree deeper than the output range.
PositiveMeasure compress(const PositiveMeasure& mu, const FreeSeries& factor, int out_len);

}  // namespace nclab
