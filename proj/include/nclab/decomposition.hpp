#pragma once

#include <array>
#include <optional>

#include "nclab/fock.hpp"
#include "nclab/measure.hpp"
#include "nclab/series.hpp"

namespace nclab {

/// Four positive measures over a common alphabet and depth presenting a
/// complex measure as (p1 - p2) + i (p3 - p4).
struct WittstockQuad {
    std::array<PositiveMeasure, 4> parts;

    PositiveMeasure total_variation() const;
    ComplexMeasure reconstruct() const;

    /// Largest deviation of the reconstruction from the target measure over
    /// both the forward and backward tables on the common depth.
    double reconstruction_error(const ComplexMeasure& target) const;
};

/// True when every stored forward value away from the unit is below tol in
/// magnitude; the unit value is unconstrained.
bool is_analytic(const ComplexMeasure& mu, double tol = 1e-12);

/// The measure b -> mu(L_k^* b). Forward values come from collapsing
/// L_k^* L^a, backward values from mu at L^{(a k)*}; the output range is one
/// letter shallower than the input.
ComplexMeasure back_shift(const ComplexMeasure& mu, int letter);
ComplexMeasure back_shift(const PositiveMeasure& mu, int letter);

/// Wittstock decomposition of the back-shifted measure mu(L_k^* .) by four
/// compressions of mu with the windows (1 +- L_k)/2 and (1 +- i L_k)/2.
/// Each part is positive and the quad reconstructs back_shift(mu, k).
WittstockQuad shift_wittstock(const PositiveMeasure& mu, int letter);

/// Wittstock decomposition of the vector functional b -> <f, b g>: with
/// lam = (m_f + m_g)/2, the parts are (lam +- Re mu)/2 and (lam +- Im mu)/2.
/// Positivity comes from the polarization identities m_{f +- g} >= 0 and
/// m_{f -+ i g} >= 0.
WittstockQuad wittstock_from_vectors(const FockVector& f, const FockVector& g, int d,
                                     int max_len);

enum class PartClass { AbsolutelyContinuous, Singular };

/// A positive measure together with closed-form knowledge of its Lebesgue
/// class, attached where the construction guarantees it (vector
/// functionals, finite moment support, known singular examples).
struct TaggedMeasure {
    PositiveMeasure measure;
    std::optional<PartClass> part_class;
};

struct TaggedQuad {
    std::array<TaggedMeasure, 4> parts;
};

struct LebesgueSplit {
    ComplexMeasure absolutely_continuous;
    ComplexMeasure singular;
};

/// Splits the reconstruction of a tagged quad by component classes. This is
/// metadata passthrough: no part classification is computed, and a missing
/// tag raises UnknownParts.
LebesgueSplit lebesgue_parts(const TaggedQuad& quad);

/// Number of stored moments above tol in magnitude, and the largest degree
/// carrying one. Finite support certifies a vector functional at this depth.
struct MomentSupport {
    int nonzero_count = 0;
    int max_degree = 0;
};

MomentSupport moment_support(const PositiveMeasure& mu, double tol = 1e-12);

}  // namespace nclab
