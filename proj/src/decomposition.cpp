#include "nclab/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "nclab/errors.hpp"

namespace nclab {

PositiveMeasure WittstockQuad::total_variation() const {
    return parts[0] + parts[1] + parts[2] + parts[3];
}

ComplexMeasure WittstockQuad::reconstruct() const {
    ComplexMeasure real =
        ComplexMeasure::from_positive(parts[0]) - ComplexMeasure::from_positive(parts[1]);
    ComplexMeasure imag =
        ComplexMeasure::from_positive(parts[2]) - ComplexMeasure::from_positive(parts[3]);
    return real + imag.scaled(Complex(0, 1));
}

double WittstockQuad::reconstruction_error(const ComplexMeasure& target) const {
    ComplexMeasure got = reconstruct();
    int len = std::min(got.max_len(), target.max_len());
    double worst = 0;
    for (const Word& w : enumerate_words(target.dim(), len)) {
        worst = std::max(worst, std::abs(got.forward(w) - target.forward(w)));
        worst = std::max(worst, std::abs(got.backward(w) - target.backward(w)));
    }
    return worst;
}

bool is_analytic(const ComplexMeasure& mu, double tol) {
    for (const auto& [w, c] : mu.forward_table()) {
        if (!w.empty() && std::abs(c) > tol) return false;
    }
    return true;
}

ComplexMeasure back_shift(const ComplexMeasure& mu, int letter) {
    if (letter < 1 || letter > mu.dim()) throw ContractViolation("letter outside alphabet");
    if (mu.max_len() < 1) {
        throw OutOfRange("back shift needs moments one letter deeper than the output");
    }
    Word k({letter});
    int out_len = mu.max_len() - 1;
    CoeffTable fwd, bwd;
    for (const Word& w : enumerate_words(mu.dim(), out_len)) {
        fwd.emplace(w, mu.at(reduce_adjoint_product(k, w)));
        bwd.emplace(w, mu.backward(w.appended(letter)));
    }
    return ComplexMeasure(mu.dim(), out_len, std::move(fwd), std::move(bwd));
}

ComplexMeasure back_shift(const PositiveMeasure& mu, int letter) {
    return back_shift(ComplexMeasure::from_positive(mu), letter);
}

WittstockQuad shift_wittstock(const PositiveMeasure& mu, int letter) {
    if (letter < 1 || letter > mu.dim()) throw ContractViolation("letter outside alphabet");
    if (mu.max_len() < 1) throw OutOfRange("shift decomposition needs depth >= 1");
    int out_len = mu.max_len() - 1;
    // Window coefficient 1/2: expanding the four sandwiches doubles the
    // cross terms, and this is the unique scaling under which the quad
    // reconstructs the back-shifted measure exactly.
    const double half = 0.5;

    auto window = [&](Complex letter_coeff) {
        FreeSeries a(mu.dim(), 1);
        a.set_coeff(Word{}, Complex(half));
        a.set_coeff(Word({letter}), letter_coeff * half);
        return a;
    };
    return WittstockQuad{{compress(mu, window(Complex(1)), out_len),
                          compress(mu, window(Complex(-1)), out_len),
                          compress(mu, window(Complex(0, 1)), out_len),
                          compress(mu, window(Complex(0, -1)), out_len)}};
}

WittstockQuad wittstock_from_vectors(const FockVector& f, const FockVector& g, int d,
                                     int max_len) {
    ComplexMeasure mu = vector_functional(f, g, d, max_len);
    ComplexMeasure lam = (vector_functional(f, f, d, max_len) +
                          vector_functional(g, g, d, max_len))
                             .scaled(Complex(0.5));
    ComplexMeasure re = mu.real_part();
    ComplexMeasure im = mu.imag_part();
    auto half = [](const ComplexMeasure& m) { return m.scaled(Complex(0.5)); };
    return WittstockQuad{{to_positive(half(lam + re)), to_positive(half(lam - re)),
                          to_positive(half(lam + im)), to_positive(half(lam - im))}};
}

LebesgueSplit lebesgue_parts(const TaggedQuad& quad) {
    for (const TaggedMeasure& t : quad.parts) {
        if (!t.part_class.has_value()) {
            throw UnknownParts("quad component carries no closed-form class tag");
        }
    }
    int d = quad.parts[0].measure.dim();
    int len = quad.parts[0].measure.max_len();
    for (const TaggedMeasure& t : quad.parts) {
        len = std::min(len, t.measure.max_len());
    }
    std::array<Complex, 4> sign = {Complex(1), Complex(-1), Complex(0, 1), Complex(0, -1)};
    LebesgueSplit split{ComplexMeasure::zero(d, len), ComplexMeasure::zero(d, len)};
    for (std::size_t k = 0; k < 4; ++k) {
        ComplexMeasure piece = ComplexMeasure::from_positive(quad.parts[k].measure).scaled(sign[k]);
        if (*quad.parts[k].part_class == PartClass::AbsolutelyContinuous) {
            split.absolutely_continuous = split.absolutely_continuous + piece;
        } else {
            split.singular = split.singular + piece;
        }
    }
    return split;
}

MomentSupport moment_support(const PositiveMeasure& mu, double tol) {
    MomentSupport s;
    for (const auto& [w, c] : mu.moments()) {
        if (std::abs(c) > tol) {
            ++s.nonzero_count;
            s.max_degree = std::max(s.max_degree, w.length());
        }
    }
    return s;
}

}  // namespace nclab
