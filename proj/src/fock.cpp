#include "nclab/fock.hpp"

#include <algorithm>
#include <cmath>

namespace nclab {

Complex FockVector::coeff(const Word& w) const {
    auto it = coeffs.find(w);
    return it == coeffs.end() ? Complex(0) : it->second;
}

double FockVector::norm() const {
    double s = 0;
    for (const auto& [w, c] : coeffs) s += std::norm(c);
    return std::sqrt(s);
}

int FockVector::degree() const {
    int deg = 0;
    for (const auto& [w, c] : coeffs) deg = std::max(deg, w.length());
    return deg;
}

FockVector FockVector::vacuum() {
    return basis(Word{});
}

FockVector FockVector::basis(const Word& w) {
    FockVector v;
    v.coeffs.emplace(w, Complex(1));
    return v;
}

Complex fock_inner(const FockVector& f, const FockVector& g) {
    // Iterate the smaller support.
    const FockVector& a = f.coeffs.size() <= g.coeffs.size() ? f : g;
    const FockVector& b = f.coeffs.size() <= g.coeffs.size() ? g : f;
    Complex s = 0;
    for (const auto& [w, c] : a.coeffs) {
        auto it = b.coeffs.find(w);
        if (it == b.coeffs.end()) continue;
        s += (&a == &f) ? std::conj(c) * it->second : std::conj(it->second) * c;
    }
    return s;
}

FockVector fock_shift(const Word& a, const FockVector& g) {
    FockVector out;
    for (const auto& [w, c] : g.coeffs) out.coeffs.emplace(a.concat(w), c);
    return out;
}

FockVector fock_backshift(const Word& a, const FockVector& g) {
    FockVector out;
    for (const auto& [w, c] : g.coeffs) {
        if (a.is_prefix_of(w)) out.coeffs.emplace(w.suffix(a.length()), c);
    }
    return out;
}

FockVector operator+(const FockVector& f, const FockVector& g) {
    FockVector out = f;
    for (const auto& [w, c] : g.coeffs) out.coeffs[w] += c;
    return out;
}

FockVector operator-(const FockVector& f, const FockVector& g) {
    FockVector out = f;
    for (const auto& [w, c] : g.coeffs) out.coeffs[w] -= c;
    return out;
}

FockVector operator*(Complex c, const FockVector& f) {
    FockVector out = f;
    for (auto& [w, v] : out.coeffs) v *= c;
    return out;
}

}  // namespace nclab
