#pragma once

#include <complex>
#include <unordered_map>

#include "nclab/word.hpp"

namespace nclab {

using Complex = std::complex<double>;
using CoeffTable = std::unordered_map<Word, Complex, WordHash>;

/// A finitely supported coefficient table over the word basis of the full
/// Fock space. Absent words carry coefficient zero.
struct FockVector {
    CoeffTable coeffs;

    Complex coeff(const Word& w) const;
    double norm() const;
    int degree() const;  // longest supported word, 0 when empty

    static FockVector vacuum();
    static FockVector basis(const Word& w);
};

Complex fock_inner(const FockVector& f, const FockVector& g);

/// L^a g: prepends the word a to every basis word in the support.
FockVector fock_shift(const Word& a, const FockVector& g);

/// L^{a*} g: keeps the summands whose basis word starts with a, stripped.
FockVector fock_backshift(const Word& a, const FockVector& g);

FockVector operator+(const FockVector& f, const FockVector& g);
FockVector operator-(const FockVector& f, const FockVector& g);
FockVector operator*(Complex c, const FockVector& f);

}  // namespace nclab
