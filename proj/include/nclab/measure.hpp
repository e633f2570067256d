#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nclab/fock.hpp"
#include "nclab/word.hpp"

namespace nclab {

/// A positive NC measure stored as a moment table: one complex value per
/// word of length <= max_len. The value at a backward monomial L^{a*} is the
/// conjugate of the stored moment at a. The unit moment is real and >= 0;
/// positive semi-definiteness of the truncated Gram matrices is checked by
/// is_positive, never assumed.
///
/// Every word within range must be stored explicitly: a zero moment and an
/// unstored moment are different things, and the latter is an error.
class PositiveMeasure {
public:
    PositiveMeasure(int d, int max_len, CoeffTable moments);

    /// Vacuum-state moments: 1 at the unit, 0 elsewhere.
    static PositiveMeasure lebesgue(int d, int max_len);

    /// The d = 2 point mass at Z = (1, 0): moment 1 unless the word uses
    /// letter 2, in which case 0.
    static PositiveMeasure dirac_xi(int max_len);

    /// Moments <state, Z^a state> of a point Z = (Z_1, ..., Z_d) of square
    /// matrices. The row [Z_1 ... Z_d] must be a contraction (largest
    /// singular value <= 1 + 1e-12), otherwise RowNormExceeded.
    static PositiveMeasure from_point(const std::vector<Eigen::MatrixXcd>& point,
                                      const Eigen::VectorXcd& state, int max_len);

    static PositiveMeasure zero(int d, int max_len);

    int dim() const { return d_; }
    int max_len() const { return max_len_; }
    const CoeffTable& moments() const { return moments_; }

    Complex moment(const Word& w) const;

    /// Value on the reduced form of an adjoint product.
    Complex at(const Reduction& r) const;

    /// Value at L^{a*} L^b via the orthogonal-range collapse.
    Complex product_moment(const Word& a, const Word& b) const;

    bool is_zero(double eps = 1e-14) const;

    PositiveMeasure scaled(double c) const;  // c >= 0
    friend PositiveMeasure operator+(const PositiveMeasure& a, const PositiveMeasure& b);

private:
    int d_ = 0;
    int max_len_ = 0;
    CoeffTable moments_;
};

/// A complex NC measure: separate tables for the values on forward
/// monomials L^a and on backward monomials L^{a*}. Both tables agree at the
/// unit. Analytic measures have a vanishing forward table away from the
/// unit while the backward table may survive, which is why the two sides
/// are stored independently.
class ComplexMeasure {
public:
    ComplexMeasure(int d, int max_len, CoeffTable forward, CoeffTable backward);

    static ComplexMeasure from_positive(const PositiveMeasure& mu);
    static ComplexMeasure zero(int d, int max_len);

    int dim() const { return d_; }
    int max_len() const { return max_len_; }
    const CoeffTable& forward_table() const { return fwd_; }
    const CoeffTable& backward_table() const { return bwd_; }

    Complex forward(const Word& w) const;   // value at L^w
    Complex backward(const Word& w) const;  // value at L^{w*}

    Complex at(const Reduction& r) const;
    Complex product_moment(const Word& a, const Word& b) const;

    /// mu*(b) = conj(mu(b*)): swaps the two tables with conjugation.
    ComplexMeasure star() const;
    ComplexMeasure real_part() const;  // (mu + mu*) / 2
    ComplexMeasure imag_part() const;  // (mu - mu*) / 2i

    bool is_hermitian(double eps = 1e-12) const;

    friend ComplexMeasure operator+(const ComplexMeasure& a, const ComplexMeasure& b);
    friend ComplexMeasure operator-(const ComplexMeasure& a, const ComplexMeasure& b);
    ComplexMeasure scaled(Complex c) const;

private:
    int d_ = 0;
    int max_len_ = 0;
    CoeffTable fwd_, bwd_;
};

/// Converts a hermitian complex measure (forward = conj(backward)) into a
/// positive moment table; NotPositive if the unit value has a significant
/// imaginary part or is below -eps.
PositiveMeasure to_positive(const ComplexMeasure& mu, double eps = 1e-10);

/// A polynomial element of the free disk system: finitely many analytic
/// coefficients (on L^a) and coanalytic coefficients (on L^{a*}, no unit
/// entry on that side).
struct DiskSystemElement {
    CoeffTable analytic;
    CoeffTable coanalytic;
};

Complex evaluate(const PositiveMeasure& mu, const DiskSystemElement& x);
Complex evaluate(const ComplexMeasure& mu, const DiskSystemElement& x);

/// Gram matrix over the degree-lex word basis of length <= trunc:
/// G[a, b] = mu(L^{a*} L^b). Hermitian by construction; requires
/// 2 * trunc <= max_len.
Eigen::MatrixXcd gram_matrix(const PositiveMeasure& mu, int trunc);

struct PsdReport {
    bool positive = false;
    double min_eigenvalue = 0;
    double scale = 1;  // max(1, spectral norm of the Gram)
};

/// PSD test with relative tolerance: min eigenvalue >= -tol * scale.
PsdReport is_positive(const PositiveMeasure& mu, int trunc, double tol = 1e-10);

/// Order test mu <= lambda: the Gram of lambda - mu at the truncation is PSD.
PsdReport leq(const PositiveMeasure& mu, const PositiveMeasure& lambda, int trunc,
              double tol = 1e-10);

/// The vector functional b -> <f, b g> on the free disk system, tabulated on
/// all monomials of length <= max_len in the Fock inner product.
ComplexMeasure vector_functional(const FockVector& f, const FockVector& g, int d, int max_len);

}  // namespace nclab
