#pragma once

#include <Eigen/Dense>
#include <array>
#include <unordered_map>
#include <vector>

#include "nclab/measure.hpp"
#include "nclab/series.hpp"
#include "nclab/word.hpp"

namespace nclab {

/// Finite truncation of the GNS space of a positive measure.
///
/// The Gram matrix over the word basis of length <= trunc is factored as
/// coord^* coord through an eigendecomposition with a relative rank cutoff,
/// so the class of the word at basis index i is the column coord.col(i) in
/// C^rank and inner products of classes are plain coordinate inner products.
///
/// Words of length <= trunc - 1 span the "interior"; they carry their own
/// coordinate factor of rank interior_rank, an isometric injection into the
/// full coordinates, and the shift matrices. Each shift maps interior
/// coordinates into full coordinates (class of a -> class of ka); keeping
/// the domain one degree short is what preserves the isometry and
/// orthogonal-range identities at the truncation.
struct GnsTruncation {
    int d = 0;
    int trunc = 0;
    double tol = 0;

    std::vector<Word> basis;  // words of length <= trunc, degree-lex
    std::unordered_map<Word, Eigen::Index, WordHash> index;

    Eigen::MatrixXcd gram;   // n x n, hermitian PSD
    double gram_scale = 1;   // max(1, spectral norm)
    double gram_min_eig = 0;
    Eigen::Index rank = 0;
    Eigen::MatrixXcd coord;  // rank x n

    Eigen::Index interior_size = 0;  // number of words of length <= trunc - 1
    Eigen::Index interior_rank = 0;
    Eigen::MatrixXcd interior_coord;      // interior_rank x interior_size
    Eigen::MatrixXcd injection;           // rank x interior_rank, isometry
    Eigen::MatrixXcd interior_projector;  // rank x rank, onto the interior span

    std::vector<Eigen::MatrixXcd> shift;  // d matrices, rank x interior_rank
    Eigen::VectorXcd cyclic;              // class of the unit

    Eigen::Index index_of(const Word& w) const;
    Eigen::VectorXcd word_class(const Word& w) const;

    /// Applies the shift word to a coordinate vector by composing the shift
    /// matrices, pulling back through the interior injection between
    /// letters. Exact on classes of words w with |w| + |a| <= trunc.
    Eigen::VectorXcd apply_word(const Word& a, const Eigen::VectorXcd& x) const;

    /// Largest deviation of <cyclic, shift^a cyclic> from the stored moments
    /// over all words of length <= trunc.
    double moment_reproduction_error(const PositiveMeasure& mu) const;

    double shift_isometry_defect() const;    // max_k |shift_k^* shift_k - I|
    double orthogonal_range_defect() const;  // max_{j != k} |shift_j^* shift_k|
};

/// Runs the GNS construction for mu at the given truncation. Requires
/// 2 * trunc <= mu.max_len(); DegenerateMeasure when the Gram vanishes,
/// NotPositive when it has eigenvalues below the negative tolerance.
GnsTruncation build_gns(const PositiveMeasure& mu, int trunc, double tol = 1e-9);

/// The contraction from the lambda-truncation onto the mu-truncation that
/// sends the lambda-class of every word to its mu-class, solved in the least
/// squares sense on the lambda coordinate span. Well defined whenever
/// mu <= lambda holds at the truncation.
struct CoEmbedding {
    Eigen::MatrixXcd map;         // rank_mu x rank_lambda
    Eigen::MatrixXcd derivative;  // D = map^* map, on lambda coordinates
    double norm = 0;              // largest singular value of map
};

CoEmbedding co_embedding(const GnsTruncation& target, const GnsTruncation& source);

/// Measure-level wrapper: verifies leq(mu, lambda) first (NotDominated).
CoEmbedding co_embedding(const PositiveMeasure& mu, const PositiveMeasure& lambda, int trunc,
                         double tol = 1e-10);

/// How far a matrix on the truncated GNS space is from satisfying the
/// shift-compression identity shift_j^* D shift_k = delta_jk D, measured on
/// the span of classes of words of length <= trunc - 2, where the relation
/// is untouched by the truncation.
double toeplitz_defect(const Eigen::MatrixXcd& op, const GnsTruncation& g);

/// Intertwining defect of a co-embedding: max_k |E shift_{lambda,k} -
/// shift_{mu,k} E| on the interior domain.
double intertwining_defect(const CoEmbedding& e, const GnsTruncation& target,
                           const GnsTruncation& source);

/// Minimum eigenvalue of pi_lambda(p)^* pi_lambda(p) -
/// E^* pi_mu(p)^* pi_mu(p) E sandwiched by classes of words of length
/// <= trunc - deg(p). Nonnegative (up to roundoff) whenever mu <= lambda;
/// the returned value is the slack of that positivity transfer.
double positivity_transfer_check(const PositiveMeasure& mu, const PositiveMeasure& lambda,
                                 const FreeSeries& p, int trunc, double tol = 1e-10);

/// GNS functional of a four-tuple of positive measures: builds the GNS
/// truncation of the sum, the four compression derivatives D_k, and the
/// combined operator T = (D_1 - D_2) + i (D_3 - D_4). eval(a, b) returns
/// <class(a), T class(b)>, which reproduces the complex measure
/// (m_1 - m_2) + i (m_3 - m_4) on adjoint products.
struct GnsFunctional {
    GnsTruncation total;
    std::array<Eigen::MatrixXcd, 4> derivatives;
    Eigen::MatrixXcd toeplitz;

    Complex eval(const Word& a, const Word& b) const;
};

GnsFunctional gns_formula(const std::array<PositiveMeasure, 4>& parts, int trunc,
                          double tol = 1e-9);

}  // namespace nclab
