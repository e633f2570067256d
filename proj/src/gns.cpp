#include "nclab/gns.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "nclab/errors.hpp"

namespace nclab {

namespace {

double spectral_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return m.jacobiSvd().singularValues()(0);
}

// X minimizing |X A - B| over the row span of A; A must have full row rank.
Eigen::MatrixXcd solve_on_span(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd pinv = a.completeOrthogonalDecomposition().pseudoInverse();
    return b * pinv;
}

struct GramFactor {
    Eigen::Index rank = 0;
    Eigen::MatrixXcd coord;  // rank x n with coord^* coord = gram
    double scale = 1;
    double min_eig = 0;
};

// Rank-revealing factorization of a hermitian PSD matrix. Eigenvalues below
// tol * max(1, norm) are discarded; eigenvalues below the negative of that
// cutoff mean the matrix was not PSD to begin with.
GramFactor factor_gram(const Eigen::MatrixXcd& gram, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
    Eigen::Index n = gram.rows();

    GramFactor f;
    f.min_eig = n > 0 ? ev(0) : 0.0;
    double top = n > 0 ? std::max(std::abs(ev(0)), std::abs(ev(n - 1))) : 0.0;
    f.scale = std::max(1.0, top);
    double cutoff = tol * f.scale;
    if (n > 0 && ev(0) < -cutoff) {
        throw NotPositive("Gram matrix has eigenvalue " + std::to_string(ev(0)) +
                          " below -" + std::to_string(cutoff));
    }
    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (ev(i) > cutoff) ++kept;
    }
    f.rank = kept;
    f.coord.resize(kept, n);
    // Keep the surviving eigenpairs in their ascending order; an identity
    // Gram then factors as the identity coordinate map, exactly.
    for (Eigen::Index j = 0; j < kept; ++j) {
        Eigen::Index i = n - kept + j;
        f.coord.row(j) = std::sqrt(ev(i)) * es.eigenvectors().col(i).adjoint();
    }
    return f;
}

}  // namespace

Eigen::Index GnsTruncation::index_of(const Word& w) const {
    auto it = index.find(w);
    if (it == index.end()) {
        throw OutOfRange("word " + w.str() + " is not in the truncated basis");
    }
    return it->second;
}

Eigen::VectorXcd GnsTruncation::word_class(const Word& w) const {
    return coord.col(index_of(w));
}

Eigen::VectorXcd GnsTruncation::apply_word(const Word& a, const Eigen::VectorXcd& x) const {
    if (a.empty()) return x;
    if (a.max_letter() > d) throw ContractViolation("word uses letters outside the alphabet");
    if (interior_rank == 0) {
        throw OutOfRange("truncation has no interior; cannot apply shifts");
    }
    Eigen::VectorXcd v = x;
    for (int i = a.length() - 1; i >= 0; --i) {
        Eigen::VectorXcd pulled = injection.adjoint() * v;
        v = shift[static_cast<std::size_t>(a.letter(i) - 1)] * pulled;
    }
    return v;
}

double GnsTruncation::moment_reproduction_error(const PositiveMeasure& mu) const {
    double worst = 0;
    for (const Word& w : basis) {
        Complex via_ops = cyclic.dot(apply_word(w, cyclic));
        worst = std::max(worst, std::abs(via_ops - mu.moment(w)));
    }
    return worst;
}

double GnsTruncation::shift_isometry_defect() const {
    double worst = 0;
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(interior_rank, interior_rank);
    for (const auto& s : shift) {
        worst = std::max(worst, spectral_norm(s.adjoint() * s - eye));
    }
    return worst;
}

double GnsTruncation::orthogonal_range_defect() const {
    double worst = 0;
    for (std::size_t j = 0; j < shift.size(); ++j) {
        for (std::size_t k = 0; k < shift.size(); ++k) {
            if (j == k) continue;
            worst = std::max(worst, spectral_norm(shift[j].adjoint() * shift[k]));
        }
    }
    return worst;
}

GnsTruncation build_gns(const PositiveMeasure& mu, int trunc, double tol) {
    GnsTruncation g;
    g.d = mu.dim();
    g.trunc = trunc;
    g.tol = tol;
    g.basis = enumerate_words(mu.dim(), trunc);
    for (std::size_t i = 0; i < g.basis.size(); ++i) {
        g.index.emplace(g.basis[i], static_cast<Eigen::Index>(i));
    }
    g.gram = gram_matrix(mu, trunc);

    GramFactor full = factor_gram(g.gram, tol);
    g.gram_scale = full.scale;
    g.gram_min_eig = full.min_eig;
    g.rank = full.rank;
    g.coord = full.coord;
    if (g.rank == 0) {
        throw DegenerateMeasure("Gram matrix vanishes at truncation " + std::to_string(trunc));
    }

    g.interior_size = static_cast<Eigen::Index>(word_count(mu.dim(), trunc - 1));
    if (trunc == 0) {
        g.interior_size = 0;
        g.interior_rank = 0;
        g.injection.resize(g.rank, 0);
        g.interior_projector = Eigen::MatrixXcd::Zero(g.rank, g.rank);
        g.shift.assign(static_cast<std::size_t>(g.d), Eigen::MatrixXcd(g.rank, 0));
        g.cyclic = g.coord.col(0);
        return g;
    }

    GramFactor interior = factor_gram(g.gram.topLeftCorner(g.interior_size, g.interior_size), tol);
    g.interior_rank = interior.rank;
    g.interior_coord = interior.coord;

    // The interior classes sit inside the full space as the leading coord
    // columns; the injection identifies the two coordinatizations and is an
    // isometry because the Gram entries agree.
    Eigen::MatrixXcd inside = g.coord.leftCols(g.interior_size);
    g.injection = solve_on_span(g.interior_coord, inside);
    g.interior_projector = g.injection * g.injection.adjoint();

    g.shift.reserve(static_cast<std::size_t>(g.d));
    for (int k = 1; k <= g.d; ++k) {
        Eigen::MatrixXcd target(g.rank, g.interior_size);
        for (Eigen::Index i = 0; i < g.interior_size; ++i) {
            target.col(i) = g.coord.col(g.index_of(g.basis[static_cast<std::size_t>(i)].prepended(k)));
        }
        g.shift.push_back(solve_on_span(g.interior_coord, target));
    }
    g.cyclic = g.coord.col(0);
    return g;
}

CoEmbedding co_embedding(const GnsTruncation& target, const GnsTruncation& source) {
    if (target.d != source.d || target.trunc != source.trunc) {
        throw ContractViolation("co-embedding requires matching alphabets and truncations");
    }
    CoEmbedding e;
    e.map = solve_on_span(source.coord, target.coord);
    e.derivative = e.map.adjoint() * e.map;
    e.norm = spectral_norm(e.map);
    return e;
}

CoEmbedding co_embedding(const PositiveMeasure& mu, const PositiveMeasure& lambda, int trunc,
                         double tol) {
    PsdReport order = leq(mu, lambda, trunc, tol);
    if (!order.positive) {
        throw NotDominated("leq fails at truncation " + std::to_string(trunc) +
                           ": min eigenvalue " + std::to_string(order.min_eigenvalue));
    }
    return co_embedding(build_gns(mu, trunc, tol), build_gns(lambda, trunc, tol));
}

double toeplitz_defect(const Eigen::MatrixXcd& op, const GnsTruncation& g) {
    if (op.rows() != g.rank || op.cols() != g.rank) {
        throw ContractViolation("operator does not act on the truncated coordinates");
    }
    if (g.trunc < 2) throw OutOfRange("Toeplitz defect needs truncation >= 2");

    Eigen::Index deep = static_cast<Eigen::Index>(word_count(g.d, g.trunc - 2));
    GramFactor inner = factor_gram(g.gram.topLeftCorner(deep, deep), g.tol);
    Eigen::MatrixXcd basis2 = solve_on_span(inner.coord, g.coord.leftCols(deep));
    Eigen::MatrixXcd proj = basis2 * basis2.adjoint();

    double worst = 0;
    for (std::size_t j = 0; j < g.shift.size(); ++j) {
        Eigen::MatrixXcd full_j = g.shift[j] * g.injection.adjoint();
        for (std::size_t k = 0; k < g.shift.size(); ++k) {
            Eigen::MatrixXcd full_k = g.shift[k] * g.injection.adjoint();
            Eigen::MatrixXcd diff = full_j.adjoint() * op * full_k;
            if (j == k) diff -= op;
            worst = std::max(worst, spectral_norm(proj * diff * proj));
        }
    }
    return worst;
}

double intertwining_defect(const CoEmbedding& e, const GnsTruncation& target,
                           const GnsTruncation& source) {
    double worst = 0;
    for (std::size_t k = 0; k < source.shift.size(); ++k) {
        Eigen::MatrixXcd lhs = e.map * source.shift[k];
        Eigen::MatrixXcd rhs =
            target.shift[k] * target.injection.adjoint() * e.map * source.injection;
        worst = std::max(worst, spectral_norm(lhs - rhs));
    }
    return worst;
}

namespace {

// pi(p) applied to a coordinate vector, one monomial at a time.
Eigen::VectorXcd apply_polynomial(const GnsTruncation& g, const FreeSeries& p,
                                  const Eigen::VectorXcd& x) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g.rank);
    for (const auto& [w, c] : p.coeffs()) {
        if (c == Complex(0)) continue;
        out += c * g.apply_word(w, x);
    }
    return out;
}

}  // namespace

double positivity_transfer_check(const PositiveMeasure& mu, const PositiveMeasure& lambda,
                                 const FreeSeries& p, int trunc, double tol) {
    PsdReport order = leq(mu, lambda, trunc, tol);
    if (!order.positive) {
        throw NotDominated("leq fails: min eigenvalue " + std::to_string(order.min_eigenvalue));
    }
    int inner = trunc - p.degree();
    if (inner < 0) {
        throw OutOfRange("polynomial degree exceeds the truncation");
    }
    GnsTruncation gm = build_gns(mu, trunc, tol);
    GnsTruncation gl = build_gns(lambda, trunc, tol);
    CoEmbedding e = co_embedding(gm, gl);

    std::vector<Word> words = enumerate_words(mu.dim(), inner);
    Eigen::Index n = static_cast<Eigen::Index>(words.size());
    Eigen::MatrixXcd on_lambda(gl.rank, n);
    Eigen::MatrixXcd on_mu(gm.rank, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Word& w = words[static_cast<std::size_t>(i)];
        on_lambda.col(i) = apply_polynomial(gl, p, gl.word_class(w));
        on_mu.col(i) = apply_polynomial(gm, p, e.map * gl.word_class(w));
    }
    Eigen::MatrixXcd diff =
        on_lambda.adjoint() * on_lambda - on_mu.adjoint() * on_mu;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (diff + diff.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Complex GnsFunctional::eval(const Word& a, const Word& b) const {
    return total.word_class(a).dot(toeplitz * total.word_class(b));
}

GnsFunctional gns_formula(const std::array<PositiveMeasure, 4>& parts, int trunc, double tol) {
    PositiveMeasure sum = parts[0] + parts[1] + parts[2] + parts[3];
    GnsFunctional f{build_gns(sum, trunc, tol), {}, {}};
    for (std::size_t k = 0; k < 4; ++k) {
        if (parts[k].is_zero()) {
            f.derivatives[k] = Eigen::MatrixXcd::Zero(f.total.rank, f.total.rank);
        } else {
            CoEmbedding e = co_embedding(build_gns(parts[k], trunc, tol), f.total);
            f.derivatives[k] = e.derivative;
        }
    }
    f.toeplitz = (f.derivatives[0] - f.derivatives[1]) +
                 Complex(0, 1) * (f.derivatives[2] - f.derivatives[3]);
    return f;
}

}  // namespace nclab
