#include "nclab/classify.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "nclab/errors.hpp"

namespace nclab {

double cuntz_defect(const GnsTruncation& g) {
    if (g.trunc < 2) throw OutOfRange("Cuntz defect needs truncation >= 2");
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(g.rank, g.rank);
    for (const auto& s : g.shift) sum += s * s.adjoint();
    Eigen::MatrixXcd gap = Eigen::MatrixXcd::Identity(g.rank, g.rank) - sum;
    Eigen::MatrixXcd pinned = g.interior_projector * gap * g.interior_projector;
    if (pinned.rows() == 0) return 0;
    return pinned.jacobiSvd().singularValues()(0);
}

WanderingReport wandering_check(const GnsTruncation& g, const Eigen::VectorXcd& x, int depth) {
    if (depth < 0 || depth > g.trunc - 1) {
        throw OutOfRange("wandering depth must lie in 0..trunc-1");
    }
    WanderingReport r;
    for (const Word& a : enumerate_words(g.d, depth)) {
        if (a.empty()) continue;
        r.max_correlation = std::max(r.max_correlation, std::abs(x.dot(g.apply_word(a, x))));
    }
    double n2 = x.squaredNorm();
    r.normalized = n2 > 0 ? r.max_correlation / n2 : 0.0;
    return r;
}

namespace {

// Linear index of an (a, b) pair of basis words.
inline Eigen::Index pair_index(Eigen::Index i, Eigen::Index j, Eigen::Index n) {
    return i * n + j;
}

}  // namespace

AcFitReport ac_fit(const PositiveMeasure& mu, int trunc, int max_iterations, double target) {
    std::vector<Word> words = enumerate_words(mu.dim(), trunc);
    Eigen::Index n = static_cast<Eigen::Index>(words.size());

    Eigen::VectorXcd rhs(n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            rhs(pair_index(i, j, n)) = mu.product_moment(words[static_cast<std::size_t>(i)],
                                                         words[static_cast<std::size_t>(j)]);
        }
    }
    double rhs_norm = std::max(rhs.norm(), 1e-300);

    // Coefficient vectors over the truncated word basis; start at the vacuum.
    Eigen::VectorXcd fv = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd gv = Eigen::VectorXcd::Zero(n);
    fv(0) = 1;
    gv(0) = 1;

    std::unordered_map<Word, Eigen::Index, WordHash> index;
    for (Eigen::Index i = 0; i < n; ++i) index.emplace(words[static_cast<std::size_t>(i)], i);

    // <L^a f, L^b g> couples f(u) and g(v) exactly when a.u == b.v; for one
    // factor fixed, the model is linear in the other.
    auto residual = [&](const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
        Eigen::VectorXcd model = Eigen::VectorXcd::Zero(n * n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Word& a = words[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < n; ++j) {
                const Word& b = words[static_cast<std::size_t>(j)];
                Complex s = 0;
                for (Eigen::Index v = 0; v < n; ++v) {
                    if (g(v) == Complex(0)) continue;
                    Word bv = b.concat(words[static_cast<std::size_t>(v)]);
                    if (!a.is_prefix_of(bv)) continue;
                    Word u = bv.suffix(a.length());
                    if (u.length() > trunc) continue;
                    s += std::conj(f(index.at(u))) * g(v);
                }
                model(pair_index(i, j, n)) = s;
            }
        }
        return (model - rhs).norm() / rhs_norm;
    };

    AcFitReport report;
    double res = residual(fv, gv);
    for (int it = 0; it < max_iterations && res > target; ++it) {
        // Solve for g with f fixed.
        Eigen::MatrixXcd a_mat = Eigen::MatrixXcd::Zero(n * n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Word& a = words[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < n; ++j) {
                const Word& b = words[static_cast<std::size_t>(j)];
                for (Eigen::Index v = 0; v < n; ++v) {
                    Word bv = b.concat(words[static_cast<std::size_t>(v)]);
                    if (!a.is_prefix_of(bv)) continue;
                    Word u = bv.suffix(a.length());
                    if (u.length() > trunc) continue;
                    a_mat(pair_index(i, j, n), v) += std::conj(fv(index.at(u)));
                }
            }
        }
        gv = a_mat.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);

        // Solve for conj(f) with g fixed.
        Eigen::MatrixXcd b_mat = Eigen::MatrixXcd::Zero(n * n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Word& a = words[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < n; ++j) {
                const Word& b = words[static_cast<std::size_t>(j)];
                for (Eigen::Index u = 0; u < n; ++u) {
                    Word au = a.concat(words[static_cast<std::size_t>(u)]);
                    if (!b.is_prefix_of(au)) continue;
                    Word v = au.suffix(b.length());
                    if (v.length() > trunc) continue;
                    b_mat(pair_index(i, j, n), u) += gv(index.at(v));
                }
            }
        }
        fv = b_mat.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs).conjugate();

        res = residual(fv, gv);
        report.iterations = it + 1;
    }

    report.residual = res;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (fv(i) != Complex(0)) report.f.coeffs.emplace(words[static_cast<std::size_t>(i)], fv(i));
        if (gv(i) != Complex(0)) report.g.coeffs.emplace(words[static_cast<std::size_t>(i)], gv(i));
    }
    return report;
}

CauchySupport polynomial_cauchy_check(const PositiveMeasure& mu, const Word& window, int depth,
                                      double tol) {
    if (depth + window.length() > mu.max_len()) {
        throw OutOfRange("Cauchy support window needs moments to depth " +
                         std::to_string(depth + window.length()));
    }
    CauchySupport s;
    for (const Word& a : enumerate_words(mu.dim(), depth)) {
        Complex h = mu.product_moment(a.concat(window), window);
        if (std::abs(h) > tol) {
            ++s.nonzero_count;
            s.max_degree = std::max(s.max_degree, a.length());
        }
    }
    s.reaches_boundary = (s.max_degree == depth);
    return s;
}

TypeReport type_report(const PositiveMeasure& mu, int trunc, double tol) {
    GnsTruncation g = build_gns(mu, trunc, tol);
    TypeReport report;
    report.cuntz_defect = cuntz_defect(g);
    for (const Word& w : enumerate_words(mu.dim(), 1)) {
        int depth = trunc - std::max(w.length(), 1);
        if (depth < 1) continue;
        WanderingReport wr = wandering_check(g, g.word_class(w), depth);
        report.wandering_witnesses.emplace_back(w, wr.normalized);
    }
    report.ac_fit_residual = ac_fit(mu, std::min(trunc, mu.max_len() / 2)).residual;
    report.notes = "measured at truncation " + std::to_string(trunc) +
                   "; diagnostics only, no type is asserted";
    return report;
}

}  // namespace nclab
