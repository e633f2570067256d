#include "nclab/series.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "nclab/errors.hpp"

namespace nclab {

FreeSeries::FreeSeries(int d, int cap) : d_(d), cap_(cap) {
    if (d_ < 1) throw ContractViolation("alphabet size must be >= 1");
    if (cap_ < 0) throw ContractViolation("degree cap must be >= 0");
}

FreeSeries FreeSeries::constant(int d, int cap, Complex c) {
    FreeSeries s(d, cap);
    if (c != Complex(0)) s.coeffs_.emplace(Word{}, c);
    return s;
}

FreeSeries FreeSeries::letter(int d, int cap, int k, Complex c) {
    if (k < 1 || k > d) throw ContractViolation("letter outside alphabet");
    if (cap < 1) throw OutOfRange("cap too small for a degree-one term");
    FreeSeries s(d, cap);
    if (c != Complex(0)) s.coeffs_.emplace(Word({k}), c);
    return s;
}

Complex FreeSeries::coeff(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? Complex(0) : it->second;
}

void FreeSeries::set_coeff(const Word& w, Complex c) {
    if (w.length() > cap_) {
        throw OutOfRange("coefficient at word " + w.str() + " exceeds cap " +
                         std::to_string(cap_));
    }
    if (w.max_letter() > d_) {
        throw ContractViolation("word " + w.str() + " uses letters outside 1.." +
                                std::to_string(d_));
    }
    if (c == Complex(0)) {
        coeffs_.erase(w);
    } else {
        coeffs_[w] = c;
    }
}

int FreeSeries::degree() const {
    int deg = 0;
    for (const auto& [w, c] : coeffs_) {
        if (c != Complex(0)) deg = std::max(deg, w.length());
    }
    return deg;
}

FreeSeries FreeSeries::scaled(Complex c) const {
    FreeSeries out(d_, cap_);
    if (c == Complex(0)) return out;
    for (const auto& [w, v] : coeffs_) out.coeffs_.emplace(w, c * v);
    return out;
}

FreeSeries operator+(const FreeSeries& a, const FreeSeries& b) {
    if (a.d_ != b.d_) throw ContractViolation("alphabet mismatch in series sum");
    FreeSeries out(a.d_, std::min(a.cap_, b.cap_));
    for (const auto& [w, c] : a.coeffs_) {
        if (w.length() <= out.cap_) out.coeffs_[w] += c;
    }
    for (const auto& [w, c] : b.coeffs_) {
        if (w.length() <= out.cap_) out.coeffs_[w] += c;
    }
    std::erase_if(out.coeffs_, [](const auto& e) { return e.second == Complex(0); });
    return out;
}

FreeSeries operator-(const FreeSeries& a, const FreeSeries& b) {
    return a + b.scaled(Complex(-1));
}

FreeSeries mul(const FreeSeries& a, const FreeSeries& b) {
    if (a.dim() != b.dim()) throw ContractViolation("alphabet mismatch in series product");
    FreeSeries out(a.dim(), std::min(a.cap(), b.cap()));
    for (const auto& [u, cu] : a.coeffs()) {
        if (cu == Complex(0)) continue;
        for (const auto& [v, cv] : b.coeffs()) {
            if (cv == Complex(0)) continue;
            if (u.length() + v.length() > out.cap()) continue;
            Word w = u.concat(v);
            out.set_coeff(w, out.coeff(w) + cu * cv);
        }
    }
    return out;
}

FreeSeries inverse(const FreeSeries& a) {
    Complex a0 = a.coeff(Word{});
    if (std::abs(a0) <= 1e-12) {
        throw NonInvertibleConstantTerm("constant term " + std::to_string(std::abs(a0)) +
                                        " is too small to invert");
    }
    FreeSeries out(a.dim(), a.cap());
    out.set_coeff(Word{}, Complex(1) / a0);
    // r(w) = -(1/a0) sum over splits w = u v with u nonempty of a(u) r(v).
    for (const Word& w : enumerate_words(a.dim(), a.cap())) {
        if (w.empty()) continue;
        Complex s = 0;
        for (int cut = 1; cut <= w.length(); ++cut) {
            Word head(std::vector<int>(w.letters().begin(), w.letters().begin() + cut));
            Complex ah = a.coeff(head);
            if (ah == Complex(0)) continue;
            s += ah * out.coeff(w.suffix(cut));
        }
        out.set_coeff(w, -s / a0);
    }
    return out;
}

double sup_coeff_diff(const FreeSeries& a, const FreeSeries& b) {
    double m = 0;
    int cap = std::min(a.cap(), b.cap());
    for (const auto& [w, c] : a.coeffs()) {
        if (w.length() <= cap) m = std::max(m, std::abs(c - b.coeff(w)));
    }
    for (const auto& [w, c] : b.coeffs()) {
        if (w.length() <= cap) m = std::max(m, std::abs(a.coeff(w) - c));
    }
    return m;
}

FreeSeries herglotz_series(const PositiveMeasure& mu, int cap) {
    if (cap > mu.max_len()) {
        throw OutOfRange("Herglotz cap " + std::to_string(cap) + " exceeds stored depth " +
                         std::to_string(mu.max_len()));
    }
    FreeSeries h(mu.dim(), cap);
    for (const Word& w : enumerate_words(mu.dim(), cap)) {
        if (w.empty()) {
            h.set_coeff(w, mu.moment(w));
        } else {
            h.set_coeff(w, 2.0 * std::conj(mu.moment(w.reversed())));
        }
    }
    return h;
}

FreeSeries cayley(const FreeSeries& herglotz) {
    Complex h0 = herglotz.coeff(Word{});
    if (std::abs(h0 + Complex(1)) <= 1e-12) {
        throw NonInvertibleConstantTerm("H(0) + 1 vanishes; Cayley transform undefined");
    }
    FreeSeries one = FreeSeries::constant(herglotz.dim(), herglotz.cap(), Complex(1));
    return mul(herglotz - one, inverse(herglotz + one));
}

FreeSeries inverse_cayley(const FreeSeries& schur) {
    Complex b0 = schur.coeff(Word{});
    if (std::abs(b0) >= 1.0) {
        throw SchurConstantTermTooLarge("|b(0)| = " + std::to_string(std::abs(b0)) +
                                        " is not below 1");
    }
    FreeSeries one = FreeSeries::constant(schur.dim(), schur.cap(), Complex(1));
    return mul(one + schur, inverse(one - schur));
}

PositiveMeasure clark_measure(const FreeSeries& schur, int trunc, double tol) {
    FreeSeries h = inverse_cayley(schur);
    int depth = 2 * trunc;
    if (depth > h.cap()) {
        throw OutOfRange("Clark measure at truncation " + std::to_string(trunc) +
                         " needs series cap " + std::to_string(depth));
    }
    Complex unit = h.coeff(Word{});
    if (std::abs(unit.imag()) > 1e-10 * std::max(1.0, std::abs(unit.real())) ||
        unit.real() <= 0) {
        throw NotPositive("Herglotz constant term is not a positive real");
    }
    CoeffTable table;
    for (const Word& w : enumerate_words(schur.dim(), depth)) {
        if (w.empty()) {
            table.emplace(w, Complex(unit.real(), 0.0));
        } else {
            table.emplace(w, std::conj(h.coeff(w.reversed())) / 2.0);
        }
    }
    PositiveMeasure mu(schur.dim(), depth, std::move(table));
    PsdReport psd = is_positive(mu, trunc, tol);
    if (!psd.positive) {
        throw NotPositive("Clark moments fail positivity: min eigenvalue " +
                          std::to_string(psd.min_eigenvalue));
    }
    return mu;
}

double MatrixPoint::row_norm() const {
    if (coords.empty()) return 0;
    Eigen::Index n = level();
    Eigen::MatrixXcd row(n, n * static_cast<Eigen::Index>(coords.size()));
    for (std::size_t k = 0; k < coords.size(); ++k) {
        row.middleCols(static_cast<Eigen::Index>(k) * n, n) = coords[k];
    }
    return row.jacobiSvd().singularValues()(0);
}

Eigen::MatrixXcd MatrixPoint::power(const Word& w) const {
    Eigen::Index n = level();
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n);
    for (int k : w.letters()) p = p * coords[static_cast<std::size_t>(k - 1)];
    return p;
}

MatrixPoint random_strict_point(int d, int level, double target_norm, std::uint64_t seed) {
    if (target_norm <= 0 || target_norm >= 1) {
        throw ContractViolation("target row norm must lie in (0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatrixPoint z;
    z.coords.resize(static_cast<std::size_t>(d));
    for (auto& m : z.coords) {
        m.resize(level, level);
        for (Eigen::Index i = 0; i < level; ++i) {
            for (Eigen::Index j = 0; j < level; ++j) {
                double re = gauss(rng);
                double im = gauss(rng);
                m(i, j) = Complex(re, im);
            }
        }
    }
    double norm = z.row_norm();
    double scale = target_norm / norm;
    for (auto& m : z.coords) m *= scale;
    return z;
}

SeriesValue evaluate(const FreeSeries& s, const MatrixPoint& z, double tol) {
    if (z.dim() != s.dim()) throw ContractViolation("alphabet mismatch in evaluation");
    double r = z.row_norm();
    if (r >= 1.0) {
        throw NotStrict("row norm " + std::to_string(r) + " is not below 1");
    }
    Eigen::Index n = z.level();
    SeriesValue out;
    out.value = Eigen::MatrixXcd::Zero(n, n);

    // Walk the word tree so each monomial matrix extends its prefix by one
    // factor on the right.
    std::vector<double> degree_coeff_sum(static_cast<std::size_t>(s.cap()) + 1, 0.0);
    std::vector<Word> words = enumerate_words(s.dim(), s.cap());
    std::unordered_map<Word, Eigen::MatrixXcd, WordHash> partial;
    partial.reserve(words.size());
    for (const Word& w : words) {
        if (w.empty()) {
            partial.emplace(w, Eigen::MatrixXcd::Identity(n, n));
        } else {
            Word prefix(std::vector<int>(w.letters().begin(), w.letters().end() - 1));
            partial.emplace(w, partial.at(prefix) *
                                   z.coords[static_cast<std::size_t>(w.letter(w.length() - 1) - 1)]);
        }
        Complex c = s.coeff(w);
        if (c != Complex(0)) {
            out.value += c * partial.at(w);
            degree_coeff_sum[static_cast<std::size_t>(w.length())] += std::abs(c);
        }
    }
    double big = 0;
    for (double v : degree_coeff_sum) big = std::max(big, v);
    out.tail_bound = big * std::pow(r, s.cap() + 1) / (1.0 - r);
    out.within_tolerance = out.tail_bound <= tol;
    return out;
}

PositiveMeasure compress(const PositiveMeasure& mu, const FreeSeries& factor, int out_len) {
    if (factor.dim() != mu.dim()) throw ContractViolation("alphabet mismatch in compression");
    CoeffTable table;
    for (const Word& w : enumerate_words(mu.dim(), out_len)) {
        Complex s = 0;
        for (const auto& [u, cu] : factor.coeffs()) {
            if (cu == Complex(0)) continue;
            for (const auto& [v, cv] : factor.coeffs()) {
                if (cv == Complex(0)) continue;
                s += std::conj(cu) * cv * mu.product_moment(u, w.concat(v));
            }
        }
        table.emplace(w, s);
    }
    // The sandwich of a hermitian functional stays hermitian; a stray
    // imaginary part at the unit would be roundoff.
    Complex unit = table.at(Word{});
    if (std::abs(unit.imag()) > 1e-10 * std::max(1.0, std::abs(unit.real()))) {
        throw NotPositive("compressed unit moment is not real");
    }
    table[Word{}] = Complex(unit.real(), 0.0);
    return PositiveMeasure(mu.dim(), out_len, std::move(table));
}

}  // namespace nclab
