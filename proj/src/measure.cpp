#include "nclab/measure.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "nclab/errors.hpp"

namespace nclab {

namespace {

// Completeness and alphabet validation shared by both measure types.
void validate_table(const CoeffTable& table, int d, int max_len, const char* side) {
    for (const auto& [w, c] : table) {
        (void)c;
        if (w.max_letter() > d) {
            throw ContractViolation("word " + w.str() + " uses letters outside 1.." +
                                    std::to_string(d));
        }
        if (w.length() > max_len) {
            throw OutOfRange("stored " + std::string(side) + " word " + w.str() +
                             " exceeds max_len " + std::to_string(max_len));
        }
    }
    std::size_t expected = word_count(d, max_len);
    if (table.size() != expected) {
        throw MissingMoment(std::string(side) + " table holds " + std::to_string(table.size()) +
                            " entries, expected " + std::to_string(expected) +
                            " for max_len " + std::to_string(max_len));
    }
}

Complex lookup(const CoeffTable& table, const Word& w, int max_len, const char* what) {
    if (w.length() > max_len) {
        throw OutOfRange(std::string(what) + " at word " + w.str() + " exceeds max_len " +
                         std::to_string(max_len));
    }
    auto it = table.find(w);
    if (it == table.end()) {
        throw MissingMoment(std::string(what) + " missing at word " + w.str());
    }
    return it->second;
}

}  // namespace

PositiveMeasure::PositiveMeasure(int d, int max_len, CoeffTable moments)
    : d_(d), max_len_(max_len), moments_(std::move(moments)) {
    if (d_ < 1) throw ContractViolation("alphabet size must be >= 1");
    if (max_len_ < 0) throw ContractViolation("max_len must be >= 0");
    validate_table(moments_, d_, max_len_, "moment");
    Word unit;
    auto it = moments_.find(unit);
    Complex u = it->second;
    if (std::abs(u.imag()) > 1e-12 * std::max(1.0, std::abs(u.real()))) {
        throw NotPositive("unit moment must be real, got imaginary part " +
                          std::to_string(u.imag()));
    }
    if (u.real() < -1e-12) {
        throw NotPositive("unit moment must be >= 0, got " + std::to_string(u.real()));
    }
    it->second = Complex(std::max(u.real(), 0.0), 0.0);
}

PositiveMeasure PositiveMeasure::lebesgue(int d, int max_len) {
    CoeffTable table;
    for (const Word& w : enumerate_words(d, max_len)) {
        table.emplace(w, w.empty() ? Complex(1) : Complex(0));
    }
    return PositiveMeasure(d, max_len, std::move(table));
}

PositiveMeasure PositiveMeasure::dirac_xi(int max_len) {
    CoeffTable table;
    for (const Word& w : enumerate_words(2, max_len)) {
        bool has_two = false;
        for (int k : w.letters()) has_two |= (k == 2);
        table.emplace(w, has_two ? Complex(0) : Complex(1));
    }
    return PositiveMeasure(2, max_len, std::move(table));
}

PositiveMeasure PositiveMeasure::from_point(const std::vector<Eigen::MatrixXcd>& point,
                                            const Eigen::VectorXcd& state, int max_len) {
    int d = static_cast<int>(point.size());
    if (d < 1) throw ContractViolation("point must have at least one coordinate");
    Eigen::Index n = point.front().rows();
    for (const auto& z : point) {
        if (z.rows() != n || z.cols() != n) {
            throw ContractViolation("point coordinates must be square matrices of equal size");
        }
    }
    if (state.size() != n) throw ContractViolation("state dimension mismatch");
    if (std::abs(state.norm() - 1.0) > 1e-10) {
        throw ContractViolation("state vector must be a unit vector");
    }

    Eigen::MatrixXcd row(n, n * d);
    for (int k = 0; k < d; ++k) row.middleCols(k * n, n) = point[static_cast<std::size_t>(k)];
    double row_norm = row.jacobiSvd().singularValues()(0);
    if (row_norm > 1.0 + 1e-12) {
        throw RowNormExceeded("row norm " + std::to_string(row_norm) +
                              " exceeds 1; the functional may fail positivity");
    }

    CoeffTable table;
    std::vector<Word> words = enumerate_words(d, max_len);
    std::unordered_map<Word, std::size_t, WordHash> index;
    std::vector<Eigen::MatrixXcd> powers(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        const Word& w = words[i];
        if (w.empty()) {
            powers[i] = Eigen::MatrixXcd::Identity(n, n);
        } else {
            // Z^w = Z^{prefix} Z_{last}; the prefix precedes w in degree-lex order.
            Word prefix(std::vector<int>(w.letters().begin(), w.letters().end() - 1));
            powers[i] = powers[index.at(prefix)] *
                        point[static_cast<std::size_t>(w.letter(w.length() - 1) - 1)];
        }
        index.emplace(w, i);
        table.emplace(w, state.dot(powers[i] * state));
    }
    return PositiveMeasure(d, max_len, std::move(table));
}

PositiveMeasure PositiveMeasure::zero(int d, int max_len) {
    CoeffTable table;
    for (const Word& w : enumerate_words(d, max_len)) table.emplace(w, Complex(0));
    return PositiveMeasure(d, max_len, std::move(table));
}

Complex PositiveMeasure::moment(const Word& w) const {
    return lookup(moments_, w, max_len_, "moment");
}

Complex PositiveMeasure::at(const Reduction& r) const {
    switch (r.kind) {
        case Reduction::Kind::Unit:
            return moment(Word{});
        case Reduction::Kind::Analytic:
            return moment(r.factor);
        case Reduction::Kind::CoAnalytic:
            return std::conj(moment(r.factor));
        case Reduction::Kind::Zero:
            return Complex(0);
    }
    return Complex(0);
}

Complex PositiveMeasure::product_moment(const Word& a, const Word& b) const {
    return at(reduce_adjoint_product(a, b));
}

bool PositiveMeasure::is_zero(double eps) const {
    for (const auto& [w, c] : moments_) {
        (void)w;
        if (std::abs(c) > eps) return false;
    }
    return true;
}

PositiveMeasure PositiveMeasure::scaled(double c) const {
    if (c < 0) throw ContractViolation("positive measures scale by nonnegative factors");
    CoeffTable table = moments_;
    for (auto& [w, v] : table) v *= c;
    return PositiveMeasure(d_, max_len_, std::move(table));
}

PositiveMeasure operator+(const PositiveMeasure& a, const PositiveMeasure& b) {
    if (a.d_ != b.d_) throw ContractViolation("alphabet mismatch in measure sum");
    int len = std::min(a.max_len_, b.max_len_);
    CoeffTable table;
    for (const Word& w : enumerate_words(a.d_, len)) {
        table.emplace(w, a.moment(w) + b.moment(w));
    }
    return PositiveMeasure(a.d_, len, std::move(table));
}

ComplexMeasure::ComplexMeasure(int d, int max_len, CoeffTable forward, CoeffTable backward)
    : d_(d), max_len_(max_len), fwd_(std::move(forward)), bwd_(std::move(backward)) {
    if (d_ < 1) throw ContractViolation("alphabet size must be >= 1");
    if (max_len_ < 0) throw ContractViolation("max_len must be >= 0");
    validate_table(fwd_, d_, max_len_, "forward");
    validate_table(bwd_, d_, max_len_, "backward");
    Word unit;
    Complex f = fwd_.at(unit), b = bwd_.at(unit);
    if (std::abs(f - b) > 1e-12 * std::max(1.0, std::abs(f))) {
        throw ContractViolation("forward and backward tables disagree at the unit");
    }
}

ComplexMeasure ComplexMeasure::from_positive(const PositiveMeasure& mu) {
    CoeffTable fwd = mu.moments();
    CoeffTable bwd;
    for (const auto& [w, c] : fwd) bwd.emplace(w, std::conj(c));
    return ComplexMeasure(mu.dim(), mu.max_len(), std::move(fwd), std::move(bwd));
}

ComplexMeasure ComplexMeasure::zero(int d, int max_len) {
    CoeffTable t;
    for (const Word& w : enumerate_words(d, max_len)) t.emplace(w, Complex(0));
    CoeffTable u = t;
    return ComplexMeasure(d, max_len, std::move(t), std::move(u));
}

Complex ComplexMeasure::forward(const Word& w) const {
    return lookup(fwd_, w, max_len_, "forward value");
}

Complex ComplexMeasure::backward(const Word& w) const {
    return lookup(bwd_, w, max_len_, "backward value");
}

Complex ComplexMeasure::at(const Reduction& r) const {
    switch (r.kind) {
        case Reduction::Kind::Unit:
            return forward(Word{});
        case Reduction::Kind::Analytic:
            return forward(r.factor);
        case Reduction::Kind::CoAnalytic:
            return backward(r.factor);
        case Reduction::Kind::Zero:
            return Complex(0);
    }
    return Complex(0);
}

Complex ComplexMeasure::product_moment(const Word& a, const Word& b) const {
    return at(reduce_adjoint_product(a, b));
}

ComplexMeasure ComplexMeasure::star() const {
    CoeffTable fwd, bwd;
    for (const auto& [w, c] : bwd_) fwd.emplace(w, std::conj(c));
    for (const auto& [w, c] : fwd_) bwd.emplace(w, std::conj(c));
    return ComplexMeasure(d_, max_len_, std::move(fwd), std::move(bwd));
}

ComplexMeasure ComplexMeasure::real_part() const {
    return (*this + star()).scaled(Complex(0.5));
}

ComplexMeasure ComplexMeasure::imag_part() const {
    return (*this - star()).scaled(Complex(0, -0.5));
}

bool ComplexMeasure::is_hermitian(double eps) const {
    for (const auto& [w, c] : fwd_) {
        if (std::abs(c - std::conj(bwd_.at(w))) > eps) return false;
    }
    return true;
}

ComplexMeasure operator+(const ComplexMeasure& a, const ComplexMeasure& b) {
    if (a.d_ != b.d_) throw ContractViolation("alphabet mismatch in measure sum");
    int len = std::min(a.max_len_, b.max_len_);
    CoeffTable fwd, bwd;
    for (const Word& w : enumerate_words(a.d_, len)) {
        fwd.emplace(w, a.forward(w) + b.forward(w));
        bwd.emplace(w, a.backward(w) + b.backward(w));
    }
    return ComplexMeasure(a.d_, len, std::move(fwd), std::move(bwd));
}

ComplexMeasure operator-(const ComplexMeasure& a, const ComplexMeasure& b) {
    return a + b.scaled(Complex(-1));
}

ComplexMeasure ComplexMeasure::scaled(Complex c) const {
    CoeffTable fwd = fwd_, bwd = bwd_;
    for (auto& [w, v] : fwd) v *= c;
    for (auto& [w, v] : bwd) v *= c;
    return ComplexMeasure(d_, max_len_, std::move(fwd), std::move(bwd));
}

PositiveMeasure to_positive(const ComplexMeasure& mu, double eps) {
    CoeffTable table;
    for (const auto& [w, c] : mu.forward_table()) {
        Complex b = std::conj(mu.backward(w));
        if (std::abs(c - b) > eps) {
            throw NotPositive("measure is not hermitian at word " + w.str());
        }
        table.emplace(w, c);
    }
    Complex u = table.at(Word{});
    if (std::abs(u.imag()) > eps || u.real() < -eps) {
        throw NotPositive("unit value is not a nonnegative real");
    }
    table[Word{}] = Complex(std::max(u.real(), 0.0), 0.0);
    return PositiveMeasure(mu.dim(), mu.max_len(), std::move(table));
}

namespace {

template <typename Measure>
Complex evaluate_impl(const Measure& mu, const DiskSystemElement& x) {
    Complex s = 0;
    for (const auto& [w, c] : x.analytic) {
        s += c * mu.at(Reduction::analytic(w));
    }
    for (const auto& [w, c] : x.coanalytic) {
        if (w.empty()) throw ContractViolation("coanalytic side must not carry a unit entry");
        s += c * mu.at(Reduction::coanalytic(w));
    }
    return s;
}

}  // namespace

Complex evaluate(const PositiveMeasure& mu, const DiskSystemElement& x) {
    return evaluate_impl(mu, x);
}

Complex evaluate(const ComplexMeasure& mu, const DiskSystemElement& x) {
    return evaluate_impl(mu, x);
}

Eigen::MatrixXcd gram_matrix(const PositiveMeasure& mu, int trunc) {
    if (trunc < 0) throw ContractViolation("truncation must be >= 0");
    if (2 * trunc > mu.max_len()) {
        throw OutOfRange("Gram at truncation " + std::to_string(trunc) +
                         " needs moments to depth " + std::to_string(2 * trunc) +
                         ", stored max_len is " + std::to_string(mu.max_len()));
    }
    std::vector<Word> words = enumerate_words(mu.dim(), trunc);
    Eigen::Index n = static_cast<Eigen::Index>(words.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = mu.product_moment(words[static_cast<std::size_t>(i)],
                                        words[static_cast<std::size_t>(j)]);
        }
    }
    return g;
}

namespace {

PsdReport psd_report(const Eigen::MatrixXcd& g, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    PsdReport r;
    r.min_eigenvalue = ev.minCoeff();
    r.scale = std::max(1.0, std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff())));
    r.positive = r.min_eigenvalue >= -tol * r.scale;
    return r;
}

}  // namespace

PsdReport is_positive(const PositiveMeasure& mu, int trunc, double tol) {
    return psd_report(gram_matrix(mu, trunc), tol);
}

PsdReport leq(const PositiveMeasure& mu, const PositiveMeasure& lambda, int trunc, double tol) {
    if (mu.dim() != lambda.dim()) throw ContractViolation("alphabet mismatch in order test");
    return psd_report(gram_matrix(lambda, trunc) - gram_matrix(mu, trunc), tol);
}

ComplexMeasure vector_functional(const FockVector& f, const FockVector& g, int d, int max_len) {
    CoeffTable fwd, bwd;
    for (const Word& w : enumerate_words(d, max_len)) {
        fwd.emplace(w, fock_inner(f, fock_shift(w, g)));
        bwd.emplace(w, fock_inner(f, fock_backshift(w, g)));
    }
    return ComplexMeasure(d, max_len, std::move(fwd), std::move(bwd));
}

}  // namespace nclab
