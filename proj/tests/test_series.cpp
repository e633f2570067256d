#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "nclab/errors.hpp"
#include "nclab/measure.hpp"
#include "nclab/series.hpp"

using namespace nclab;

namespace {

Word w(const char* digits) { return Word::from_digits(digits); }

FreeSeries balanced_schur(int cap) {
    FreeSeries b(2, cap);
    double isq2 = 1.0 / std::sqrt(2.0);
    b.set_coeff(w("1"), Complex(isq2));
    b.set_coeff(w("2"), Complex(isq2));
    return b;
}

MatrixPoint scalar_point(Complex z1, Complex z2) {
    MatrixPoint p;
    p.coords = {Eigen::MatrixXcd::Constant(1, 1, z1), Eigen::MatrixXcd::Constant(1, 1, z2)};
    return p;
}

}  // namespace

TEST_CASE("products concatenate words") {
    FreeSeries a = FreeSeries::constant(2, 3, Complex(1)) + FreeSeries::letter(2, 3, 1);
    FreeSeries b = FreeSeries::constant(2, 3, Complex(1)) + FreeSeries::letter(2, 3, 2);
    FreeSeries ab = mul(a, b);
    CHECK(ab.coeff(w("")) == Complex(1));
    CHECK(ab.coeff(w("1")) == Complex(1));
    CHECK(ab.coeff(w("2")) == Complex(1));
    CHECK(ab.coeff(w("12")) == Complex(1));
    CHECK(ab.coeff(w("21")) == Complex(0));
}

TEST_CASE("inverse of 1 - z1 is the geometric series") {
    FreeSeries a = FreeSeries::constant(2, 5, Complex(1)) - FreeSeries::letter(2, 5, 1);
    FreeSeries inv = inverse(a);
    for (const Word& word : enumerate_words(2, 5)) {
        Complex expect = (word.max_letter() <= 1) ? Complex(1) : Complex(0);
        CHECK(inv.coeff(word) == expect);
    }
    CHECK(sup_coeff_diff(mul(a, inv), FreeSeries::constant(2, 5, Complex(1))) == 0.0);
}

TEST_CASE("inverse of 1 - (z1 + z2) hits every word once") {
    FreeSeries a = FreeSeries::constant(2, 4, Complex(1)) - FreeSeries::letter(2, 4, 1) -
                   FreeSeries::letter(2, 4, 2);
    FreeSeries inv = inverse(a);
    for (const Word& word : enumerate_words(2, 4)) {
        CHECK(inv.coeff(word) == Complex(1));
    }
    // cross-check by evaluation at a small scalar point: sum_k (x+y)^k
    MatrixPoint z = scalar_point(Complex(0.1), Complex(0.15));
    SeriesValue v = evaluate(inv, z);
    double direct = 1.0 / (1.0 - 0.25);
    CHECK(std::abs(v.value(0, 0) - direct) <= v.tail_bound + 1e-12);

    FreeSeries no_unit(2, 3);
    no_unit.set_coeff(w("1"), Complex(1));
    CHECK_THROWS_AS(inverse(no_unit), NonInvertibleConstantTerm);
}

TEST_CASE("Herglotz series of the flagship measures") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(6);
    FreeSeries h = herglotz_series(xi, 6);
    CHECK(h.coeff(w("")) == Complex(1));
    for (const Word& word : enumerate_words(2, 6)) {
        if (word.empty()) continue;
        CHECK(h.coeff(word) == (word.max_letter() <= 1 ? Complex(2) : Complex(0)));
    }

    FreeSeries hm = herglotz_series(PositiveMeasure::lebesgue(2, 6), 6);
    CHECK(hm.coeff(w("")) == Complex(1));
    CHECK(hm.degree() == 0);

    std::vector<Eigen::MatrixXcd> swapped{Eigen::MatrixXcd::Zero(1, 1),
                                          Eigen::MatrixXcd::Constant(1, 1, Complex(1))};
    PositiveMeasure at_e2 = PositiveMeasure::from_point(swapped, Eigen::VectorXcd::Ones(1), 6);
    FreeSeries h2 = herglotz_series(at_e2, 6);
    CHECK(h2.coeff(w("22")) == Complex(2));
    CHECK(h2.coeff(w("21")) == Complex(0));

    CHECK_THROWS_AS(herglotz_series(xi, 7), OutOfRange);
}

TEST_CASE("Herglotz reversal convention") {
    // moments at word "12" land on the coefficient of the reversed word
    FockVector f;
    f.coeffs.emplace(w(""), Complex(0.8));
    f.coeffs.emplace(w("12"), Complex(0.5, 0.2));
    PositiveMeasure mu = to_positive(vector_functional(f, f, 2, 4));
    FreeSeries h = herglotz_series(mu, 4);
    CHECK(std::abs(h.coeff(w("21")) - 2.0 * std::conj(mu.moment(w("12")))) == 0.0);
}

TEST_CASE("Cayley transform of the point-mass Herglotz series is a single letter") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    FreeSeries b = cayley(herglotz_series(xi, 8));
    CHECK(std::abs(b.coeff(w("1")) - Complex(1)) <= 1e-12);
    double rest = 0;
    for (const auto& [word, c] : b.coeffs()) {
        if (word != w("1")) rest = std::max(rest, std::abs(c));
    }
    CHECK(rest <= 1e-12);

    FreeSeries flat = cayley(FreeSeries::constant(2, 4, Complex(1)));
    CHECK(flat.degree() == 0);
    CHECK(flat.coeff(w("")) == Complex(0));
}

TEST_CASE("Cayley roundtrips") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 8);
    PositiveMeasure balanced = clark_measure(balanced_schur(8), 4);
    for (const PositiveMeasure& mu : {xi, m, balanced}) {
        FreeSeries h = herglotz_series(mu, 8);
        CHECK(sup_coeff_diff(inverse_cayley(cayley(h)), h) <= 1e-10);
    }
    for (const FreeSeries& b :
         {FreeSeries::letter(2, 8, 1), balanced_schur(8), FreeSeries(2, 8)}) {
        CHECK(sup_coeff_diff(cayley(inverse_cayley(b)), b) <= 1e-10);
    }

    FreeSeries big(2, 4);
    big.set_coeff(w(""), Complex(1.5));
    CHECK_THROWS_AS(inverse_cayley(big), SchurConstantTermTooLarge);
}

TEST_CASE("inverse Cayley transform of a Schur sum") {
    FreeSeries b = balanced_schur(6);
    FreeSeries h = inverse_cayley(b);
    // 1 + 2 sum_k ((z1+z2)/sqrt 2)^k: every word of length k carries 2 * 2^{-k/2}
    for (const Word& word : enumerate_words(2, 6)) {
        Complex expect = word.empty()
                             ? Complex(1)
                             : Complex(2.0 * std::pow(2.0, -0.5 * word.length()));
        CHECK(std::abs(h.coeff(word) - expect) <= 1e-12);
    }
}

TEST_CASE("Clark measures") {
    PositiveMeasure from_letter = clark_measure(FreeSeries::letter(2, 8, 1), 4);
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    for (const Word& word : enumerate_words(2, 8)) {
        CHECK(std::abs(from_letter.moment(word) - xi.moment(word)) == 0.0);
    }

    PositiveMeasure from_zero = clark_measure(FreeSeries(2, 6), 3);
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 6);
    for (const Word& word : enumerate_words(2, 6)) {
        CHECK(from_zero.moment(word) == m.moment(word));
    }

    PositiveMeasure balanced = clark_measure(balanced_schur(8), 4);
    for (const Word& word : enumerate_words(2, 8)) {
        CHECK(std::abs(balanced.moment(word) - std::pow(2.0, -0.5 * word.length())) <= 1e-12);
    }
    CHECK(is_positive(balanced, 4, 1e-10).positive);

    CHECK_THROWS_AS(clark_measure(FreeSeries::letter(2, 4, 1), 4), OutOfRange);
}

TEST_CASE("Clark roundtrip on moments") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 8);
    PositiveMeasure balanced = clark_measure(balanced_schur(8), 4);
    for (const PositiveMeasure& mu : {xi, m, balanced}) {
        PositiveMeasure again = clark_measure(cayley(herglotz_series(mu, 8)), 4);
        for (const Word& word : enumerate_words(2, 8)) {
            CHECK(std::abs(again.moment(word) - mu.moment(word)) <= 1e-10);
        }
    }
}

TEST_CASE("series evaluation at matrix points") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    FreeSeries h = herglotz_series(xi, 8);
    SeriesValue v = evaluate(h, scalar_point(Complex(0.5), Complex(0)));
    CHECK(std::abs(v.value(0, 0) - Complex(3)) <= v.tail_bound + 1e-12);

    SeriesValue unit = evaluate(FreeSeries::constant(2, 4, Complex(1)),
                                random_strict_point(2, 3, 0.7, 5));
    CHECK((unit.value - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);

    // nilpotent geometric sum terminates: exact value I + Z1
    MatrixPoint nil;
    nil.coords = {Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(2, 2)};
    nil.coords[0](0, 1) = Complex(0.5);
    FreeSeries geo = inverse(FreeSeries::constant(2, 6, Complex(1)) - FreeSeries::letter(2, 6, 1));
    SeriesValue g = evaluate(geo, nil);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(2, 2) + nil.coords[0];
    CHECK((g.value - expected).norm() <= 1e-15);

    CHECK_THROWS_AS(evaluate(h, scalar_point(Complex(1), Complex(0))), NotStrict);
}

TEST_CASE("evaluation is multiplicative at nilpotent points") {
    MatrixPoint nil;
    nil.coords = {Eigen::MatrixXcd::Zero(3, 3), Eigen::MatrixXcd::Zero(3, 3)};
    nil.coords[0](0, 1) = Complex(0.4, 0.1);
    nil.coords[1](1, 2) = Complex(0.3, -0.2);
    nil.coords[0](1, 2) = Complex(0.2);

    FreeSeries a(2, 6), b(2, 6);
    a.set_coeff(w(""), Complex(1));
    a.set_coeff(w("1"), Complex(0.7, 0.3));
    a.set_coeff(w("21"), Complex(-0.4));
    b.set_coeff(w(""), Complex(0.5));
    b.set_coeff(w("2"), Complex(1.1));
    b.set_coeff(w("12"), Complex(0, 0.6));

    Eigen::MatrixXcd lhs = evaluate(mul(a, b), nil).value;
    Eigen::MatrixXcd rhs = evaluate(a, nil).value * evaluate(b, nil).value;
    CHECK((lhs - rhs).norm() <= 1e-14);
}

TEST_CASE("series evaluation order at a noncommuting nilpotent point") {
    FreeSeries s(2, 4);
    s.set_coeff(w("12"), Complex(1));
    MatrixPoint nil;
    nil.coords = {Eigen::MatrixXcd::Zero(3, 3), Eigen::MatrixXcd::Zero(3, 3)};
    nil.coords[0](0, 1) = Complex(0.5);  // Z1 maps e2 into e1
    nil.coords[1](1, 2) = Complex(0.5);  // Z2 maps e3 into e2
    // Z^{12} = Z1 Z2 maps e3 into e1; the reversed product vanishes
    Eigen::MatrixXcd v = evaluate(s, nil).value;
    CHECK(v(0, 2) == Complex(0.25));
    CHECK((nil.coords[1] * nil.coords[0]).norm() == 0.0);
}

TEST_CASE("random strict points are deterministic with exact row norm") {
    MatrixPoint a = random_strict_point(2, 3, 0.8, 7);
    MatrixPoint b = random_strict_point(2, 3, 0.8, 7);
    for (int k = 0; k < 2; ++k) {
        CHECK((a.coords[static_cast<std::size_t>(k)] - b.coords[static_cast<std::size_t>(k)])
                  .norm() == 0.0);
    }
    CHECK(a.row_norm() == doctest::Approx(0.8).epsilon(1e-12));

    MatrixPoint scalar = random_strict_point(2, 1, 0.5, 3);
    double sq = std::norm(scalar.coords[0](0, 0)) + std::norm(scalar.coords[1](0, 0));
    CHECK(sq == doctest::Approx(0.25).epsilon(1e-12));

    MatrixPoint c = random_strict_point(2, 3, 0.8, 8);
    bool all_equal = true;
    for (int k = 0; k < 2; ++k) {
        all_equal = all_equal && (a.coords[static_cast<std::size_t>(k)] ==
                                  c.coords[static_cast<std::size_t>(k)]);
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("Herglotz values have PSD hermitian part at strict points") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 8);
    PositiveMeasure balanced = clark_measure(balanced_schur(8), 4);
    std::uint64_t seed = 0;
    for (const PositiveMeasure& mu : {m, xi, balanced}) {
        FreeSeries h = herglotz_series(mu, 8);
        for (int level = 1; level <= 3; ++level) {
            for (int rep = 0; rep < 20; ++rep) {
                MatrixPoint z = random_strict_point(2, level, 0.8, seed++);
                SeriesValue v = evaluate(h, z);
                Eigen::MatrixXcd herm = 0.5 * (v.value + v.value.adjoint());
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
                CHECK(es.eigenvalues().minCoeff() >= -(v.tail_bound + 1e-8));
            }
        }
    }
}

TEST_CASE("Schur-class series evaluate contractively at strict points") {
    for (const FreeSeries& b : {FreeSeries::letter(2, 8, 1), balanced_schur(8)}) {
        for (std::uint64_t seed = 100; seed < 110; ++seed) {
            MatrixPoint z = random_strict_point(2, 2, 0.8, seed);
            SeriesValue v = evaluate(b, z);
            CHECK(v.value.jacobiSvd().singularValues()(0) <= 1.0 + v.tail_bound + 1e-10);
        }
    }
}

TEST_CASE("compression by analytic windows") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(6);

    PositiveMeasure same = compress(xi, FreeSeries::constant(2, 0, Complex(1)), 5);
    for (const Word& word : enumerate_words(2, 5)) {
        CHECK(same.moment(word) == xi.moment(word));
    }

    PositiveMeasure vacuumized = compress(xi, FreeSeries::letter(2, 1, 2), 4);
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 4);
    for (const Word& word : enumerate_words(2, 4)) {
        CHECK(vacuumized.moment(word) == m.moment(word));
    }

    PositiveMeasure fixed = compress(xi, FreeSeries::letter(2, 1, 1), 4);
    for (const Word& word : enumerate_words(2, 4)) {
        CHECK(fixed.moment(word) == xi.moment(word));
    }

    // output one letter deeper than the stored moments cannot be reduced
    CHECK_THROWS_AS(compress(xi, FreeSeries::letter(2, 1, 1), 7), OutOfRange);
}

TEST_CASE("product is associative and distributes over sums") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_series = [&](int cap) {
        FreeSeries s(2, cap);
        for (const Word& word : enumerate_words(2, 2)) {
            s.set_coeff(word, Complex(gauss(rng), gauss(rng)));
        }
        return s;
    };
    for (int rep = 0; rep < 5; ++rep) {
        FreeSeries a = random_series(6), b = random_series(6), c = random_series(6);
        CHECK(sup_coeff_diff(mul(mul(a, b), c), mul(a, mul(b, c))) <= 1e-12);
        CHECK(sup_coeff_diff(mul(a, b + c), mul(a, b) + mul(a, c)) <= 1e-12);
    }
}

TEST_CASE("inverse is a two-sided inverse up to the cap") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        FreeSeries a(2, 4);
        a.set_coeff(Word{}, Complex(1.0 + 0.2 * gauss(rng), 0.2 * gauss(rng)));
        for (const Word& word : enumerate_words(2, 2)) {
            if (!word.empty()) a.set_coeff(word, 0.4 * Complex(gauss(rng), gauss(rng)));
        }
        FreeSeries inv = inverse(a);
        FreeSeries one = FreeSeries::constant(2, 4, Complex(1));
        CHECK(sup_coeff_diff(mul(a, inv), one) <= 1e-12);
        CHECK(sup_coeff_diff(mul(inv, a), one) <= 1e-12);
    }
}

TEST_CASE("series caps clamp arithmetic") {
    FreeSeries a = FreeSeries::constant(2, 5, Complex(1)) + FreeSeries::letter(2, 5, 1);
    FreeSeries b = FreeSeries::constant(2, 1, Complex(1)) + FreeSeries::letter(2, 1, 2);
    FreeSeries ab = mul(a, b);
    CHECK(ab.cap() == 1);
    CHECK(ab.coeff(w("1")) == Complex(1));
    CHECK_THROWS_AS(ab.set_coeff(w("12"), Complex(1)), OutOfRange);
}
