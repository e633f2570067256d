#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "nclab/decomposition.hpp"
#include "nclab/errors.hpp"
#include "nclab/gns.hpp"
#include "nclab/measure.hpp"
#include "nclab/series.hpp"

using namespace nclab;

namespace {

Word w(const char* digits) { return Word::from_digits(digits); }

PositiveMeasure balanced_clark(int depth) {
    FreeSeries b(2, depth);
    double isq2 = 1.0 / std::sqrt(2.0);
    b.set_coeff(w("1"), Complex(isq2));
    b.set_coeff(w("2"), Complex(isq2));
    return clark_measure(b, depth / 2);
}

PositiveMeasure random_diagonal_functional(int d, int depth, int max_len, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    FockVector f;
    for (const Word& word : enumerate_words(d, depth)) {
        f.coeffs.emplace(word, Complex(gauss(rng), gauss(rng)));
    }
    return to_positive(vector_functional(f, f, d, max_len));
}

}  // namespace

TEST_CASE("GNS of the vacuum state is the truncated Fock space") {
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 4);
    GnsTruncation g = build_gns(m, 2);
    CHECK(g.rank == 7);
    CHECK(g.interior_rank == 3);
    CHECK((g.coord - Eigen::MatrixXcd::Identity(7, 7)).norm() == 0.0);

    // shift matrices coincide with the truncated creation operators, exactly
    for (int k = 1; k <= 2; ++k) {
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(7, 3);
        for (Eigen::Index j = 0; j < 3; ++j) {
            expected(g.index_of(g.basis[static_cast<std::size_t>(j)].prepended(k)), j) = 1.0;
        }
        CHECK((g.shift[static_cast<std::size_t>(k - 1)] - expected).norm() == 0.0);
    }
}

TEST_CASE("GNS of the point mass collapses word classes") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(4);
    GnsTruncation g = build_gns(xi, 2);
    CHECK(g.rank == 4);

    Eigen::VectorXcd unit_class = g.word_class(w(""));
    CHECK((unit_class - g.word_class(w("1"))).norm() <= 1e-12);
    CHECK((unit_class - g.word_class(w("11"))).norm() <= 1e-12);
    CHECK((g.word_class(w("2")) - g.word_class(w("21"))).norm() <= 1e-12);
    CHECK(std::abs(unit_class.dot(g.word_class(w("2")))) <= 1e-12);
}

TEST_CASE("moment reproduction through the shift matrices") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(6);
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 6);
    for (const PositiveMeasure& mu : {m, xi, xi + m, balanced_clark(6)}) {
        GnsTruncation g = build_gns(mu, 3);
        CHECK(g.moment_reproduction_error(mu) <= 1e-10);
        CHECK(g.shift_isometry_defect() <= 1e-8);
        CHECK(g.orthogonal_range_defect() <= 1e-8);
    }
}

TEST_CASE("cyclic vector is the unit class") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(4);
    GnsTruncation g = build_gns(xi, 2);
    CHECK((g.cyclic - g.word_class(w(""))).norm() == 0.0);
    CHECK(std::abs(g.cyclic.squaredNorm() - 1.0) <= 1e-12);
}

TEST_CASE("degenerate and non-PSD measures are rejected") {
    CHECK_THROWS_AS(build_gns(PositiveMeasure::zero(2, 4), 2), DegenerateMeasure);

    CoeffTable table;
    for (const Word& word : enumerate_words(2, 2)) table.emplace(word, Complex(0));
    table[w("")] = Complex(1);
    table[w("1")] = Complex(2);
    PositiveMeasure bad(2, 2, std::move(table));
    CHECK_THROWS_AS(build_gns(bad, 1), NotPositive);

    CHECK_THROWS_AS(build_gns(PositiveMeasure::dirac_xi(2), 2), OutOfRange);
}

TEST_CASE("rank is non-increasing in the cutoff tolerance") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(6);
    Eigen::Index last = 1000;
    for (double tol : {1e-12, 1e-9, 1e-6, 1e-2, 0.5, 1.5, 2.5}) {
        GnsTruncation g;
        try {
            g = build_gns(xi, 3, tol);
        } catch (const DegenerateMeasure&) {
            last = 0;
            continue;
        }
        CHECK(g.rank <= last);
        last = g.rank;
    }
}

TEST_CASE("self co-embedding is the identity") {
    GnsTruncation g = build_gns(PositiveMeasure::dirac_xi(4), 2);
    CoEmbedding e = co_embedding(g, g);
    CHECK((e.map - Eigen::MatrixXcd::Identity(g.rank, g.rank)).norm() <= 1e-12);
}

TEST_CASE("co-embedding contractivity and composition") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 8);
    PositiveMeasure mid = xi + m;
    PositiveMeasure top = xi + m.scaled(2.0);

    GnsTruncation g_xi = build_gns(xi, 4);
    GnsTruncation g_mid = build_gns(mid, 4);
    GnsTruncation g_top = build_gns(top, 4);

    CoEmbedding head = co_embedding(g_xi, g_mid);
    CoEmbedding tail = co_embedding(g_mid, g_top);
    CoEmbedding direct = co_embedding(g_xi, g_top);
    CHECK(head.norm <= 1.0 + 1e-9);
    CHECK(tail.norm <= 1.0 + 1e-9);
    CHECK(direct.norm <= 1.0 + 1e-9);
    CHECK((head.map * tail.map - direct.map).jacobiSvd().singularValues()(0) <= 1e-9);

    // classes map to classes
    for (const Word& word : enumerate_words(2, 4)) {
        CHECK((head.map * g_mid.word_class(word) - g_xi.word_class(word)).norm() <= 1e-10);
    }
}

TEST_CASE("co-embedding requires domination") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(4);
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 4);
    CHECK_THROWS_AS(co_embedding(m, xi, 2, 1e-10), NotDominated);
    CHECK_NOTHROW(co_embedding(xi, xi + m, 2, 1e-10));
}

TEST_CASE("co-embedding intertwines the shifts on the interior") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    PositiveMeasure lam = xi + PositiveMeasure::lebesgue(2, 8);
    GnsTruncation g_xi = build_gns(xi, 4);
    GnsTruncation g_lam = build_gns(lam, 4);
    CoEmbedding e = co_embedding(g_xi, g_lam);
    CHECK(intertwining_defect(e, g_xi, g_lam) <= 1e-9);
}

TEST_CASE("Toeplitz defect") {
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 8);
    GnsTruncation g_m = build_gns(m, 4);

    CHECK(toeplitz_defect(Eigen::MatrixXcd::Identity(g_m.rank, g_m.rank), g_m) <= 1e-12);

    // derivative of a genuine co-embedding is shift-compression invariant
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    PositiveMeasure lam = xi + m;
    GnsTruncation g_lam = build_gns(lam, 4);
    CoEmbedding e = co_embedding(build_gns(xi, 4), g_lam);
    CHECK(toeplitz_defect(e.derivative, g_lam) <= 1e-8);

    // rank-one projector onto the unit class fails maximally
    Eigen::VectorXcd c = g_m.cyclic;
    Eigen::MatrixXcd projector = c * c.adjoint();
    CHECK(toeplitz_defect(projector, g_m) == doctest::Approx(1.0).epsilon(1e-10));

    GnsTruncation shallow = build_gns(m, 1);
    CHECK_THROWS_AS(
        toeplitz_defect(Eigen::MatrixXcd::Identity(shallow.rank, shallow.rank), shallow),
        OutOfRange);
}

TEST_CASE("positivity transfer") {
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 8);
    PositiveMeasure doubled = m.scaled(2.0);
    PositiveMeasure xi = PositiveMeasure::dirac_xi(8);
    PositiveMeasure lam = xi + m;

    FreeSeries one = FreeSeries::constant(2, 2, Complex(1));
    FreeSeries l1 = FreeSeries::letter(2, 2, 1);
    FreeSeries sum = l1 + FreeSeries::letter(2, 2, 2);

    // p = 1 reduces to I - D >= 0
    CHECK(positivity_transfer_check(xi, lam, one, 4) >= -1e-8);
    CHECK(positivity_transfer_check(xi, lam, l1, 4) >= -1e-8);

    // for m <= 2m the derivative is I/2 exactly, so the slack is visible
    GnsTruncation g2m = build_gns(doubled, 4);
    CoEmbedding e = co_embedding(build_gns(m, 4), g2m);
    CHECK((e.derivative - 0.5 * Eigen::MatrixXcd::Identity(g2m.rank, g2m.rank)).norm() <= 1e-12);
    double slack = positivity_transfer_check(m, doubled, sum, 4);
    CHECK(slack >= -1e-8);
    CHECK(slack >= 0.1);  // both sides differ by the exact factor 1/2

    CHECK_THROWS_AS(positivity_transfer_check(m, xi, one, 2), NotDominated);
}

TEST_CASE("GNS functional of a quad") {
    PositiveMeasure m = PositiveMeasure::lebesgue(2, 6);
    PositiveMeasure zero = PositiveMeasure::zero(2, 6);

    GnsFunctional plain = gns_formula({m, zero, zero, zero}, 3);
    CHECK((plain.toeplitz - Eigen::MatrixXcd::Identity(plain.total.rank, plain.total.rank))
              .norm() <= 1e-12);
    for (const Word& a : enumerate_words(2, 2)) {
        for (const Word& b : enumerate_words(2, 2)) {
            CHECK(std::abs(plain.eval(a, b) - m.product_moment(a, b)) <= 1e-12);
        }
    }

    GnsFunctional skew = gns_formula({m.scaled(2.0), m, zero, zero}, 3);
    CHECK((skew.toeplitz - skew.toeplitz.adjoint()).norm() <= 1e-12);
    Eigen::MatrixXcd expected =
        (1.0 / 3.0) * Eigen::MatrixXcd::Identity(skew.total.rank, skew.total.rank);
    CHECK((skew.toeplitz - expected).norm() <= 1e-12);
    for (const Word& a : enumerate_words(2, 2)) {
        for (const Word& b : enumerate_words(2, 2)) {
            CHECK(std::abs(skew.eval(a, b) - m.product_moment(a, b)) <= 1e-12);
        }
    }
}

TEST_CASE("GNS fidelity holds on random vector-functional measures") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        PositiveMeasure mu = random_diagonal_functional(2, 2, 6, rng);
        GnsTruncation g = build_gns(mu, 3);
        CHECK(g.moment_reproduction_error(mu) <= 1e-10);
        CHECK(g.shift_isometry_defect() <= 1e-8);
        CHECK(g.orthogonal_range_defect() <= 1e-8);
    }
}

TEST_CASE("co-embedding invariants hold on random dominated pairs") {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        std::mt19937_64 rng(seed);
        PositiveMeasure lower = random_diagonal_functional(2, 2, 6, rng);
        PositiveMeasure upper = lower + random_diagonal_functional(2, 2, 6, rng);
        CHECK(leq(lower, upper, 3, 1e-10).positive);

        GnsTruncation g_lower = build_gns(lower, 3);
        GnsTruncation g_upper = build_gns(upper, 3);
        CoEmbedding e = co_embedding(g_lower, g_upper);
        CHECK(e.norm <= 1.0 + 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e.derivative,
                                                           Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
        CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-9);
        CHECK(toeplitz_defect(e.derivative, g_upper) <= 1e-8);
        CHECK(intertwining_defect(e, g_lower, g_upper) <= 1e-9);
        for (const Word& word : enumerate_words(2, 3)) {
            CHECK((e.map * g_upper.word_class(word) - g_lower.word_class(word)).norm() <= 1e-9);
        }
    }
}

TEST_CASE("GNS functional reproduces the back-shifted point mass") {
    PositiveMeasure xi = PositiveMeasure::dirac_xi(9);
    WittstockQuad quad = shift_wittstock(xi, 2);
    ComplexMeasure target = back_shift(xi, 2);
    GnsFunctional f = gns_formula(quad.parts, 4);
    for (const Word& a : enumerate_words(2, 4)) {
        for (const Word& b : enumerate_words(2, 4)) {
            if (a.length() + b.length() > 3) continue;
            CHECK(std::abs(f.eval(a, b) - target.product_moment(a, b)) <= 1e-9);
        }
    }
}
