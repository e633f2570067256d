#include "nclab/scenario.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "nclab/classify.hpp"
#include "nclab/decomposition.hpp"
#include "nclab/errors.hpp"
#include "nclab/gns.hpp"
#include "nclab/json_io.hpp"
#include "nclab/measure.hpp"
#include "nclab/series.hpp"

namespace nclab {

namespace {

using Eigen::MatrixXcd;

constexpr double kExact = 0.0;

struct Runner {
    std::vector<CheckRecord> checks;

    void check(std::string name, double value, double tolerance) {
        checks.push_back({std::move(name), value, tolerance, value <= tolerance});
    }
};

double sup_moment_diff(const PositiveMeasure& a, const PositiveMeasure& b, int depth) {
    double worst = 0;
    for (const Word& w : enumerate_words(a.dim(), depth)) {
        worst = std::max(worst, std::abs(a.moment(w) - b.moment(w)));
    }
    return worst;
}

double min_eig(const MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eig(const MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Json type_report_json(const TypeReport& tr) {
    Json j;
    j["cuntz_defect"] = tr.cuntz_defect;
    Json witnesses = Json::array();
    for (const auto& [w, corr] : tr.wandering_witnesses) {
        Json e;
        e["word"] = word_to_json(w);
        e["correlation"] = corr;
        witnesses.push_back(e);
    }
    j["wandering"] = witnesses;
    j["ac_fit_residual"] = tr.ac_fit_residual;
    j["notes"] = tr.notes;
    return j;
}

FockVector random_fock_vector(int d, int depth, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    FockVector v;
    for (const Word& w : enumerate_words(d, depth)) {
        v.coeffs.emplace(w, Complex(gauss(rng), gauss(rng)));
    }
    return v;
}

void append_schur_diagnostics(Json& diagnostics, const FreeSeries& b) {
    std::map<Word, Complex> sorted(b.coeffs().begin(), b.coeffs().end());
    Json arr = Json::array();
    for (const auto& [word, c] : sorted) {
        Json e;
        e["word"] = word_to_json(word);
        e["re"] = c.real();
        e["im"] = c.imag();
        arr.push_back(e);
    }
    diagnostics["schur_coefficients"] = arr;
}

void scenario_xi_example(Runner& r, const ScenarioOptions& opts, Json& diagnostics) {
    int trunc = opts.max_len;
    int cap = opts.cap;
    int depth = std::max(cap, 2 * trunc);
    PositiveMeasure xi = PositiveMeasure::dirac_xi(depth);
    PositiveMeasure vacuum = PositiveMeasure::lebesgue(2, depth);

    FreeSeries h = herglotz_series(xi, cap);
    r.check("herglotz-unit-coeff", std::abs(h.coeff(Word{}) - Complex(1)), kExact);
    double ladder = 0, off_ladder = 0;
    for (const Word& w : enumerate_words(2, cap)) {
        if (w.empty()) continue;
        if (w.max_letter() == 1) {
            ladder = std::max(ladder, std::abs(h.coeff(w) - Complex(2)));
        } else {
            off_ladder = std::max(off_ladder, std::abs(h.coeff(w)));
        }
    }
    r.check("herglotz-ladder-coeffs", ladder, kExact);
    r.check("herglotz-off-ladder-coeffs", off_ladder, kExact);

    FreeSeries b = cayley(h);
    Word letter1({1});
    r.check("cayley-letter-coeff", std::abs(b.coeff(letter1) - Complex(1)), 1e-12);
    double rest = 0;
    for (const auto& [w, c] : b.coeffs()) {
        if (w != letter1) rest = std::max(rest, std::abs(c));
    }
    r.check("cayley-other-coeffs", rest, 1e-12);

    int clark_trunc = std::min(trunc, cap / 2);
    PositiveMeasure recovered = clark_measure(b, clark_trunc, opts.tol);
    r.check("clark-recovers-moments", sup_moment_diff(recovered, xi, clark_trunc), 1e-10);

    GnsTruncation g = build_gns(xi, trunc, opts.tol);
    WanderingReport wr = wandering_check(g, g.word_class(Word({2})), trunc - 1);
    r.check("wandering-class-2", wr.normalized, 1e-10);
    r.check("cuntz-defect", cuntz_defect(g), 1e-9);

    PositiveMeasure compressed = compress(xi, FreeSeries::letter(2, 1, 2), trunc);
    r.check("compressed-by-2-is-vacuum", sup_moment_diff(compressed, vacuum, trunc), kExact);

    GnsTruncation g2 = build_gns(xi, 2, opts.tol);
    r.check("gram-rank-depth-2", std::abs(static_cast<double>(g2.rank) - 4.0), kExact);

    diagnostics = type_report_json(type_report(xi, trunc, opts.tol));
    append_schur_diagnostics(diagnostics, b);
}

void scenario_clark_roundtrip(Runner& r, const ScenarioOptions& opts) {
    int cap = opts.cap;
    int trunc = cap / 2;

    FreeSeries zero(2, cap);
    FreeSeries letter = FreeSeries::letter(2, cap, 1);
    FreeSeries balanced(2, cap);
    double isq2 = 1.0 / std::sqrt(2.0);
    balanced.set_coeff(Word({1}), Complex(isq2));
    balanced.set_coeff(Word({2}), Complex(isq2));

    struct Case {
        const char* name;
        const FreeSeries* schur;
    };
    for (const Case& c : {Case{"zero", &zero}, Case{"letter-1", &letter},
                          Case{"balanced", &balanced}}) {
        PositiveMeasure mu = clark_measure(*c.schur, trunc, opts.tol);
        FreeSeries back = cayley(herglotz_series(mu, cap));
        r.check(std::string(c.name) + "-schur-roundtrip", sup_coeff_diff(back, *c.schur), 1e-10);

        PositiveMeasure again = clark_measure(back, trunc, opts.tol);
        r.check(std::string(c.name) + "-measure-roundtrip",
                sup_moment_diff(again, mu, trunc), 1e-10);
    }

    PositiveMeasure from_zero = clark_measure(zero, trunc, opts.tol);
    r.check("zero-recovers-vacuum-state",
            sup_moment_diff(from_zero, PositiveMeasure::lebesgue(2, 2 * trunc), trunc), kExact);

    PositiveMeasure balanced_mu = clark_measure(balanced, trunc, opts.tol);
    double profile = 0;
    for (const Word& w : enumerate_words(2, trunc)) {
        profile = std::max(profile,
                           std::abs(balanced_mu.moment(w) - std::pow(2.0, -0.5 * w.length())));
    }
    r.check("balanced-moment-profile", profile, 1e-12);
}

void scenario_fm_riesz_witness(Runner& r, const ScenarioOptions& opts) {
    int trunc = opts.max_len;
    PositiveMeasure xi = PositiveMeasure::dirac_xi(trunc + 2);
    ComplexMeasure gamma = back_shift(xi, 2).star();

    double forward_sup = 0;
    for (const auto& [w, c] : gamma.forward_table()) {
        if (!w.empty()) forward_sup = std::max(forward_sup, std::abs(c));
    }
    r.check("analytic-forward-sup", forward_sup, 1e-12);
    r.check("unit-annihilated", std::abs(gamma.forward(Word{})), kExact);

    double ladder = 0;
    Word w({2});
    for (int k = 0; k <= trunc; ++k) {
        ladder = std::max(ladder, std::abs(gamma.backward(w) - Complex(1)));
        w = w.appended(1);
    }
    r.check("backward-ladder", ladder, kExact);
}

void scenario_order_checks(Runner& r, const ScenarioOptions& opts, Json& diagnostics) {
    int trunc = opts.max_len;
    int depth = 2 * trunc;
    PositiveMeasure xi = PositiveMeasure::dirac_xi(depth);
    PositiveMeasure vacuum = PositiveMeasure::lebesgue(2, depth);
    PositiveMeasure xi_m = xi + vacuum;
    PositiveMeasure xi_2m = xi + vacuum.scaled(2.0);
    WittstockQuad quad = shift_wittstock(PositiveMeasure::dirac_xi(depth + 1), 2);

    struct Pair {
        const char* name;
        const PositiveMeasure* lower;
        const PositiveMeasure* upper;
    };
    PositiveMeasure doubled = vacuum.scaled(2.0);
    PositiveMeasure variation = quad.total_variation();
    Json fragments = Json::array();
    for (const Pair& p : {Pair{"xi-in-xi-plus-m", &xi, &xi_m}, Pair{"m-in-2m", &vacuum, &doubled},
                          Pair{"phi1-in-total-variation", &quad.parts[0], &variation}}) {
        GnsTruncation upper_gns = build_gns(*p.upper, trunc, opts.tol);
        GnsTruncation lower_gns = build_gns(*p.lower, trunc, opts.tol);
        PsdReport order = leq(*p.lower, *p.upper, trunc, 1e-10);
        r.check(std::string(p.name) + "-order", std::max(0.0, -order.min_eigenvalue / order.scale),
                1e-10);
        CoEmbedding e = co_embedding(lower_gns, upper_gns);
        r.check(std::string(p.name) + "-embedding-norm", std::max(0.0, e.norm - 1.0), 1e-9);
        r.check(std::string(p.name) + "-derivative-lower", std::max(0.0, -min_eig(e.derivative)),
                1e-9);
        r.check(std::string(p.name) + "-derivative-upper",
                std::max(0.0, max_eig(e.derivative) - 1.0), 1e-9);
        double defect = toeplitz_defect(e.derivative, upper_gns);
        r.check(std::string(p.name) + "-toeplitz-defect", defect, 1e-8);
        r.check(std::string(p.name) + "-intertwining", intertwining_defect(e, lower_gns, upper_gns),
                1e-9);

        Json fragment;
        fragment["pair"] = p.name;
        fragment["rank"] = upper_gns.rank;
        fragment["gram_min_eig"] = upper_gns.gram_min_eig;
        fragment["toeplitz_defect"] = defect;
        fragment["embedding_norm"] = e.norm;
        fragments.push_back(fragment);
    }
    diagnostics["co_embeddings"] = fragments;

    GnsTruncation g_xi = build_gns(xi, trunc, opts.tol);
    GnsTruncation g_xi_m = build_gns(xi_m, trunc, opts.tol);
    GnsTruncation g_xi_2m = build_gns(xi_2m, trunc, opts.tol);
    CoEmbedding head = co_embedding(g_xi, g_xi_m);
    CoEmbedding tail = co_embedding(g_xi_m, g_xi_2m);
    CoEmbedding direct = co_embedding(g_xi, g_xi_2m);
    r.check("composition-defect",
            (head.map * tail.map - direct.map).jacobiSvd().singularValues()(0), 1e-9);

    CoEmbedding self = co_embedding(g_xi, g_xi);
    r.check("self-embedding-identity",
            (self.map - MatrixXcd::Identity(g_xi.rank, g_xi.rank)).norm(), 1e-12);

    FreeSeries one = FreeSeries::constant(2, 2, Complex(1));
    FreeSeries l1 = FreeSeries::letter(2, 2, 1);
    FreeSeries l1_plus_l2 = l1 + FreeSeries::letter(2, 2, 2);
    FreeSeries l1l2(2, 2);
    l1l2.set_coeff(Word({1, 2}), Complex(1));
    struct Poly {
        const char* name;
        const FreeSeries* p;
    };
    for (const Poly& poly : {Poly{"unit", &one}, Poly{"letter-1", &l1},
                             Poly{"letter-sum", &l1_plus_l2}, Poly{"word-12", &l1l2}}) {
        double slack_a = positivity_transfer_check(xi, xi_m, *poly.p, trunc, 1e-10);
        r.check(std::string("transfer-xi-") + poly.name, std::max(0.0, -slack_a), 1e-8);
        double slack_b = positivity_transfer_check(vacuum, doubled, *poly.p, trunc, 1e-10);
        r.check(std::string("transfer-m-") + poly.name, std::max(0.0, -slack_b), 1e-8);
    }
}

void scenario_wittstock(Runner& r, const ScenarioOptions& opts, Json& diagnostics) {
    const int vector_depth = 2;
    const int vector_len = 2 * vector_depth;
    const int vector_trunc = 2;
    const int samples = 20;

    double recon = 0, psd = 0, formula = 0;
    for (int i = 0; i < samples; ++i) {
        std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(i));
        FockVector f = random_fock_vector(opts.dim, vector_depth, rng);
        FockVector g = random_fock_vector(opts.dim, vector_depth, rng);
        ComplexMeasure target = vector_functional(f, g, opts.dim, vector_len);
        WittstockQuad quad = wittstock_from_vectors(f, g, opts.dim, vector_len);
        recon = std::max(recon, quad.reconstruction_error(target));
        for (const PositiveMeasure& part : quad.parts) {
            PsdReport rep = is_positive(part, vector_trunc, 1e-10);
            psd = std::max(psd, std::max(0.0, -rep.min_eigenvalue / rep.scale));
        }
        GnsFunctional fn = gns_formula(quad.parts, vector_trunc, opts.tol);
        for (const Word& a : enumerate_words(opts.dim, vector_trunc - 1)) {
            for (const Word& b : enumerate_words(opts.dim, vector_trunc - 1)) {
                formula = std::max(formula,
                                   std::abs(fn.eval(a, b) - target.product_moment(a, b)));
            }
        }
    }
    r.check("vector-quad-reconstruction", recon, 1e-10);
    r.check("vector-quad-positivity", psd, 1e-10);
    r.check("vector-quad-gns-match", formula, 1e-9);

    int trunc = opts.max_len;
    int depth = 2 * trunc;
    struct ShiftCase {
        const char* name;
        PositiveMeasure measure;
        int letter;
    };
    Json quad_reports = Json::array();
    for (ShiftCase& c :
         std::vector<ShiftCase>{{"m1", PositiveMeasure::lebesgue(2, depth + 1), 1},
                                {"xi2", PositiveMeasure::dirac_xi(depth + 1), 2}}) {
        WittstockQuad quad = shift_wittstock(c.measure, c.letter);
        ComplexMeasure target = back_shift(c.measure, c.letter);
        double recon_err = quad.reconstruction_error(target);
        r.check(std::string("shift-quad-reconstruction-") + c.name, recon_err, 1e-10);
        double shift_psd = 0, domination = 0;
        PositiveMeasure variation = quad.total_variation();
        Json component_eigs = Json::array();
        for (const PositiveMeasure& part : quad.parts) {
            PsdReport rep = is_positive(part, trunc, 1e-10);
            component_eigs.push_back(rep.min_eigenvalue);
            shift_psd = std::max(shift_psd, std::max(0.0, -rep.min_eigenvalue / rep.scale));
            PsdReport dom = leq(part, variation, trunc, 1e-10);
            domination = std::max(domination, std::max(0.0, -dom.min_eigenvalue / dom.scale));
        }
        r.check(std::string("shift-quad-positivity-") + c.name, shift_psd, 1e-10);
        r.check(std::string("shift-quad-domination-") + c.name, domination, 1e-10);

        GnsFunctional fn = gns_formula(quad.parts, trunc, opts.tol);
        double match = 0;
        for (const Word& a : enumerate_words(2, trunc - 1)) {
            for (const Word& b : enumerate_words(2, trunc - 1)) {
                match = std::max(match, std::abs(fn.eval(a, b) - target.product_moment(a, b)));
            }
        }
        r.check(std::string("shift-quad-gns-match-") + c.name, match, 1e-9);

        Json report;
        report["quad"] = c.name;
        report["reconstruction_residual"] = recon_err;
        report["component_min_eigenvalues"] = component_eigs;
        quad_reports.push_back(report);
    }
    diagnostics["quad_reports"] = quad_reports;

    WittstockQuad vacuum_quad =
        wittstock_from_vectors(FockVector::vacuum(), FockVector::vacuum(), 2, 4);
    PositiveMeasure m4 = PositiveMeasure::lebesgue(2, 4);
    double profile = std::max(
        {sup_moment_diff(vacuum_quad.parts[0], m4, 4),
         sup_moment_diff(vacuum_quad.parts[1], PositiveMeasure::zero(2, 4), 4),
         sup_moment_diff(vacuum_quad.parts[2], m4.scaled(0.5), 4),
         sup_moment_diff(vacuum_quad.parts[3], m4.scaled(0.5), 4)});
    r.check("vacuum-quad-profile", profile, kExact);
    r.check("vacuum-total-variation",
            sup_moment_diff(vacuum_quad.total_variation(), m4.scaled(2.0), 4), kExact);

    TaggedQuad tagged{{TaggedMeasure{vacuum_quad.parts[0], PartClass::AbsolutelyContinuous},
                       TaggedMeasure{vacuum_quad.parts[1], PartClass::AbsolutelyContinuous},
                       TaggedMeasure{vacuum_quad.parts[2], PartClass::AbsolutelyContinuous},
                       TaggedMeasure{vacuum_quad.parts[3], PartClass::AbsolutelyContinuous}}};
    LebesgueSplit split = lebesgue_parts(tagged);
    ComplexMeasure whole = vacuum_quad.reconstruct();
    double ac_diff = 0;
    for (const Word& w : enumerate_words(2, 4)) {
        ac_diff = std::max(ac_diff,
                           std::abs(split.absolutely_continuous.forward(w) - whole.forward(w)));
        ac_diff = std::max(ac_diff, std::abs(split.singular.forward(w)));
    }
    r.check("tagged-split-identity", ac_diff, kExact);
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"xi-example", "clark-roundtrip", "fm-riesz-witness", "order-checks", "wittstock"};
}

ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opts) {
    ScenarioReport report;
    report.name = name;
    report.options = opts;
    report.diagnostics = nullptr;

    auto start = std::chrono::steady_clock::now();
    Runner runner;
    if (name == "xi-example") {
        scenario_xi_example(runner, opts, report.diagnostics);
    } else if (name == "clark-roundtrip") {
        scenario_clark_roundtrip(runner, opts);
    } else if (name == "fm-riesz-witness") {
        scenario_fm_riesz_witness(runner, opts);
    } else if (name == "order-checks") {
        report.diagnostics = Json::object();
        scenario_order_checks(runner, opts, report.diagnostics);
    } else if (name == "wittstock") {
        report.diagnostics = Json::object();
        scenario_wittstock(runner, opts, report.diagnostics);
    } else {
        throw UnknownScenario("unknown scenario \"" + name + "\"");
    }
    auto stop = std::chrono::steady_clock::now();

    report.checks = std::move(runner.checks);
    report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const CheckRecord& c) { return c.pass; });
    report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return report;
}

nlohmann::ordered_json to_json(const ScenarioReport& report, bool include_timing) {
    Json j;
    j["scenario"] = report.name;
    Json inputs;
    inputs["dim"] = report.options.dim;
    inputs["max_len"] = report.options.max_len;
    inputs["cap"] = report.options.cap;
    inputs["tol"] = report.options.tol;
    inputs["seed"] = report.options.seed;
    j["inputs"] = inputs;
    Json checks = Json::array();
    for (const CheckRecord& c : report.checks) {
        Json e;
        e["name"] = c.name;
        e["value"] = c.value;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["pass"] = report.all_pass;
    if (!report.diagnostics.is_null()) j["diagnostics"] = report.diagnostics;
    if (include_timing) j["wall_ms"] = report.wall_ms;
    return j;
}

}  // namespace nclab
