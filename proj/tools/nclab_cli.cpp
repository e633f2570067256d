#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <cstdlib>
#include <iostream>
#include <string>

#include "nclab/classify.hpp"
#include "nclab/errors.hpp"
#include "nclab/gns.hpp"
#include "nclab/json_io.hpp"
#include "nclab/measure.hpp"
#include "nclab/scenario.hpp"
#include "nclab/series.hpp"

namespace {

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
    const char* env = std::getenv("NCLAB_LOG");
    if (env == nullptr) return LogLevel::Info;
    std::string v(env);
    if (v == "quiet" || v == "0") return LogLevel::Quiet;
    if (v == "debug" || v == "2") return LogLevel::Debug;
    return LogLevel::Info;
}

void emit(const nclab::Json& j, const std::string& output_path) {
    std::string text = j.dump(2);
    text += '\n';
    if (output_path.empty()) {
        std::cout << text;
    } else {
        nclab::save_text_file(output_path, text);
    }
}

int run_gram(const std::string& file, int max_len, double tol, const std::string& output) {
    nclab::PositiveMeasure mu =
        nclab::positive_measure_from_json(nclab::load_json_file(file));
    int trunc = max_len >= 0 ? max_len : mu.max_len() / 2;
    Eigen::MatrixXcd gram = nclab::gram_matrix(mu, trunc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = es.eigenvalues();
    double scale = std::max(1.0, std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff())));
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > tol * scale) ++rank;
    }

    nclab::Json j;
    j["d"] = mu.dim();
    j["trunc"] = trunc;
    j["rank"] = rank;
    j["gram_min_eig"] = ev.minCoeff();
    nclab::Json eigs = nclab::Json::array();
    for (Eigen::Index i = 0; i < ev.size(); ++i) eigs.push_back(ev(i));
    j["eigenvalues"] = eigs;
    emit(j, output);
    if (log_level() != LogLevel::Quiet) {
        std::cerr << "gram: dimension " << ev.size() << ", rank " << rank << ", min eigenvalue "
                  << ev.minCoeff() << "\n";
    }
    return 0;
}

int run_scenario_cmd(const std::string& name, const nclab::ScenarioOptions& opts,
                     const std::string& output) {
    nclab::ScenarioReport report = nclab::run_scenario(name, opts);
    emit(nclab::to_json(report, false), output);
    LogLevel level = log_level();
    if (level != LogLevel::Quiet) {
        int passed = 0;
        for (const auto& c : report.checks) passed += c.pass ? 1 : 0;
        std::cerr << name << ": " << passed << "/" << report.checks.size() << " checks passed ("
                  << report.wall_ms << " ms)\n";
        if (level == LogLevel::Debug) {
            for (const auto& c : report.checks) {
                std::cerr << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name
                          << " value=" << c.value << " tol=" << c.tolerance << "\n";
            }
        }
    }
    return report.all_pass ? 0 : 1;
}

int run_herglotz(const std::string& file, int cap, const std::string& output) {
    nclab::PositiveMeasure mu =
        nclab::positive_measure_from_json(nclab::load_json_file(file));
    int use_cap = cap >= 0 ? cap : mu.max_len();
    nclab::FreeSeries h = nclab::herglotz_series(mu, use_cap);
    emit(nclab::to_json(h), output);
    return 0;
}

int run_cayley(const std::string& file, bool inverse_direction, const std::string& output) {
    nclab::FreeSeries s = nclab::series_from_json(nclab::load_json_file(file));
    nclab::FreeSeries out = inverse_direction ? nclab::inverse_cayley(s) : nclab::cayley(s);
    emit(nclab::to_json(out), output);
    return 0;
}

int run_clark(const std::string& file, int max_len, double tol, const std::string& output) {
    nclab::FreeSeries schur = nclab::series_from_json(nclab::load_json_file(file));
    int trunc = max_len >= 0 ? max_len : schur.cap() / 2;
    nclab::PositiveMeasure mu = nclab::clark_measure(schur, trunc, tol);
    emit(nclab::to_json(mu), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for moment-table measures on the free disk system"};
    app.require_subcommand(1);

    std::string file, output, scenario_name;
    int max_len = -1, cap = -1;
    double tol = 1e-9;
    nclab::ScenarioOptions opts;

    CLI::App* gram = app.add_subcommand("gram", "Gram spectrum and rank of a measure file");
    gram->add_option("file", file, "measure file (JSON)")->required();
    gram->add_option("--max-len", max_len, "Gram truncation depth");
    gram->add_option("--tol", tol, "relative rank cutoff");
    gram->add_option("--output", output, "write the report here instead of stdout");

    CLI::App* scen = app.add_subcommand("scenario", "run a named scenario and report checks");
    scen->add_option("name", scenario_name, "scenario name");
    scen->add_option("--scenario", scenario_name, "scenario name (alternative spelling)");
    scen->add_option("--dim", opts.dim, "alphabet size");
    scen->add_option("--max-len", opts.max_len, "GNS truncation depth");
    scen->add_option("--cap", opts.cap, "series degree cap");
    scen->add_option("--tol", opts.tol, "numerical rank cutoff");
    scen->add_option("--seed", opts.seed, "seed for randomized checks");
    scen->add_option("--output", output, "write the report here instead of stdout");

    CLI::App* herg = app.add_subcommand("herglotz", "Herglotz series of a positive measure file");
    herg->add_option("file", file, "measure file (JSON)")->required();
    herg->add_option("--cap", cap, "series degree cap");
    herg->add_option("--output", output, "write the series here instead of stdout");

    CLI::App* cay = app.add_subcommand("cayley", "Cayley transform of a series file");
    cay->add_option("file", file, "series file (JSON)")->required();
    bool inverse_direction = false;
    cay->add_flag("--inverse", inverse_direction, "map Schur class to Herglotz class instead");
    cay->add_option("--output", output, "write the series here instead of stdout");

    CLI::App* clark = app.add_subcommand("clark", "Clark measure of a Schur-class series file");
    clark->add_option("file", file, "series file (JSON)")->required();
    clark->add_option("--max-len", max_len, "moment truncation depth");
    clark->add_option("--tol", tol, "positivity tolerance");
    clark->add_option("--output", output, "write the measure here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gram->parsed()) return run_gram(file, max_len, tol, output);
        if (scen->parsed()) {
            if (scenario_name.empty()) {
                std::cerr << "error: no scenario name given; known: ";
                for (const auto& n : nclab::scenario_names()) std::cerr << n << " ";
                std::cerr << "\n";
                return 2;
            }
            return run_scenario_cmd(scenario_name, opts, output);
        }
        if (herg->parsed()) return run_herglotz(file, cap, output);
        if (cay->parsed()) return run_cayley(file, inverse_direction, output);
        if (clark->parsed()) return run_clark(file, max_len, tol, output);
    } catch (const nclab::UnknownScenario& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nclab::OutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nclab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
