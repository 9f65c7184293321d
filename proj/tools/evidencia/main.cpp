#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evidencia/criteria.hpp"
#include "evidencia/csvio.hpp"
#include "evidencia/errors.hpp"
#include "evidencia/linmodel.hpp"
#include "evidencia/manifest.hpp"
#include "evidencia/quadrature.hpp"
#include "evidencia/rng.hpp"
#include "evidencia/simlab.hpp"
#include "evidencia/specfun.hpp"
#include "evidencia/version.hpp"

namespace evidencia::cli {
namespace {

int env_thread_count() {
    const char* s = std::getenv("EVIDENCIA_THREADS");
    if (s == nullptr || *s == '\0') return 0;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 0)
        throw ConfigError("EVIDENCIA_THREADS must be a nonnegative integer");
    return static_cast<int>(v);
}

std::vector<Criterion> parse_criteria(const std::string& csv) {
    std::vector<Criterion> out;
    std::string token;
    for (std::size_t i = 0; i <= csv.size(); ++i) {
        if (i == csv.size() || csv[i] == ',') {
            if (!token.empty()) out.push_back(criterion_from_name(token));
            token.clear();
        } else if (!std::isspace(static_cast<unsigned char>(csv[i]))) {
            token += csv[i];
        }
    }
    if (out.empty()) throw ConfigError("no criteria given");
    return out;
}

/// Writes `content` to `path`, or to stdout when path is empty. File outputs
/// get a timestamped sibling manifest at <path>.manifest.json.
void deliver(const std::string& path, const std::string& content,
             const RunManifest& manifest) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    write_file(path, content);
    write_file(path + ".manifest.json", manifest_json(manifest, true) + "\n");
}

// ---------------------------------------------------------------- select ----

struct SelectOptions {
    std::string data_path;
    std::string basis = "cosine";
    int kmax = 0; // 0 = all supported by data and basis
    std::string output;
    std::string format = "csv";
};

int run_select(const SelectOptions& opt) {
    const Dataset data = read_dataset_csv(opt.data_path);
    const int N = data.size();
    BasisSpec basis = BasisSpec::cosine();
    if (opt.basis != "cosine") basis = BasisSpec::from_table(read_table_csv(opt.basis));

    int kmax = opt.kmax;
    if (kmax == 0) kmax = std::min(N, basis.max_functions(N));
    if (kmax < 1) throw ConfigError("--kmax must be at least 1");

    const StandardizedData std_data = standardize(data);
    std::vector<FitDecomposition> fits;
    fits.reserve(static_cast<std::size_t>(kmax));
    for (int K = 1; K <= kmax; ++K)
        fits.push_back(fit(std_data, build_design_matrix(data, basis, K)));

    std::vector<Vec> columns(kAllCriteria.size(), Vec(fits.size()));
    for (std::size_t i = 0; i < fits.size(); ++i)
        for (std::size_t c = 0; c < kAllCriteria.size(); ++c)
            columns[c][i] = criterion_value(kAllCriteria[c], fits[i].chi_sq,
                                            fits[i].F_sq, std_data.z_sq,
                                            fits[i].K, N);
    // A criterion with no finite value (AICc when N - K - 1 <= 0 everywhere)
    // reports NA instead of failing the whole table.
    std::vector<int> selected(kAllCriteria.size(), 0);
    for (std::size_t c = 0; c < kAllCriteria.size(); ++c) {
        bool any_finite = false;
        for (double v : columns[c]) any_finite = any_finite || std::isfinite(v);
        if (any_finite) selected[c] = argmin_smallest_k(columns[c]);
    }

    RunManifest manifest;
    manifest.subcommand = "select";
    manifest.add_config("N", std::to_string(N));
    manifest.add_config("kmax", std::to_string(kmax));
    manifest.add_config("basis", opt.basis);
    manifest.add_config("format", opt.format);
    manifest.add_input(opt.data_path, fnv1a64_digest(read_file(opt.data_path)));
    if (opt.basis != "cosine")
        manifest.add_input(opt.basis, fnv1a64_digest(read_file(opt.basis)));

    std::string out;
    if (opt.format == "csv") {
        out += "# evidencia select v" + std::string(kVersion) + "\n";
        out += "K,chi_sq,F_sq";
        for (Criterion c : kAllCriteria) out += "," + criterion_name(c);
        out += "\n";
        for (std::size_t i = 0; i < fits.size(); ++i) {
            out += std::to_string(fits[i].K) + "," + format_double(fits[i].chi_sq) +
                   "," + format_double(fits[i].F_sq);
            for (std::size_t c = 0; c < kAllCriteria.size(); ++c)
                out += "," + format_double(columns[c][i]);
            out += "\n";
        }
        out += "# selected:";
        for (std::size_t c = 0; c < kAllCriteria.size(); ++c)
            out += " " + criterion_name(kAllCriteria[c]) + "=" +
                   (selected[c] > 0 ? std::to_string(selected[c]) : std::string("NA"));
        out += "\n";
    } else {
        out += "{\"manifest\":" + manifest_json(manifest, false);
        out += ",\"N\":" + std::to_string(N);
        out += ",\"z_sq\":" + json_number(std_data.z_sq);
        out += ",\"rows\":[";
        for (std::size_t i = 0; i < fits.size(); ++i) {
            if (i) out += ",";
            out += "{\"K\":" + std::to_string(fits[i].K);
            out += ",\"chi_sq\":" + json_number(fits[i].chi_sq);
            out += ",\"F_sq\":" + json_number(fits[i].F_sq);
            for (std::size_t c = 0; c < kAllCriteria.size(); ++c)
                out += ",\"" + criterion_name(kAllCriteria[c]) +
                       "\":" + json_number(columns[c][i]);
            out += "}";
        }
        out += "],\"selected\":{";
        for (std::size_t c = 0; c < kAllCriteria.size(); ++c) {
            if (c) out += ",";
            out += "\"" + criterion_name(kAllCriteria[c]) + "\":" +
                   (selected[c] > 0 ? std::to_string(selected[c]) : std::string("null"));
        }
        out += "}}\n";
    }
    deliver(opt.output, out, manifest);
    return 0;
}

// -------------------------------------------------------------- simulate ----

struct SimulateOptions {
    double a = 1.0;
    double b = 1.0;
    int n = 32;
    int replicates = 4096;
    std::uint64_t seed = 0xD1CE;
    std::string criteria = "AIC,AICc,BIC,RobustExact,RobustAsymptotic,RobustLargeK";
    std::string output;
    std::string emit_data;
    int emit_ksim = 8;
    int emit_replicate = 0;
};

RunManifest simulate_manifest(const SimulateOptions& opt) {
    RunManifest m;
    m.subcommand = "simulate";
    m.add_config("a", format_double(opt.a));
    m.add_config("b", format_double(opt.b));
    m.add_config("N", std::to_string(opt.n));
    m.add_config("replicates", std::to_string(opt.replicates));
    m.add_config("seed", std::to_string(opt.seed));
    m.add_config("criteria", opt.criteria);
    return m;
}

void emit_simulated_dataset(const SimulateOptions& opt, const SimConfig& config) {
    if (opt.emit_ksim < 1 || opt.emit_ksim > config.N)
        throw ConfigError("--emit-ksim must be between 1 and N");
    if (opt.emit_replicate < 0 || opt.emit_replicate >= config.replicates)
        throw ConfigError("--emit-replicate must be below --replicates");
    const SimDraw draw =
        generate_draw(config, static_cast<std::uint32_t>(opt.emit_replicate));
    const Vec x = sample_points(config.N);

    RunManifest m = simulate_manifest(opt);
    m.subcommand = "simulate.emit-data";
    m.add_config("emit_ksim", std::to_string(opt.emit_ksim));
    m.add_config("emit_replicate", std::to_string(opt.emit_replicate));

    std::string out = "# evidencia simulated dataset v" + std::string(kVersion) + "\n";
    out += "# manifest: " + manifest_json(m, false) + "\n";
    out += "x,y,sigma\n";
    for (int n = 0; n < config.N; ++n) {
        out += format_double(x[static_cast<std::size_t>(n)]) + "," +
               format_double(draw.D(static_cast<std::size_t>(n),
                                    static_cast<std::size_t>(opt.emit_ksim) - 1)) +
               ",1\n";
    }
    write_file(opt.emit_data, out);
}

int run_simulate(const SimulateOptions& opt) {
    SimConfig config;
    config.N = opt.n;
    config.a = opt.a;
    config.b = opt.b;
    config.replicates = opt.replicates;
    config.seed = opt.seed;
    config.criteria = parse_criteria(opt.criteria);
    config.validate();

    if (!opt.emit_data.empty()) emit_simulated_dataset(opt, config);

    const SuccessTable table = run_success_experiment(config, env_thread_count());

    RunManifest manifest = simulate_manifest(opt);
    std::string csv = "# evidencia simulate v" + std::string(kVersion) + "\n";
    csv += "# a=" + format_double(opt.a) + " b=" + format_double(opt.b) +
           " N=" + std::to_string(opt.n) +
           " replicates=" + std::to_string(opt.replicates) +
           " seed=" + std::to_string(opt.seed) + "\n";
    csv += "criterion,Ksim,successes,rate,std_error\n";
    for (std::size_t c = 0; c < config.criteria.size(); ++c)
        for (int s = 0; s < config.N; ++s) {
            const auto su = static_cast<std::size_t>(s);
            csv += criterion_name(config.criteria[c]) + "," + std::to_string(s + 1) +
                   "," + std::to_string(table.successes[c][su]) + "," +
                   format_double(table.rates(c, su)) + "," +
                   format_double(table.std_errors(c, su)) + "\n";
        }
    deliver(opt.output, csv, manifest);

    if (!opt.output.empty()) {
        std::string json = "{\"manifest\":" + manifest_json(manifest, false);
        json += ",\"rows\":[";
        bool first = true;
        for (std::size_t c = 0; c < config.criteria.size(); ++c)
            for (int s = 0; s < config.N; ++s) {
                const auto su = static_cast<std::size_t>(s);
                if (!first) json += ",";
                first = false;
                json += "{\"criterion\":\"" + criterion_name(config.criteria[c]) +
                        "\",\"Ksim\":" + std::to_string(s + 1) +
                        ",\"successes\":" + std::to_string(table.successes[c][su]) +
                        ",\"rate\":" + json_number(table.rates(c, su)) +
                        ",\"std_error\":" + json_number(table.std_errors(c, su)) + "}";
            }
        json += "]}\n";
        write_file(opt.output + ".json", json);
    }
    return 0;
}

// ---------------------------------------------------------------- curves ----

struct CurvesOptions {
    double a = 1.0;
    double b = 0.0;
    int n = 32;
    int s = 8;
    int kmin = 1;
    int kmax = 0; // 0 = N
    std::string output;
    std::string format = "csv";
};

int run_curves(const CurvesOptions& opt) {
    const int kmax = opt.kmax == 0 ? opt.n : opt.kmax;
    const CurveTable t = criterion_curves(opt.a, opt.b, opt.n, opt.s, opt.kmin, kmax);

    RunManifest manifest;
    manifest.subcommand = "curves";
    manifest.add_config("a", format_double(opt.a));
    manifest.add_config("b", format_double(opt.b));
    manifest.add_config("N", std::to_string(opt.n));
    manifest.add_config("S", std::to_string(opt.s));
    manifest.add_config("kmin", std::to_string(opt.kmin));
    manifest.add_config("kmax", std::to_string(kmax));

    std::string out;
    if (opt.format == "csv") {
        out += "# evidencia curves v" + std::string(kVersion) + "\n";
        out += "K,E_chi_sq,E_F_sq,AIC,BIC,RobustLargeK\n";
        for (std::size_t i = 0; i < t.K.size(); ++i)
            out += std::to_string(t.K[i]) + "," + format_double(t.E_chi_sq[i]) + "," +
                   format_double(t.E_F_sq[i]) + "," + format_double(t.aic[i]) + "," +
                   format_double(t.bic[i]) + "," + format_double(t.robust_large_k[i]) +
                   "\n";
    } else {
        out += "{\"manifest\":" + manifest_json(manifest, false);
        out += ",\"rows\":[";
        for (std::size_t i = 0; i < t.K.size(); ++i) {
            if (i) out += ",";
            out += "{\"K\":" + std::to_string(t.K[i]);
            out += ",\"E_chi_sq\":" + json_number(t.E_chi_sq[i]);
            out += ",\"E_F_sq\":" + json_number(t.E_F_sq[i]);
            out += ",\"AIC\":" + json_number(t.aic[i]);
            out += ",\"BIC\":" + json_number(t.bic[i]);
            out += ",\"RobustLargeK\":" + json_number(t.robust_large_k[i]) + "}";
        }
        out += "]}\n";
    }
    deliver(opt.output, out, manifest);
    return 0;
}

// ------------------------------------------------------------- selfcheck ----

struct CheckResult {
    std::string name;
    double error = 0.0;
    double tol = 0.0;
};

int run_selfcheck(bool inject_error) {
    std::vector<CheckResult> checks;

    {
        double worst = 0.0;
        for (double a : {0.5, 1.0, 2.0, 8.0})
            for (double x : {0.25, 1.0, 10.0, 100.0, 300.0})
                worst = std::max(worst, std::abs(log_1F1(a, a, x) - x));
        checks.push_back({"1F1(a;a;x) = exp(x)", worst, 1e-12});
    }
    {
        // Contiguous relation 1F1(a;b;x) = 1F1(a+1;b;x) - (x/b) 1F1(a+1;b+1;x),
        // compared in the linear domain after removing the common exponent.
        double worst = 0.0;
        for (double a : {0.5, 1.5, 3.0})
            for (double b : {2.0, 4.5})
                for (double x : {0.5, 5.0, 40.0}) {
                    const double l1 = log_1F1(a, b, x);
                    const double l2 = log_1F1(a + 1.0, b, x);
                    const double l3 = log_1F1(a + 1.0, b + 1.0, x);
                    const double rhs =
                        std::exp(l2 - l1) - (x / b) * std::exp(l3 - l1);
                    worst = std::max(worst, std::abs(rhs - 1.0));
                }
        checks.push_back({"1F1 contiguous relation", worst, 1e-12});
    }
    {
        double worst = 0.0;
        for (double b : {0.5, 4.0, 16.0}) {
            const double s = detail::log_0F1_series(b, 705.0);
            const double as = detail::log_0F1_asymptotic(b, 705.0);
            worst = std::max(worst, std::abs(s - as) / std::abs(s));
        }
        checks.push_back({"0F1 series/asymptotic crossover", worst, 1e-9});
    }
    {
        double worst = 0.0;
        for (double a : {1.5, 4.0})
            for (double x : {0.5, 2.0, 10.0})
                for (double y : {0.5, 2.0, 10.0})
                    worst = std::max(
                        worst, std::abs(humbert_psi2(a, a, a, x, y) -
                                        (x + y + log_0F1(a, x * y))));
        checks.push_back({"Psi2 equal-argument reduction", worst, 1e-10});
    }
    {
        double worst = 0.0;
        for (double x : {0.5, 3.0, 20.0})
            worst = std::max(worst, std::abs(humbert_psi2(1.5, 2.5, 4.0, x, 0.0) -
                                             log_1F1(1.5, 2.5, x)));
        checks.push_back({"Psi2 collapse at y=0 to 1F1", worst, 1e-10});
    }
    {
        double worst = 0.0;
        for (auto [delta, L] : {std::pair{1.0, 2}, {0.7, 5}}) {
            const double total = integrate_to_infinity(
                [&](double q) { return gamma_radial_pdf(q, delta, L); }, 0.0, 1e-12);
            worst = std::max(worst, std::abs(total - 1.0));
        }
        checks.push_back({"Gamma radial density normalization", worst, 1e-8});
    }
    {
        const double total = integrate_to_infinity(
            [](double r) { return noncentral_gamma_radial_pdf(r, 1.0, 3.0, 4); }, 0.0,
            1e-12);
        checks.push_back(
            {"noncentral Gamma radial density normalization", std::abs(total - 1.0),
             1e-8});
    }
    {
        double worst = 0.0;
        for (auto [a, x, y] :
             {std::tuple{3.0, 2.0, 1.5}, {2.0, 1.0, 0.0}, {1.5, 0.5, 0.25}}) {
            auto [lhs, rhs] = verify_integral_identity(a, x, y);
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
        checks.push_back({"Gamma-0F1 mixing integral identity", worst, 1e-6});
    }
    if (inject_error)
        checks.push_back({"injected failure (testing hook)", 1.0, 1e-12});

    bool all_pass = true;
    for (const CheckResult& c : checks) {
        const bool pass = c.error < c.tol;
        all_pass = all_pass && pass;
        std::printf("[%s] %-46s measured error %.3e (tol %.0e)\n",
                    pass ? "PASS" : "FAIL", c.name.c_str(), c.error, c.tol);
    }
    std::printf("%s\n", all_pass ? "selfcheck: all identities hold"
                                 : "selfcheck: FAILURES detected");
    return all_pass ? 0 : 1;
}

// ------------------------------------------------------------------ main ----

int exit_code_for(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
        dynamic_cast<const InvalidUncertaintyError*>(&e) != nullptr ||
        dynamic_cast<const OverparameterizedError*>(&e) != nullptr ||
        dynamic_cast<const BasisExhaustedError*>(&e) != nullptr)
        return 2;
    return 3;
}

int run(int argc, char** argv) {
    CLI::App app{"Robust Bayesian model selection for linear regression"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SelectOptions sel;
    CLI::App* c_sel = app.add_subcommand(
        "select", "Evaluate information criteria for a dataset across model sizes");
    c_sel->add_option("--data", sel.data_path, "Dataset CSV with columns x,y,sigma")
        ->required();
    c_sel->add_option("--basis", sel.basis,
                      "'cosine' or path to a basis-value table CSV");
    c_sel->add_option("--kmax", sel.kmax, "Largest model dimension (0 = all)");
    c_sel->add_option("--output", sel.output, "Output path (default stdout)");
    c_sel->add_option("--format", sel.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    SimulateOptions sim;
    CLI::App* c_sim = app.add_subcommand(
        "simulate", "Monte Carlo success-rate experiment over synthetic datasets");
    c_sim->add_option("--a", sim.a, "Signal amplitude");
    c_sim->add_option("--b", sim.b, "Amplitude spread");
    c_sim->add_option("--n", sim.n, "Data points per dataset");
    c_sim->add_option("--replicates", sim.replicates, "Monte Carlo replicates");
    c_sim->add_option("--seed", sim.seed, "RNG seed");
    c_sim->add_option("--criteria", sim.criteria, "Comma-separated criterion names");
    c_sim->add_option("--output", sim.output,
                      "Output CSV path; also writes <path>.json (default stdout)");
    c_sim->add_option("--emit-data", sim.emit_data,
                      "Also write one simulated dataset CSV to this path");
    c_sim->add_option("--emit-ksim", sim.emit_ksim,
                      "True model dimension of the emitted dataset");
    c_sim->add_option("--emit-replicate", sim.emit_replicate,
                      "Replicate index of the emitted dataset");

    CurvesOptions cur;
    CLI::App* c_cur = app.add_subcommand(
        "curves", "Analytic expectation curves of the criteria");
    c_cur->add_option("--a", cur.a, "Signal amplitude");
    c_cur->add_option("--b", cur.b, "Amplitude spread");
    c_cur->add_option("--n", cur.n, "Data points");
    c_cur->add_option("--s", cur.s, "True model dimension");
    c_cur->add_option("--kmin", cur.kmin, "First model dimension");
    c_cur->add_option("--kmax", cur.kmax, "Last model dimension (0 = N)");
    c_cur->add_option("--output", cur.output, "Output path (default stdout)");
    c_cur->add_option("--format", cur.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    bool inject_error = false;
    CLI::App* c_chk =
        app.add_subcommand("selfcheck", "Run the built-in numerical identity suite");
    c_chk->add_flag("--inject-error", inject_error,
                    "Force one failing check (exercises the failure path)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_sel->parsed()) return run_select(sel);
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_cur->parsed()) return run_curves(cur);
        if (c_chk->parsed()) return run_selfcheck(inject_error);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

} // namespace
} // namespace evidencia::cli

int main(int argc, char** argv) { return evidencia::cli::run(argc, argv); }
