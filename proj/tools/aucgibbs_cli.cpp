// aucg: command-line front end over the aucgibbs C API.
//
// Exit codes: 0 success, 2 input/usage error, 3 numerical failure.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aucgibbs.h"
#include "json.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

int exit_code_for(agp_status status) {
    switch (status) {
        case AGP_OK:
            return 0;
        case AGP_ERR_INVALID:
        case AGP_ERR_TIES:
        case AGP_ERR_IO:
            return 2;
        default:
            return 3;
    }
}

[[noreturn]] void fail(agp_status status) {
    std::fprintf(stderr, "aucg: %s (%s)\n", agp_last_error(), agp_strerror(status));
    std::exit(exit_code_for(status));
}

void check(agp_status status) {
    if (status != AGP_OK) fail(status);
}

[[noreturn]] void usage_error(const std::string& msg) {
    std::fprintf(stderr, "aucg: %s\n", msg.c_str());
    std::exit(2);
}

agp_scores* load_scores(const std::string& path) {
    agp_scores* scores = nullptr;
    check(agp_scores_from_csv(path.c_str(), &scores));
    return scores;
}

// "flat" or "truncnorm:LOC,SCALE" -> (location, scale); scale 0 means flat
void parse_prior(const std::string& spec, double& location, double& scale) {
    location = 0.0;
    scale = 0.0;
    if (spec == "flat") return;
    const std::string prefix = "truncnorm:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string rest = spec.substr(prefix.size());
        const auto comma = rest.find(',');
        if (comma != std::string::npos) {
            try {
                std::size_t pos1 = 0, pos2 = 0;
                const std::string loc_s = rest.substr(0, comma);
                const std::string scale_s = rest.substr(comma + 1);
                location = std::stod(loc_s, &pos1);
                scale = std::stod(scale_s, &pos2);
                if (pos1 == loc_s.size() && pos2 == scale_s.size() && scale > 0.0) return;
            } catch (const std::exception&) {
                // falls through to the usage error
            }
        }
    }
    usage_error("--prior must be flat or truncnorm:LOC,SCALE with SCALE > 0 (got \"" +
                spec + "\")");
}

// "calibrate", "analytic", or a positive real
void parse_omega(const std::string& spec, agp_fit_config& cfg) {
    if (spec == "calibrate") {
        cfg.omega_mode = AGP_OMEGA_CALIBRATE;
        return;
    }
    if (spec == "analytic") {
        cfg.omega_mode = AGP_OMEGA_ANALYTIC;
        return;
    }
    try {
        std::size_t pos = 0;
        const double value = std::stod(spec, &pos);
        if (pos == spec.size() && value > 0.0) {
            cfg.omega_mode = AGP_OMEGA_FIXED;
            cfg.omega = value;
            return;
        }
    } catch (const std::exception&) {
        // falls through to the usage error
    }
    usage_error("--omega must be calibrate, analytic, or a positive real (got \"" + spec +
                "\")");
}

void print_json(const ordered_json& doc) { std::printf("%s\n", doc.dump(2).c_str()); }

ordered_json ci_json(double lower, double upper, double level, const char* kind) {
    return ordered_json{{"lower", lower}, {"upper", upper}, {"level", level}, {"kind", kind}};
}

const char* method_name(int method) {
    return method == AGP_METHOD_GIBBS ? "gibbs" : "brl";
}

// --------------------------------------------------------------- fit ----

struct FitArgs {
    std::string file;
    std::string prior = "flat";
    std::string omega = "calibrate";
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::int64_t bootstrap_samples = 1000;
    double epsilon = 0.01;
    double kappa_exponent = 0.51;
    std::int64_t max_iterations = 1000;
};

int run_fit(const FitArgs& args) {
    agp_fit_config cfg;
    agp_fit_config_init(&cfg);
    parse_prior(args.prior, cfg.prior_location, cfg.prior_scale);
    parse_omega(args.omega, cfg);
    cfg.alpha = args.alpha;
    cfg.seed = args.seed;
    cfg.bootstrap_samples = args.bootstrap_samples;
    cfg.epsilon = args.epsilon;
    cfg.kappa_exponent = args.kappa_exponent;
    cfg.max_iterations = args.max_iterations;

    agp_scores* scores = load_scores(args.file);
    agp_fit_result result;
    const agp_status status = agp_fit(scores, &cfg, &result);
    agp_scores_free(scores);
    check(status);

    ordered_json config_echo{{"file", args.file},
                             {"prior", args.prior},
                             {"omega", args.omega},
                             {"alpha", args.alpha}};
    if (result.calibrated) {
        config_echo["bootstrap_samples"] = args.bootstrap_samples;
        config_echo["epsilon"] = args.epsilon;
        config_echo["kappa_exponent"] = args.kappa_exponent;
        config_echo["max_iterations"] = args.max_iterations;
        config_echo["converged"] = result.converged != 0;
    }
    print_json(ordered_json{{"method", "gibbs"},
                            {"posterior_mean", result.posterior_mean},
                            {"posterior_sd", result.posterior_sd},
                            {"ci", ci_json(result.ci_lower, result.ci_upper,
                                           1.0 - args.alpha, "hpd")},
                            {"learning_rate", result.omega},
                            {"seed", args.seed},
                            {"config_echo", config_echo}});
    return 0;
}

// ---------------------------------------------------------- calibrate ----

struct CalibrateArgs {
    std::string file;
    std::int64_t bootstrap_samples = 1000;
    double epsilon = 0.01;
    double kappa_exponent = 0.51;
    std::int64_t max_iterations = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

int run_calibrate(const CalibrateArgs& args) {
    agp_fit_config cfg;
    agp_fit_config_init(&cfg);
    cfg.bootstrap_samples = args.bootstrap_samples;
    cfg.epsilon = args.epsilon;
    cfg.kappa_exponent = args.kappa_exponent;
    cfg.max_iterations = args.max_iterations;
    cfg.alpha = args.alpha;
    cfg.seed = args.seed;

    agp_scores* scores = load_scores(args.file);
    agp_calibration_result summary;
    agp_status status = agp_calibrate(scores, &cfg, &summary);
    std::vector<double> omegas, coverages, deltas;
    std::size_t count = 0;
    if (status == AGP_OK) {
        const auto capacity = static_cast<std::size_t>(
            args.max_iterations > 0 ? args.max_iterations : 0);
        omegas.resize(capacity);
        coverages.resize(capacity);
        deltas.resize(capacity);
        status = agp_calibrate_iterates(scores, &cfg, capacity, omegas.data(),
                                        coverages.data(), deltas.data(), &count);
    }
    agp_scores_free(scores);
    check(status);

    ordered_json trace = ordered_json::array();
    for (std::size_t i = 0; i < count; ++i)
        trace.push_back(ordered_json{{"t", i},
                                     {"omega", omegas[i]},
                                     {"coverage", coverages[i]},
                                     {"delta", deltas[i]}});
    print_json(ordered_json{
        {"omega_hat", summary.omega_hat},
        {"converged", summary.converged != 0},
        {"iterations", summary.iterations},
        {"final_coverage", summary.final_coverage},  // null when no iterations ran
        {"trace", trace},
        {"seed", args.seed},
        {"config_echo", ordered_json{{"file", args.file},
                                     {"bootstrap_samples", args.bootstrap_samples},
                                     {"epsilon", args.epsilon},
                                     {"kappa_exponent", args.kappa_exponent},
                                     {"max_iterations", args.max_iterations},
                                     {"alpha", args.alpha}}}});
    return 0;
}

// ---------------------------------------------------------------- brl ----

struct BrlArgs {
    std::string file;
    std::int64_t samples = 50000;
    std::int64_t burnin = 10000;
    std::int64_t thin = 1;
    std::string init;  // "a,b2" or empty for automatic
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool check_ranks = false;
};

int run_brl(const BrlArgs& args) {
    agp_brl_config cfg;
    agp_brl_config_init(&cfg);
    cfg.n_samples = args.samples;
    cfg.burn_in = args.burnin;
    cfg.thin = args.thin;
    cfg.alpha = args.alpha;
    cfg.seed = args.seed;
    cfg.check_ranks = args.check_ranks ? 1 : 0;
    if (!args.init.empty()) {
        const auto comma = args.init.find(',');
        bool ok = comma != std::string::npos;
        if (ok) {
            try {
                std::size_t pos1 = 0, pos2 = 0;
                const std::string a_s = args.init.substr(0, comma);
                const std::string b_s = args.init.substr(comma + 1);
                cfg.a0 = std::stod(a_s, &pos1);
                cfg.b20 = std::stod(b_s, &pos2);
                ok = pos1 == a_s.size() && pos2 == b_s.size() && cfg.b20 > 0.0;
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok) usage_error("--init must be A,B2 with B2 > 0 (got \"" + args.init + "\")");
        cfg.custom_init = 1;
    }

    agp_scores* scores = load_scores(args.file);
    agp_brl_result result;
    const agp_status status = agp_brl_fit(scores, &cfg, &result);
    agp_scores_free(scores);
    check(status);

    ordered_json config_echo{{"file", args.file},
                             {"samples", args.samples},
                             {"burnin", args.burnin},
                             {"thin", args.thin},
                             {"alpha", args.alpha},
                             {"check_ranks", args.check_ranks}};
    if (!args.init.empty()) config_echo["init"] = args.init;
    print_json(ordered_json{{"method", "brl"},
                            {"posterior_mean", result.posterior_mean},
                            {"posterior_sd", result.posterior_sd},
                            {"ci", ci_json(result.ci_lower, result.ci_upper,
                                           1.0 - args.alpha, "equal-tailed")},
                            {"seed", args.seed},
                            {"config_echo", config_echo}});
    return 0;
}

// ----------------------------------------------------------- simulate ----

struct SimulateArgs {
    int scenario = 1;
    std::vector<std::int64_t> n_grid{25, 50, 75, 100, 125};
    std::int64_t reps = 200;
    std::string method = "gibbs";
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::int64_t bootstrap_samples = 200;
    std::int64_t brl_samples = 20000;
    std::int64_t brl_burnin = 4000;
    bool full = false;
};

int run_simulate(SimulateArgs args, bool reps_set, bool b_set, bool chain_set) {
    if (args.full) {  // paper-scale defaults; explicit flags still win
        if (!reps_set) args.reps = 1000;
        if (!b_set) args.bootstrap_samples = 1000;
        if (!chain_set) {
            args.brl_samples = 50000;
            args.brl_burnin = 10000;
        }
    }
    int method;
    if (args.method == "gibbs")
        method = AGP_METHOD_GIBBS;
    else if (args.method == "brl")
        method = AGP_METHOD_BRL;
    else
        usage_error("--method must be gibbs or brl (got \"" + args.method + "\")");

    agp_fit_config fit_cfg;
    agp_fit_config_init(&fit_cfg);
    fit_cfg.alpha = args.alpha;
    fit_cfg.seed = args.seed;
    fit_cfg.bootstrap_samples = args.bootstrap_samples;
    agp_brl_config brl_cfg;
    agp_brl_config_init(&brl_cfg);
    brl_cfg.n_samples = args.brl_samples;
    brl_cfg.burn_in = args.brl_burnin;

    std::vector<agp_study_row> rows(args.n_grid.size());
    check(agp_run_study(args.scenario, args.n_grid.data(), args.n_grid.size(), method,
                        args.reps, &fit_cfg, &brl_cfg, rows.data()));

    ordered_json out = ordered_json::array();
    for (const auto& r : rows)
        out.push_back(ordered_json{{"scenario", r.scenario},
                                   {"n", r.n},
                                   {"method", method_name(r.method)},
                                   {"bias", r.bias},
                                   {"avg_posterior_sd", r.avg_posterior_sd},
                                   {"mean_ci_length", r.mean_ci_length},
                                   {"coverage", r.coverage},
                                   {"replications", r.replications},
                                   {"seed", r.seed}});
    print_json(out);
    return 0;
}

// -------------------------------------------------------- omega-study ----

struct OmegaStudyArgs {
    int scenario = 1;
    std::vector<std::int64_t> n_grid{25, 50, 75, 100, 125};
    std::int64_t reps = 200;
    std::int64_t bootstrap_samples = 200;
    std::int64_t oracle_reps = 2000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool full = false;
};

int run_omega_study(OmegaStudyArgs args, bool reps_set, bool b_set, bool oracle_set) {
    if (args.full) {
        if (!reps_set) args.reps = 1000;
        if (!b_set) args.bootstrap_samples = 1000;
        if (!oracle_set) args.oracle_reps = 5000;
    }
    agp_fit_config fit_cfg;
    agp_fit_config_init(&fit_cfg);
    fit_cfg.alpha = args.alpha;
    fit_cfg.seed = args.seed;
    fit_cfg.bootstrap_samples = args.bootstrap_samples;

    const std::size_t cells = args.n_grid.size();
    std::vector<double> omega_hats(cells * static_cast<std::size_t>(args.reps));
    std::vector<double> oracles(cells);
    check(agp_omega_study(args.scenario, args.n_grid.data(), cells, args.reps, &fit_cfg,
                          args.oracle_reps, omega_hats.data(), oracles.data()));

    std::printf("n,omega,kind\n");
    for (std::size_t i = 0; i < cells; ++i) {
        for (std::int64_t r = 0; r < args.reps; ++r)
            std::printf("%" PRId64 ",%.17g,calibrated\n", args.n_grid[i],
                        omega_hats[i * static_cast<std::size_t>(args.reps) +
                                   static_cast<std::size_t>(r)]);
        std::printf("%" PRId64 ",%.17g,oracle\n", args.n_grid[i], oracles[i]);
    }
    return 0;
}

// -------------------------------------------------------------- report ----

void print_fit_report(const ordered_json& doc) {
    const auto& ci = doc.at("ci");
    std::printf("%-16s %s\n", "method", doc.at("method").get<std::string>().c_str());
    std::printf("%-16s %.5f\n", "posterior mean", doc.at("posterior_mean").get<double>());
    std::printf("%-16s %.5f\n", "posterior sd", doc.at("posterior_sd").get<double>());
    char ci_label[32];
    std::snprintf(ci_label, sizeof(ci_label), "%.0f%% ci (%s)",
                  100.0 * ci.at("level").get<double>(),
                  ci.at("kind").get<std::string>().c_str());
    std::printf("%-16s [%.5f, %.5f]\n", ci_label, ci.at("lower").get<double>(),
                ci.at("upper").get<double>());
    if (doc.contains("learning_rate"))
        std::printf("%-16s %.6g\n", "learning rate", doc.at("learning_rate").get<double>());
    std::printf("%-16s %" PRIu64 "\n", "seed", doc.at("seed").get<std::uint64_t>());
}

void print_study_report(const ordered_json& rows) {
    std::printf("%-9s %-5s %-6s %-8s %-8s %-8s %-8s %s\n", "scenario", "n", "method",
                "bias", "sd", "length", "coverage", "reps");
    for (const auto& r : rows)
        std::printf("%-9d %-5" PRId64 " %-6s %-8.4f %-8.4f %-8.4f %-8.3f %" PRId64 "\n",
                    r.at("scenario").get<int>(), r.at("n").get<std::int64_t>(),
                    r.at("method").get<std::string>().c_str(), r.at("bias").get<double>(),
                    r.at("avg_posterior_sd").get<double>(),
                    r.at("mean_ci_length").get<double>(), r.at("coverage").get<double>(),
                    r.at("replications").get<std::int64_t>());
}

void print_calibration_report(const ordered_json& doc) {
    std::printf("%-16s %.6g\n", "omega_hat", doc.at("omega_hat").get<double>());
    std::printf("%-16s %s\n", "converged", doc.at("converged").get<bool>() ? "yes" : "no");
    std::printf("%-16s %" PRId64 "\n", "iterations", doc.at("iterations").get<std::int64_t>());
    if (doc.at("final_coverage").is_number())
        std::printf("%-16s %.4f\n", "final coverage",
                    doc.at("final_coverage").get<double>());
}

int run_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) usage_error("cannot open \"" + path + "\"");
    ordered_json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        usage_error("cannot parse \"" + path + "\": " + e.what());
    }
    if (doc.is_array()) {
        print_study_report(doc);
    } else if (doc.is_object() && doc.contains("posterior_mean")) {
        print_fit_report(doc);
    } else if (doc.is_object() && doc.contains("omega_hat")) {
        print_calibration_report(doc);
    } else {
        usage_error("unrecognized report shape in \"" + path + "\"");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model-free posterior inference for the AUC"};
    app.require_subcommand(1);
    app.set_version_flag("--version", agp_version());

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Gibbs posterior fit from a CSV file");
    fit_cmd->add_option("file", fit_args.file, "scores CSV (header: score,group)")
        ->required();
    fit_cmd->add_option("--prior", fit_args.prior, "flat | truncnorm:LOC,SCALE");
    fit_cmd->add_option("--omega", fit_args.omega, "calibrate | analytic | positive real");
    fit_cmd->add_option("--alpha", fit_args.alpha, "interval tail mass");
    fit_cmd->add_option("--seed", fit_args.seed, "bootstrap stream seed");
    fit_cmd->add_option("--B", fit_args.bootstrap_samples, "bootstrap resamples");
    fit_cmd->add_option("--epsilon", fit_args.epsilon, "calibration tolerance");
    fit_cmd->add_option("--kappa-exp", fit_args.kappa_exponent, "step-size exponent");
    fit_cmd->add_option("--max-iter", fit_args.max_iterations, "calibration cap");

    CalibrateArgs cal_args;
    auto* cal_cmd = app.add_subcommand("calibrate", "Bootstrap learning-rate calibration");
    cal_cmd->add_option("file", cal_args.file, "scores CSV")->required();
    cal_cmd->add_option("--B", cal_args.bootstrap_samples, "bootstrap resamples");
    cal_cmd->add_option("--epsilon", cal_args.epsilon, "stopping tolerance");
    cal_cmd->add_option("--kappa-exp", cal_args.kappa_exponent, "step-size exponent");
    cal_cmd->add_option("--max-iter", cal_args.max_iterations, "iteration cap");
    cal_cmd->add_option("--alpha", cal_args.alpha, "target tail mass");
    cal_cmd->add_option("--seed", cal_args.seed, "bootstrap stream seed");

    BrlArgs brl_args;
    auto* brl_cmd = app.add_subcommand("brl", "Rank-likelihood sampler summary");
    brl_cmd->add_option("file", brl_args.file, "scores CSV")->required();
    brl_cmd->add_option("--samples", brl_args.samples, "total Gibbs sweeps");
    brl_cmd->add_option("--burnin", brl_args.burnin, "burn-in sweeps");
    brl_cmd->add_option("--thin", brl_args.thin, "thinning stride");
    brl_cmd->add_option("--init", brl_args.init, "custom start A,B2");
    brl_cmd->add_option("--alpha", brl_args.alpha, "interval tail mass");
    brl_cmd->add_option("--seed", brl_args.seed, "chain seed");
    brl_cmd->add_flag("--check-ranks", brl_args.check_ranks,
                      "re-verify the rank invariant each sweep");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Replication study over a scenario");
    sim_cmd->add_option("--scenario", sim_args.scenario, "scenario id 1..4")->required();
    sim_cmd->add_option("--n-grid", sim_args.n_grid, "group sizes (m = n)")
        ->delimiter(',');
    auto* sim_reps = sim_cmd->add_option("--reps", sim_args.reps, "replications per cell");
    sim_cmd->add_option("--method", sim_args.method, "gibbs | brl");
    sim_cmd->add_option("--alpha", sim_args.alpha, "interval tail mass");
    sim_cmd->add_option("--seed", sim_args.seed, "study master seed");
    auto* sim_b = sim_cmd->add_option("--B", sim_args.bootstrap_samples,
                                      "bootstrap resamples per replication");
    auto* sim_samples = sim_cmd->add_option("--samples", sim_args.brl_samples,
                                            "BRL sweeps per replication");
    sim_cmd->add_option("--burnin", sim_args.brl_burnin, "BRL burn-in")->needs(sim_samples);
    sim_cmd->add_flag("--full", sim_args.full, "paper-scale defaults (1000 reps, B=1000)");

    OmegaStudyArgs om_args;
    auto* om_cmd = app.add_subcommand("omega-study",
                                      "Calibrated vs oracle learning rates, CSV output");
    om_cmd->add_option("--scenario", om_args.scenario, "scenario id 1..4")->required();
    om_cmd->add_option("--n-grid", om_args.n_grid, "group sizes (m = n)")->delimiter(',');
    auto* om_reps = om_cmd->add_option("--reps", om_args.reps, "calibrations per n");
    auto* om_b = om_cmd->add_option("--B", om_args.bootstrap_samples,
                                    "bootstrap resamples per calibration");
    auto* om_oracle =
        om_cmd->add_option("--oracle-reps", om_args.oracle_reps, "oracle Monte Carlo size");
    om_cmd->add_option("--alpha", om_args.alpha, "target tail mass");
    om_cmd->add_option("--seed", om_args.seed, "study master seed");
    om_cmd->add_flag("--full", om_args.full, "paper-scale defaults");

    std::string report_file;
    auto* rep_cmd = app.add_subcommand("report", "Render a JSON result as aligned text");
    rep_cmd->add_option("file", report_file, "JSON produced by another subcommand")
        ->required();

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

    if (*fit_cmd) return run_fit(fit_args);
    if (*cal_cmd) return run_calibrate(cal_args);
    if (*brl_cmd) return run_brl(brl_args);
    if (*sim_cmd)
        return run_simulate(sim_args, sim_reps->count() > 0, sim_b->count() > 0,
                            sim_samples->count() > 0);
    if (*om_cmd)
        return run_omega_study(om_args, om_reps->count() > 0, om_b->count() > 0,
                               om_oracle->count() > 0);
    if (*rep_cmd) return run_report(report_file);
    return 2;  // unreachable: require_subcommand(1)
}
