#include "aucgibbs.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/auc.hpp"
#include "core/brl.hpp"
#include "core/calibrate.hpp"
#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/gibbs.hpp"
#include "core/rng.hpp"
#include "core/scenarios.hpp"
#include "core/study.hpp"

struct agp_scores {
    aucgibbs::ScoreData data;
};

namespace {

thread_local std::string g_last_error;

void set_last_error(const char* msg) { g_last_error = msg; }

/// Run `fn` and translate any escaping exception into a status code.
/// The most specific library types are matched first; TiesError derives
/// from invalid_argument and the variance/degenerate/io types from
/// runtime_error, so ordering here is load-bearing.
template <typename Fn>
agp_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return AGP_OK;
    } catch (const aucgibbs::TiesError& e) {
        g_last_error = e.what();
        return AGP_ERR_TIES;
    } catch (const aucgibbs::DegenerateIntervalError& e) {
        g_last_error = e.what();
        return AGP_ERR_DEGENERATE;
    } catch (const aucgibbs::NonpositiveVarianceError& e) {
        g_last_error = e.what();
        return AGP_ERR_VARIANCE;
    } catch (const aucgibbs::IoError& e) {
        g_last_error = e.what();
        return AGP_ERR_IO;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return AGP_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AGP_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return AGP_ERR_INTERNAL;
    }
}

agp_status require(bool ok, const char* msg) {
    if (!ok) set_last_error(msg);
    return ok ? AGP_OK : AGP_ERR_INVALID;
}

aucgibbs::Prior prior_from(const agp_fit_config& cfg) {
    return cfg.prior_scale > 0.0
               ? aucgibbs::Prior::truncated_normal(cfg.prior_location, cfg.prior_scale)
               : aucgibbs::Prior::flat();
}

aucgibbs::CalibrationConfig calibration_from(const agp_fit_config& cfg) {
    aucgibbs::CalibrationConfig cc;
    cc.bootstrap_samples = cfg.bootstrap_samples;
    cc.alpha = cfg.alpha;
    cc.epsilon = cfg.epsilon;
    cc.kappa_exponent = cfg.kappa_exponent;
    cc.max_iterations = cfg.max_iterations;
    cc.seed = cfg.seed;
    return cc;
}

aucgibbs::BrlConfig brl_from(const agp_brl_config& cfg) {
    aucgibbs::BrlConfig bc;
    bc.n_samples = cfg.n_samples;
    bc.burn_in = cfg.burn_in;
    bc.thin = cfg.thin;
    bc.check_ranks = cfg.check_ranks != 0;
    bc.custom_init = cfg.custom_init != 0;
    bc.a0 = cfg.a0;
    bc.b20 = cfg.b20;
    return bc;
}

struct BrlSummary {
    double mean;
    double sd;
    double lower;
    double upper;
    std::int64_t kept;
};

BrlSummary summarize_brl(const aucgibbs::ScoreData& data, const aucgibbs::BrlConfig& cfg,
                         double alpha, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("brl: alpha must lie in (0,1)");
    const auto draws = aucgibbs::brl_run(data, cfg, aucgibbs::RngStream(seed, 0));
    if (draws.size() < 2)
        throw std::invalid_argument("brl: need at least 2 kept draws for a summary");
    std::vector<double> auc;
    auc.reserve(draws.size());
    for (const auto& d : draws) auc.push_back(d.auc);
    double mean = 0.0;
    for (double x : auc) mean += x;
    mean /= static_cast<double>(auc.size());
    double ss = 0.0;
    for (double x : auc) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(auc.size() - 1)),
            aucgibbs::sample_quantile(auc, 0.5 * alpha),
            aucgibbs::sample_quantile(auc, 1.0 - 0.5 * alpha),
            static_cast<std::int64_t>(auc.size())};
}

}  // namespace

extern "C" {

const char* agp_strerror(agp_status status) {
    switch (status) {
        case AGP_OK: return "ok";
        case AGP_ERR_INVALID: return "invalid argument";
        case AGP_ERR_TIES: return "tied scores";
        case AGP_ERR_DEGENERATE: return "degenerate interval";
        case AGP_ERR_VARIANCE: return "nonpositive variance estimate";
        case AGP_ERR_IO: return "i/o failure";
        case AGP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* agp_last_error(void) { return g_last_error.c_str(); }

const char* agp_version(void) { return "1.0.0"; }

agp_status agp_scores_create(const double* group1, size_t m, const double* group0,
                             size_t n, agp_scores** out) {
    if (agp_status s = require(out && group1 && group0, "agp_scores_create: null pointer");
        s != AGP_OK)
        return s;
    return guarded([&] {
        *out = new agp_scores{aucgibbs::ScoreData(std::vector<double>(group1, group1 + m),
                                                  std::vector<double>(group0, group0 + n))};
    });
}

agp_status agp_scores_from_csv(const char* path, agp_scores** out) {
    if (agp_status s = require(out && path, "agp_scores_from_csv: null pointer");
        s != AGP_OK)
        return s;
    return guarded([&] { *out = new agp_scores{aucgibbs::read_scores_csv(path)}; });
}

agp_status agp_scores_from_csv_text(const char* text, agp_scores** out) {
    if (agp_status s = require(out && text, "agp_scores_from_csv_text: null pointer");
        s != AGP_OK)
        return s;
    return guarded([&] { *out = new agp_scores{aucgibbs::parse_scores_csv(text)}; });
}

void agp_scores_free(agp_scores* scores) { delete scores; }

size_t agp_scores_m(const agp_scores* scores) {
    return scores ? scores->data.u.size() : 0;
}

size_t agp_scores_n(const agp_scores* scores) {
    return scores ? scores->data.v.size() : 0;
}

agp_status agp_mann_whitney(const agp_scores* scores, double* out) {
    if (agp_status s = require(scores && out, "agp_mann_whitney: null pointer"); s != AGP_OK)
        return s;
    return guarded([&] { *out = aucgibbs::mann_whitney(scores->data); });
}

agp_status agp_analytic_rate(const agp_scores* scores, double* out) {
    if (agp_status s = require(scores && out, "agp_analytic_rate: null pointer"); s != AGP_OK)
        return s;
    return guarded([&] { *out = aucgibbs::analytic_learning_rate(scores->data); });
}

void agp_fit_config_init(agp_fit_config* cfg) {
    if (!cfg) return;
    cfg->omega_mode = AGP_OMEGA_CALIBRATE;
    cfg->omega = 0.0;
    cfg->alpha = 0.05;
    cfg->prior_location = 0.0;
    cfg->prior_scale = 0.0;
    cfg->seed = 0;
    cfg->bootstrap_samples = 1000;
    cfg->max_iterations = 1000;
    cfg->epsilon = 0.01;
    cfg->kappa_exponent = 0.51;
}

agp_status agp_fit(const agp_scores* scores, const agp_fit_config* cfg,
                   agp_fit_result* out) {
    if (agp_status s = require(scores && cfg && out, "agp_fit: null pointer"); s != AGP_OK)
        return s;
    return guarded([&] {
        const aucgibbs::Prior prior = prior_from(*cfg);
        double omega = 0.0;
        int calibrated = 0, converged = 1;
        switch (cfg->omega_mode) {
            case AGP_OMEGA_FIXED:
                if (!(cfg->omega > 0.0))
                    throw std::invalid_argument("agp_fit: fixed omega must be > 0");
                omega = cfg->omega;
                break;
            case AGP_OMEGA_ANALYTIC:
                omega = aucgibbs::analytic_learning_rate(scores->data);
                break;
            case AGP_OMEGA_CALIBRATE: {
                const aucgibbs::CalibrationTrace trace =
                    aucgibbs::calibrate(scores->data, prior, calibration_from(*cfg));
                omega = trace.omega_hat;
                calibrated = 1;
                converged = trace.converged ? 1 : 0;
                break;
            }
            default:
                throw std::invalid_argument("agp_fit: unknown omega_mode");
        }
        const aucgibbs::GibbsPosterior post =
            aucgibbs::build_posterior(scores->data, prior, omega);
        const aucgibbs::Moments mom = aucgibbs::posterior_moments(post);
        const aucgibbs::CredibleInterval ci = aucgibbs::hpd_interval(post, cfg->alpha);
        out->theta_hat = post.theta_hat;
        out->posterior_mean = mom.mean;
        out->posterior_sd = std::sqrt(mom.variance);
        out->ci_lower = ci.lower;
        out->ci_upper = ci.upper;
        out->omega = omega;
        out->calibrated = calibrated;
        out->converged = converged;
    });
}

agp_status agp_calibrate(const agp_scores* scores, const agp_fit_config* cfg,
                         agp_calibration_result* out) {
    if (agp_status s = require(scores && cfg && out, "agp_calibrate: null pointer");
        s != AGP_OK)
        return s;
    return guarded([&] {
        const aucgibbs::CalibrationTrace trace =
            aucgibbs::calibrate(scores->data, prior_from(*cfg), calibration_from(*cfg));
        out->omega_hat = trace.omega_hat;
        out->converged = trace.converged ? 1 : 0;
        out->iterations = static_cast<std::int64_t>(trace.iterates.size());
        out->final_coverage = trace.iterates.empty()
                                  ? std::nan("")
                                  : trace.iterates.back().coverage;
    });
}

agp_status agp_calibrate_iterates(const agp_scores* scores, const agp_fit_config* cfg,
                                  size_t capacity, double* omegas, double* coverages,
                                  double* deltas, size_t* count) {
    if (agp_status s = require(scores && cfg && count, "agp_calibrate_iterates: null pointer");
        s != AGP_OK)
        return s;
    return guarded([&] {
        const aucgibbs::CalibrationTrace trace =
            aucgibbs::calibrate(scores->data, prior_from(*cfg), calibration_from(*cfg));
        const size_t n = trace.iterates.size() < capacity ? trace.iterates.size() : capacity;
        for (size_t i = 0; i < n; ++i) {
            if (omegas) omegas[i] = trace.iterates[i].omega;
            if (coverages) coverages[i] = trace.iterates[i].coverage;
            if (deltas) deltas[i] = trace.iterates[i].delta;
        }
        *count = n;
    });
}

void agp_brl_config_init(agp_brl_config* cfg) {
    if (!cfg) return;
    cfg->n_samples = 50000;
    cfg->burn_in = 10000;
    cfg->thin = 1;
    cfg->alpha = 0.05;
    cfg->seed = 0;
    cfg->check_ranks = 0;
    cfg->custom_init = 0;
    cfg->a0 = 0.0;
    cfg->b20 = 1.0;
}

agp_status agp_brl_fit(const agp_scores* scores, const agp_brl_config* cfg,
                       agp_brl_result* out) {
    if (agp_status s = require(scores && cfg && out, "agp_brl_fit: null pointer");
        s != AGP_OK)
        return s;
    return guarded([&] {
        const BrlSummary s =
            summarize_brl(scores->data, brl_from(*cfg), cfg->alpha, cfg->seed);
        out->posterior_mean = s.mean;
        out->posterior_sd = s.sd;
        out->ci_lower = s.lower;
        out->ci_upper = s.upper;
        out->kept_draws = s.kept;
    });
}

agp_status agp_true_auc(int scenario, double* out) {
    if (agp_status s = require(out != nullptr, "agp_true_auc: null pointer"); s != AGP_OK)
        return s;
    return guarded([&] { *out = aucgibbs::true_auc(aucgibbs::scenario_from_int(scenario)); });
}

agp_status agp_run_study(int scenario, const int64_t* n_grid, size_t n_count, int method,
                         int64_t replications, const agp_fit_config* fit_cfg,
                         const agp_brl_config* brl_cfg, agp_study_row* rows) {
    if (agp_status s = require(fit_cfg && brl_cfg && (n_count == 0 || (n_grid && rows)),
                               "agp_run_study: null pointer");
        s != AGP_OK)
        return s;
    return guarded([&] {
        if (method != AGP_METHOD_GIBBS && method != AGP_METHOD_BRL)
            throw std::invalid_argument("agp_run_study: unknown method");
        aucgibbs::StudyConfig cfg;
        cfg.method = method == AGP_METHOD_GIBBS ? aucgibbs::Method::Gibbs
                                                : aucgibbs::Method::Brl;
        cfg.replications = replications;
        cfg.alpha = fit_cfg->alpha;
        cfg.calibration = calibration_from(*fit_cfg);
        cfg.brl = brl_from(*brl_cfg);
        cfg.seed = fit_cfg->seed;
        const std::vector<std::int64_t> grid(n_grid, n_grid + n_count);
        const auto results =
            aucgibbs::run_study(aucgibbs::scenario_from_int(scenario), grid, cfg);
        if (results.size() != n_count)
            throw std::invalid_argument("agp_run_study: replications must be >= 1");
        for (size_t i = 0; i < n_count; ++i) {
            const auto& r = results[i];
            rows[i].scenario = static_cast<int>(r.scenario);
            rows[i].n = r.n;
            rows[i].method = r.method == aucgibbs::Method::Gibbs ? AGP_METHOD_GIBBS
                                                                 : AGP_METHOD_BRL;
            rows[i].bias = r.bias;
            rows[i].avg_posterior_sd = r.avg_posterior_sd;
            rows[i].mean_ci_length = r.mean_ci_length;
            rows[i].coverage = r.coverage;
            rows[i].replications = r.replications;
            rows[i].seed = r.seed;
        }
    });
}

agp_status agp_omega_study(int scenario, const int64_t* n_grid, size_t n_count,
                           int64_t replications, const agp_fit_config* fit_cfg,
                           int64_t oracle_mc_reps, double* omega_hats,
                           double* omega_oracles) {
    if (agp_status s = require(n_grid && fit_cfg && omega_hats && omega_oracles,
                               "agp_omega_study: null pointer");
        s != AGP_OK)
        return s;
    return guarded([&] {
        const std::vector<std::int64_t> grid(n_grid, n_grid + n_count);
        const auto rows = aucgibbs::omega_study(
            aucgibbs::scenario_from_int(scenario), grid, replications,
            calibration_from(*fit_cfg), oracle_mc_reps, fit_cfg->alpha, fit_cfg->seed);
        for (size_t i = 0; i < rows.size(); ++i) {
            omega_oracles[i] = rows[i].omega_oracle;
            for (size_t r = 0; r < rows[i].omega_hats.size(); ++r)
                omega_hats[i * static_cast<size_t>(replications) + r] =
                    rows[i].omega_hats[r];
        }
    });
}

}  // extern "C"
