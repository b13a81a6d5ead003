// Tests for the C ABI layer: handle lifecycle, error mapping, and
// agreement across entry points that share a code path.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "aucgibbs.h"
#include "doctest.h"

namespace {

// Matches tests/fixtures/synthetic.csv: theta_hat = 21/24 and the
// variance-matching rate works out to 720/79 (hand-reduced fractions).
const std::vector<double> kGroup1{2.1, 1.3, 0.8, 1.7, 2.6, 0.4};
const std::vector<double> kGroup0{0.5, -0.3, 1.1, 0.1};
constexpr double kMannWhitney = 0.875;
constexpr double kAnalyticRate = 720.0 / 79.0;

struct ScoresHandle {
    agp_scores* ptr = nullptr;
    ~ScoresHandle() { agp_scores_free(ptr); }
};

ScoresHandle make_fixture_scores() {
    ScoresHandle h;
    REQUIRE(agp_scores_create(kGroup1.data(), kGroup1.size(), kGroup0.data(),
                              kGroup0.size(), &h.ptr) == AGP_OK);
    return h;
}

std::string fixture_path(const char* name) {
    return std::string(CAPI_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("version and status strings") {
    REQUIRE(agp_version() != nullptr);
    CHECK(std::strlen(agp_version()) > 0);

    const agp_status all[] = {AGP_OK,           AGP_ERR_INVALID, AGP_ERR_TIES,
                              AGP_ERR_DEGENERATE, AGP_ERR_VARIANCE, AGP_ERR_IO,
                              AGP_ERR_INTERNAL};
    for (agp_status s : all) {
        REQUIRE(agp_strerror(s) != nullptr);
        CHECK(std::strlen(agp_strerror(s)) > 0);
    }
    CHECK(std::string(agp_strerror(AGP_OK)) != agp_strerror(AGP_ERR_TIES));
}

TEST_CASE("scores lifecycle and accessors") {
    auto h = make_fixture_scores();
    CHECK(agp_scores_m(h.ptr) == 6);
    CHECK(agp_scores_n(h.ptr) == 4);

    double mw = 0.0;
    REQUIRE(agp_mann_whitney(h.ptr, &mw) == AGP_OK);
    CHECK(mw == kMannWhitney);  // 21/24 is dyadic, so exact

    agp_scores_free(nullptr);  // must be a harmless no-op
}

TEST_CASE("scores creation rejects bad input") {
    agp_scores* out = nullptr;

    CHECK(agp_scores_create(nullptr, 2, kGroup0.data(), 2, &out) == AGP_ERR_INVALID);
    CHECK(out == nullptr);
    CHECK(std::strlen(agp_last_error()) > 0);

    CHECK(agp_scores_create(kGroup1.data(), 6, kGroup0.data(), 4, nullptr) ==
          AGP_ERR_INVALID);

    // fewer than two scores in a group
    CHECK(agp_scores_create(kGroup1.data(), 1, kGroup0.data(), 4, &out) ==
          AGP_ERR_INVALID);
    CHECK(agp_scores_create(kGroup1.data(), 6, kGroup0.data(), 0, &out) ==
          AGP_ERR_INVALID);

    const double bad[] = {1.0, std::nan("")};
    CHECK(agp_scores_create(bad, 2, kGroup0.data(), 4, &out) == AGP_ERR_INVALID);
    CHECK(out == nullptr);
}

TEST_CASE("csv text parsing") {
    agp_scores* scores = nullptr;
    REQUIRE(agp_scores_from_csv_text("score,group\n1.5,1\n2.5,1\n0.5,0\n-0.5,0\n",
                                     &scores) == AGP_OK);
    CHECK(agp_scores_m(scores) == 2);
    CHECK(agp_scores_n(scores) == 2);
    double mw = 0.0;
    REQUIRE(agp_mann_whitney(scores, &mw) == AGP_OK);
    CHECK(mw == 1.0);
    agp_scores_free(scores);

    scores = nullptr;
    CHECK(agp_scores_from_csv_text("score,group\n1,2\n2,1\n0,0\n1,0\n", &scores) ==
          AGP_ERR_INVALID);
    CHECK(scores == nullptr);
    CHECK(std::string(agp_last_error()).find("group") != std::string::npos);

    CHECK(agp_scores_from_csv_text(nullptr, &scores) == AGP_ERR_INVALID);
}

TEST_CASE("csv file reading and io errors") {
    agp_scores* scores = nullptr;
    const std::string path = fixture_path("synthetic.csv");
    REQUIRE(agp_scores_from_csv(path.c_str(), &scores) == AGP_OK);
    CHECK(agp_scores_m(scores) == 6);
    CHECK(agp_scores_n(scores) == 4);
    double mw = 0.0;
    REQUIRE(agp_mann_whitney(scores, &mw) == AGP_OK);
    CHECK(mw == kMannWhitney);
    agp_scores_free(scores);

    scores = nullptr;
    const std::string missing = fixture_path("no_such_file.csv");
    CHECK(agp_scores_from_csv(missing.c_str(), &scores) == AGP_ERR_IO);
    CHECK(scores == nullptr);
    CHECK(std::string(agp_last_error()).find("no_such_file.csv") != std::string::npos);
}

TEST_CASE("analytic rate and the variance failure mode") {
    auto h = make_fixture_scores();
    double rate = 0.0;
    REQUIRE(agp_analytic_rate(h.ptr, &rate) == AGP_OK);
    CHECK(rate == doctest::Approx(kAnalyticRate).epsilon(1e-12));

    // perfectly separated groups degenerate the plug-in variance
    const double hi[] = {2.0, 3.0};
    const double lo[] = {0.0, 1.0};
    ScoresHandle sep;
    REQUIRE(agp_scores_create(hi, 2, lo, 2, &sep.ptr) == AGP_OK);
    CHECK(agp_analytic_rate(sep.ptr, &rate) == AGP_ERR_VARIANCE);
    CHECK(std::string(agp_last_error()).find("nonpositive") != std::string::npos);

    CHECK(agp_analytic_rate(nullptr, &rate) == AGP_ERR_INVALID);
    CHECK(agp_analytic_rate(h.ptr, nullptr) == AGP_ERR_INVALID);
}

TEST_CASE("fit with a fixed learning rate") {
    auto h = make_fixture_scores();
    agp_fit_config cfg;
    agp_fit_config_init(&cfg);
    cfg.omega_mode = AGP_OMEGA_FIXED;
    cfg.omega = kAnalyticRate;

    agp_fit_result res;
    REQUIRE(agp_fit(h.ptr, &cfg, &res) == AGP_OK);
    CHECK(res.theta_hat == kMannWhitney);
    CHECK(res.omega == kAnalyticRate);
    CHECK(res.calibrated == 0);
    CHECK(res.converged == 1);
    CHECK(res.posterior_sd > 0.0);
    CHECK(res.posterior_mean > 0.0);
    CHECK(res.posterior_mean < 1.0);
    CHECK(res.ci_lower >= 0.0);
    CHECK(res.ci_upper <= 1.0);
    CHECK(res.ci_lower < res.posterior_mean);
    CHECK(res.posterior_mean < res.ci_upper);

    cfg.omega = 0.0;
    CHECK(agp_fit(h.ptr, &cfg, &res) == AGP_ERR_INVALID);
    cfg.omega = -1.0;
    CHECK(agp_fit(h.ptr, &cfg, &res) == AGP_ERR_INVALID);
}

TEST_CASE("fit modes agree where they share a code path") {
    auto h = make_fixture_scores();

    double rate = 0.0;
    REQUIRE(agp_analytic_rate(h.ptr, &rate) == AGP_OK);

    agp_fit_config fixed_cfg;
    agp_fit_config_init(&fixed_cfg);
    fixed_cfg.omega_mode = AGP_OMEGA_FIXED;
    fixed_cfg.omega = rate;
    agp_fit_result fixed_res;
    REQUIRE(agp_fit(h.ptr, &fixed_cfg, &fixed_res) == AGP_OK);

    agp_fit_config analytic_cfg;
    agp_fit_config_init(&analytic_cfg);
    analytic_cfg.omega_mode = AGP_OMEGA_ANALYTIC;
    agp_fit_result analytic_res;
    REQUIRE(agp_fit(h.ptr, &analytic_cfg, &analytic_res) == AGP_OK);

    CHECK(analytic_res.omega == fixed_res.omega);
    CHECK(analytic_res.posterior_mean == fixed_res.posterior_mean);
    CHECK(analytic_res.posterior_sd == fixed_res.posterior_sd);
    CHECK(analytic_res.ci_lower == fixed_res.ci_lower);
    CHECK(analytic_res.ci_upper == fixed_res.ci_upper);
    CHECK(analytic_res.calibrated == 0);

    // separated data: analytic mode surfaces the variance failure
    const double hi[] = {2.0, 3.0};
    const double lo[] = {0.0, 1.0};
    ScoresHandle sep;
    REQUIRE(agp_scores_create(hi, 2, lo, 2, &sep.ptr) == AGP_OK);
    CHECK(agp_fit(sep.ptr, &analytic_cfg, &analytic_res) == AGP_ERR_VARIANCE);
}

TEST_CASE("calibrated fit is deterministic and matches agp_calibrate") {
    auto h = make_fixture_scores();
    agp_fit_config cfg;
    agp_fit_config_init(&cfg);
    cfg.omega_mode = AGP_OMEGA_CALIBRATE;
    cfg.bootstrap_samples = 300;
    cfg.max_iterations = 200;
    cfg.seed = 2024;

    agp_fit_result first;
    agp_fit_result second;
    REQUIRE(agp_fit(h.ptr, &cfg, &first) == AGP_OK);
    REQUIRE(agp_fit(h.ptr, &cfg, &second) == AGP_OK);
    CHECK(first.calibrated == 1);
    CHECK(first.omega > 0.0);
    CHECK(first.omega == second.omega);
    CHECK(first.posterior_mean == second.posterior_mean);
    CHECK(first.ci_lower == second.ci_lower);
    CHECK(first.ci_upper == second.ci_upper);

    agp_calibration_result cal;
    REQUIRE(agp_calibrate(h.ptr, &cfg, &cal) == AGP_OK);
    CHECK(cal.omega_hat == first.omega);
    CHECK(cal.converged == first.converged);
    CHECK(cal.iterations >= 1);
    CHECK(cal.iterations <= cfg.max_iterations);

    // the summary's final coverage is the last trace row
    std::vector<double> omegas(static_cast<std::size_t>(cfg.max_iterations));
    std::vector<double> coverages(omegas.size());
    std::vector<double> deltas(omegas.size());
    std::size_t count = 0;
    REQUIRE(agp_calibrate_iterates(h.ptr, &cfg, omegas.size(), omegas.data(),
                                   coverages.data(), deltas.data(), &count) == AGP_OK);
    REQUIRE(count == static_cast<std::size_t>(cal.iterations));
    CHECK(coverages[count - 1] == cal.final_coverage);
    for (std::size_t i = 0; i < count; ++i) {
        CHECK(omegas[i] > 0.0);
        CHECK(coverages[i] >= 0.0);
        CHECK(coverages[i] <= 1.0);
        CHECK(deltas[i] == doctest::Approx(coverages[i] - (1.0 - cfg.alpha))
                               .epsilon(1e-15));
    }

    // trace columns are individually optional
    std::size_t count_again = 0;
    REQUIRE(agp_calibrate_iterates(h.ptr, &cfg, omegas.size(), nullptr, nullptr,
                                   nullptr, &count_again) == AGP_OK);
    CHECK(count_again == count);

    // truncated capacity writes only the first rows
    std::vector<double> head(2, -1.0);
    std::size_t head_count = 0;
    REQUIRE(agp_calibrate_iterates(h.ptr, &cfg, 2, head.data(), nullptr, nullptr,
                                   &head_count) == AGP_OK);
    CHECK(head_count == 2);
    CHECK(head[0] == omegas[0]);
    CHECK(head[1] == omegas[1]);

    cfg.seed = 2025;
    agp_fit_result other_seed;
    REQUIRE(agp_fit(h.ptr, &cfg, &other_seed) == AGP_OK);
    CHECK(other_seed.omega != first.omega);
}

TEST_CASE("calibration with a zero iteration cap reports no coverage") {
    auto h = make_fixture_scores();
    agp_fit_config cfg;
    agp_fit_config_init(&cfg);
    cfg.max_iterations = 0;

    agp_calibration_result cal;
    REQUIRE(agp_calibrate(h.ptr, &cfg, &cal) == AGP_OK);
    CHECK(cal.iterations == 0);
    CHECK(cal.converged == 0);
    CHECK(std::isnan(cal.final_coverage));
}

TEST_CASE("fit argument validation") {
    auto h = make_fixture_scores();
    agp_fit_config cfg;
    agp_fit_config_init(&cfg);
    agp_fit_result res;

    CHECK(agp_fit(nullptr, &cfg, &res) == AGP_ERR_INVALID);
    CHECK(agp_fit(h.ptr, nullptr, &res) == AGP_ERR_INVALID);
    CHECK(agp_fit(h.ptr, &cfg, nullptr) == AGP_ERR_INVALID);

    cfg.alpha = 1.0;
    CHECK(agp_fit(h.ptr, &cfg, &res) == AGP_ERR_INVALID);
    agp_fit_config_init(&cfg);
    cfg.omega_mode = 99;
    CHECK(agp_fit(h.ptr, &cfg, &res) == AGP_ERR_INVALID);
}

TEST_CASE("brl fit accounting and determinism") {
    const std::vector<double> u{2.1, 1.3, 0.8, 1.7, 2.6, 0.4, 3.3, 1.9};
    const std::vector<double> v{0.5, -0.3, 1.1, 0.1, -0.9, 0.7};
    ScoresHandle h;
    REQUIRE(agp_scores_create(u.data(), u.size(), v.data(), v.size(), &h.ptr) == AGP_OK);

    agp_brl_config cfg;
    agp_brl_config_init(&cfg);
    cfg.n_samples = 2000;
    cfg.burn_in = 500;
    cfg.thin = 3;
    cfg.seed = 7;

    agp_brl_result res;
    REQUIRE(agp_brl_fit(h.ptr, &cfg, &res) == AGP_OK);
    CHECK(res.kept_draws == 500);  // floor((2000 - 500) / 3)
    CHECK(res.posterior_mean > 0.0);
    CHECK(res.posterior_mean < 1.0);
    CHECK(res.posterior_sd > 0.0);
    CHECK(res.ci_lower >= 0.0);
    CHECK(res.ci_upper <= 1.0);
    CHECK(res.ci_lower < res.ci_upper);

    agp_brl_result replay;
    REQUIRE(agp_brl_fit(h.ptr, &cfg, &replay) == AGP_OK);
    CHECK(replay.posterior_mean == res.posterior_mean);
    CHECK(replay.ci_lower == res.ci_lower);
    CHECK(replay.ci_upper == res.ci_upper);

    cfg.custom_init = 1;
    cfg.a0 = 1.0;
    cfg.b20 = 0.0;
    CHECK(agp_brl_fit(h.ptr, &cfg, &res) == AGP_ERR_INVALID);
    cfg.b20 = 2.0;
    REQUIRE(agp_brl_fit(h.ptr, &cfg, &res) == AGP_OK);
    CHECK(res.kept_draws == 500);
}

TEST_CASE("brl fit rejects ties") {
    const double u[] = {1.0, 1.0, 2.0};
    const double v[] = {-1.0, -2.0};
    ScoresHandle h;
    REQUIRE(agp_scores_create(u, 3, v, 2, &h.ptr) == AGP_OK);

    agp_brl_config cfg;
    agp_brl_config_init(&cfg);
    cfg.n_samples = 100;
    cfg.burn_in = 10;
    agp_brl_result res;
    CHECK(agp_brl_fit(h.ptr, &cfg, &res) == AGP_ERR_TIES);
    CHECK(std::string(agp_last_error()).find("ties") != std::string::npos);
}

TEST_CASE("true auc lookups") {
    double value = 0.0;
    REQUIRE(agp_true_auc(1, &value) == AGP_OK);
    CHECK(std::llround(value * 1e4) == 9214);
    REQUIRE(agp_true_auc(2, &value) == AGP_OK);
    CHECK(std::llround(value * 1e4) == 9665);
    REQUIRE(agp_true_auc(3, &value) == AGP_OK);
    CHECK(std::llround(value * 1e4) == 8185);
    REQUIRE(agp_true_auc(4, &value) == AGP_OK);
    CHECK(std::llround(value * 1e4) == 7895);

    CHECK(agp_true_auc(0, &value) == AGP_ERR_INVALID);
    CHECK(agp_true_auc(5, &value) == AGP_ERR_INVALID);
    CHECK(agp_true_auc(1, nullptr) == AGP_ERR_INVALID);
}

TEST_CASE("study smoke runs for both arms") {
    const std::int64_t grid[] = {12};
    agp_fit_config fit_cfg;
    agp_fit_config_init(&fit_cfg);
    fit_cfg.bootstrap_samples = 100;
    fit_cfg.max_iterations = 30;
    fit_cfg.seed = 11;
    agp_brl_config brl_cfg;
    agp_brl_config_init(&brl_cfg);
    brl_cfg.n_samples = 400;
    brl_cfg.burn_in = 100;

    agp_study_row row;
    REQUIRE(agp_run_study(1, grid, 1, AGP_METHOD_GIBBS, 3, &fit_cfg, &brl_cfg, &row) ==
            AGP_OK);
    CHECK(row.scenario == 1);
    CHECK(row.n == 12);
    CHECK(row.method == AGP_METHOD_GIBBS);
    CHECK(row.replications == 3);
    CHECK(row.seed == 11);
    CHECK(row.avg_posterior_sd > 0.0);
    CHECK(row.mean_ci_length > 0.0);
    CHECK(row.coverage >= 0.0);
    CHECK(row.coverage <= 1.0);

    agp_study_row brl_row;
    REQUIRE(agp_run_study(4, grid, 1, AGP_METHOD_BRL, 2, &fit_cfg, &brl_cfg,
                          &brl_row) == AGP_OK);
    CHECK(brl_row.method == AGP_METHOD_BRL);
    CHECK(brl_row.replications == 2);
    CHECK(brl_row.avg_posterior_sd > 0.0);

    CHECK(agp_run_study(1, grid, 1, AGP_METHOD_GIBBS, 0, &fit_cfg, &brl_cfg, &row) ==
          AGP_ERR_INVALID);
    CHECK(agp_run_study(9, grid, 1, AGP_METHOD_GIBBS, 2, &fit_cfg, &brl_cfg, &row) ==
          AGP_ERR_INVALID);
    CHECK(agp_run_study(1, nullptr, 1, AGP_METHOD_GIBBS, 2, &fit_cfg, &brl_cfg, &row) ==
          AGP_ERR_INVALID);
    REQUIRE(agp_run_study(1, grid, 0, AGP_METHOD_GIBBS, 2, &fit_cfg, &brl_cfg,
                          nullptr) == AGP_OK);  // empty grid is a no-op
}

TEST_CASE("omega study smoke") {
    const std::int64_t grid[] = {10};
    agp_fit_config fit_cfg;
    agp_fit_config_init(&fit_cfg);
    fit_cfg.bootstrap_samples = 120;
    fit_cfg.max_iterations = 25;
    fit_cfg.seed = 5;

    double omega_hats[2] = {0.0, 0.0};
    double oracle = 0.0;
    REQUIRE(agp_omega_study(1, grid, 1, 2, &fit_cfg, 600, omega_hats, &oracle) ==
            AGP_OK);
    CHECK(omega_hats[0] > 0.0);
    CHECK(omega_hats[1] > 0.0);
    CHECK(std::isfinite(omega_hats[0]));
    CHECK(std::isfinite(omega_hats[1]));
    CHECK(oracle > 0.0);

    // below the Monte Carlo granularity floor for the oracle rate
    CHECK(agp_omega_study(1, grid, 1, 2, &fit_cfg, 300, omega_hats, &oracle) ==
          AGP_ERR_INVALID);
    CHECK(agp_omega_study(1, grid, 1, 0, &fit_cfg, 600, omega_hats, &oracle) ==
          AGP_ERR_INVALID);
}
