#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/auc.hpp"
#include "core/rng.hpp"

namespace aucgibbs {

/// Chain controls. n_samples counts full Gibbs sweeps; draws after burn_in
/// are kept every thin-th sweep, so floor((n_samples - burn_in)/thin) are
/// recorded. Initialization is rank-consistent normal scores; custom_init
/// overrides only the starting (a, b^2).
struct BrlConfig {
    std::int64_t n_samples = 50000;
    std::int64_t burn_in = 10000;
    std::int64_t thin = 1;
    bool custom_init = false;
    double a0 = 0.0;
    double b20 = 1.0;
    bool check_ranks = false;  // re-verify the rank invariant after every sweep
};

struct BrlDraw {
    double a;
    double b2;
    double auc;
};

/// Binormal AUC Phi(a / sqrt(b^2 + 1)); requires b2 > 0.
double binormal_auc(double a, double b2);

/// Latent-score chain state. Invariant: the latent values listed in target
/// rank order are strictly increasing, i.e. ranks(concat(w, z)) equals the
/// ranks of the observed concat(u, v) after every coordinate update.
class BrlChain {
public:
    BrlChain(const ScoreData& data, const BrlConfig& cfg, RngStream rng);

    double a() const noexcept { return a_; }
    double b2() const noexcept { return b2_; }
    std::int64_t m() const noexcept { return m_; }
    std::int64_t n() const noexcept { return n_; }
    const std::vector<double>& w() const noexcept { return w_; }
    const std::vector<double>& z() const noexcept { return z_; }
    const std::vector<int>& rank_target() const noexcept { return rank_; }

    /// Open truncation interval for one latent coordinate: the values of
    /// the rank-neighbors below and above (+-infinity at the extremes).
    /// Coordinates are w[i] when is_w, else z[j].
    std::pair<double, double> rank_interval(bool is_w, std::int64_t index) const;

    /// One systematic sweep: a, then b^2, then every W_i, then every Z_j.
    /// Throws DegenerateIntervalError (with the coordinate) if a latent
    /// truncation interval has no representable interior.
    void sweep();

    /// True when the latent values, read in target rank order, are
    /// strictly increasing.
    bool ranks_consistent() const;

private:
    void update_latent(bool is_w, std::int64_t index);

    std::int64_t m_, n_;
    double a_, b2_;
    std::vector<double> w_, z_;
    std::vector<int> rank_;              // target rank of each coordinate, w first
    std::vector<double> value_at_rank_;  // latent value holding each rank (1-based)
    RngStream rng_;
};

/// Run the sampler on tie-free data and return the kept (a, b^2, auc)
/// draws. Throws std::invalid_argument on ties.
std::vector<BrlDraw> brl_run(const ScoreData& data, const BrlConfig& cfg, RngStream rng);

}  // namespace aucgibbs
