#include "core/brl.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"
#include "core/normal.hpp"
#include "core/ranks.hpp"
#include "core/truncated_normal.hpp"

namespace aucgibbs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double binormal_auc(double a, double b2) {
    if (!(b2 > 0.0)) throw std::invalid_argument("binormal_auc: b2 must be positive");
    return norm_cdf(a / std::sqrt(b2 + 1.0));
}

BrlChain::BrlChain(const ScoreData& data, const BrlConfig& cfg, RngStream rng)
    : m_(data.m()), n_(data.n()), rng_(rng) {
    if (cfg.n_samples < 1) throw std::invalid_argument("brl: n_samples must be >= 1");
    if (cfg.burn_in < 0 || cfg.burn_in >= cfg.n_samples)
        throw std::invalid_argument("brl: burn_in must lie in [0, n_samples)");
    if (cfg.thin < 1) throw std::invalid_argument("brl: thin must be >= 1");

    std::vector<double> all(data.u);
    all.insert(all.end(), data.v.begin(), data.v.end());
    rank_ = ranks(all);  // throws on ties

    // Normal-scores start: the coordinate holding target rank r begins at
    // norm_quantile((r - 0.5)/(m+n)), which satisfies the rank constraint
    // by construction.
    const std::int64_t total = m_ + n_;
    value_at_rank_.assign(static_cast<std::size_t>(total) + 1, 0.0);
    w_.resize(static_cast<std::size_t>(m_));
    z_.resize(static_cast<std::size_t>(n_));
    for (std::int64_t k = 0; k < total; ++k) {
        const int r = rank_[static_cast<std::size_t>(k)];
        const double val =
            norm_quantile((r - 0.5) / static_cast<double>(total));
        value_at_rank_[static_cast<std::size_t>(r)] = val;
        if (k < m_)
            w_[static_cast<std::size_t>(k)] = val;
        else
            z_[static_cast<std::size_t>(k - m_)] = val;
    }

    if (cfg.custom_init) {
        if (!(cfg.b20 > 0.0)) throw std::invalid_argument("brl: initial b2 must be positive");
        a_ = cfg.a0;
        b2_ = cfg.b20;
    } else {
        double mean = 0.0;
        for (double x : w_) mean += x;
        mean /= static_cast<double>(m_);
        double ss = 0.0;
        for (double x : w_) ss += (x - mean) * (x - mean);
        a_ = mean;
        b2_ = std::max(ss / static_cast<double>(m_ - 1), 1e-6);
    }
}

std::pair<double, double> BrlChain::rank_interval(bool is_w, std::int64_t index) const {
    const std::int64_t total = m_ + n_;
    const std::int64_t coord = is_w ? index : m_ + index;
    if (index < 0 || coord >= total)
        throw std::invalid_argument("rank_interval: coordinate out of range");
    const int r = rank_[static_cast<std::size_t>(coord)];
    const double lo = r > 1 ? value_at_rank_[static_cast<std::size_t>(r - 1)] : -kInf;
    const double hi =
        r < total ? value_at_rank_[static_cast<std::size_t>(r + 1)] : kInf;
    return {lo, hi};
}

void BrlChain::update_latent(bool is_w, std::int64_t index) {
    const auto [lo, hi] = rank_interval(is_w, index);
    const double loc = is_w ? a_ : 0.0;
    const double sc = is_w ? std::sqrt(b2_) : 1.0;
    double draw;
    try {
        draw = truncnorm_sample(TruncatedNormal(loc, sc, lo, hi), rng_);
    } catch (const DegenerateIntervalError& e) {
        const std::int64_t coord = is_w ? index : m_ + index;
        throw DegenerateIntervalError(
            std::string("brl sweep: degenerate truncation at latent coordinate ") +
                std::to_string(coord) + " (" + e.what() + ")",
            coord);
    }
    const int r = rank_[static_cast<std::size_t>(is_w ? index : m_ + index)];
    value_at_rank_[static_cast<std::size_t>(r)] = draw;
    if (is_w)
        w_[static_cast<std::size_t>(index)] = draw;
    else
        z_[static_cast<std::size_t>(index)] = draw;
}

void BrlChain::sweep() {
    // a | rest ~ N(mean(W), b^2/m)
    double mean_w = 0.0;
    for (double x : w_) mean_w += x;
    mean_w /= static_cast<double>(m_);
    a_ = mean_w + std::sqrt(b2_ / static_cast<double>(m_)) * rng_.normal();

    // b^2 | rest ~ InvGamma((m-1)/2, sum(W_i - a)^2 / 2), density
    // proportional to x^{-shape-1} e^{-rate/x}; drawn as rate/Gamma(shape).
    double ss = 0.0;
    for (double x : w_) ss += (x - a_) * (x - a_);
    const double shape = 0.5 * static_cast<double>(m_ - 1);
    const double rate = std::max(0.5 * ss, std::numeric_limits<double>::min());
    b2_ = rate / rng_.gamma(shape);

    for (std::int64_t i = 0; i < m_; ++i) update_latent(true, i);
    for (std::int64_t j = 0; j < n_; ++j) update_latent(false, j);
}

bool BrlChain::ranks_consistent() const {
    for (std::size_t r = 2; r < value_at_rank_.size(); ++r)
        if (!(value_at_rank_[r - 1] < value_at_rank_[r])) return false;
    return true;
}

std::vector<BrlDraw> brl_run(const ScoreData& data, const BrlConfig& cfg, RngStream rng) {
    BrlChain chain(data, cfg, rng);
    std::vector<BrlDraw> draws;
    draws.reserve(static_cast<std::size_t>((cfg.n_samples - cfg.burn_in) / cfg.thin));
    for (std::int64_t t = 1; t <= cfg.n_samples; ++t) {
        chain.sweep();
        if (cfg.check_ranks && !chain.ranks_consistent())
            throw std::runtime_error("brl: rank invariant violated after sweep " +
                                     std::to_string(t));
        if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.thin == 0)
            draws.push_back({chain.a(), chain.b2(), binormal_auc(chain.a(), chain.b2())});
    }
    return draws;
}

}  // namespace aucgibbs
