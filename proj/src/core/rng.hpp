#pragma once

#include <cstdint>
#include <initializer_list>

namespace aucgibbs {

/// Splittable deterministic RNG: xoshiro256++ seeded from
/// (master_seed, stream_id) through SplitMix64. Streams with equal ids
/// replay identically; distinct ids give statistically independent
/// sequences, so parallel replications can draw without coordination.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Child stream with an id derived by hashing (stream_id, key).
    /// Derivations are deterministic and collision-dispersed, so a tree of
    /// substreams can be rebuilt from the root seed alone.
    RngStream substream(std::uint64_t key) const;

    std::uint64_t next_u64();

    /// Uniform on the open interval (0,1): (x>>11 + 0.5) * 2^-53.
    double uniform_open01();

    /// Unbiased integer in [0, bound) via rejection; bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Standard normal by inverse-CDF of one open-uniform draw
    /// (rejection-free, so the consumption pattern is static).
    double normal();
    double normal(double mu, double sigma);

    /// Gamma(shape, 1) via Marsaglia-Tsang, with the boost for shape < 1.
    double gamma(double shape);

    /// SplitMix64 finalizer; exposed because stream-id derivation keys
    /// reuse it (e.g. hashing a (scenario, n, rep) tuple).
    static std::uint64_t mix64(std::uint64_t z) noexcept;

    /// Fold a list of parts into a stream id: repeated mix64 chaining.
    static std::uint64_t derive_id(std::initializer_list<std::uint64_t> parts) noexcept;

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t s_[4];
};

}  // namespace aucgibbs
