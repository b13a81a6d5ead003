#pragma once

#include <span>
#include <vector>

namespace aucgibbs {

/// 1-based ranks under strict ordering: result is a permutation of
/// 1..x.size() with x[i] < x[j] implying rank[i] < rank[j]. Tied values
/// are an error (the rank likelihood assumes continuous scores); callers
/// that want midranks or jitter must do so explicitly.
std::vector<int> ranks(std::span<const double> x);

}  // namespace aucgibbs
