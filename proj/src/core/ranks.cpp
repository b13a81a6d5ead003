#include "core/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/errors.hpp"

namespace aucgibbs {

std::vector<int> ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("ranks: values must be finite");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return x[i] < x[j]; });
    std::vector<int> r(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && x[order[k]] == x[order[k - 1]]) throw TiesError();
        r[order[k]] = static_cast<int>(k) + 1;
    }
    return r;
}

}  // namespace aucgibbs
