#include "ranksel/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ranksel {

LabeledSample::LabeledSample(std::vector<std::uint8_t> l, std::vector<double> v)
    : labels(std::move(l)), values(std::move(v)) {
    if (labels.empty()) throw std::invalid_argument("LabeledSample: need n >= 1");
    if (labels.size() != values.size())
        throw std::invalid_argument("LabeledSample: labels and values lengths differ");
    for (std::uint8_t x : labels)
        if (x > 1) throw std::invalid_argument("LabeledSample: labels must be 0 or 1");
}

GroupCounts group_counts(const LabeledSample& sample) {
    GroupCounts gc;
    gc.n = static_cast<int>(sample.size());
    for (std::uint8_t x : sample.labels) gc.n1 += x;
    gc.n0 = gc.n - gc.n1;
    return gc;
}

RankPermutation rank_values(std::span<const double> values, RandomStream& tie_stream) {
    const std::size_t n = values.size();
    if (n == 0) throw std::invalid_argument("rank_values: empty input");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("rank_values: non-finite value");

    RankPermutation perm;
    perm.order.resize(n);
    std::iota(perm.order.begin(), perm.order.end(), 0);
    std::stable_sort(perm.order.begin(), perm.order.end(),
                     [&](std::int32_t a, std::int32_t b) { return values[a] < values[b]; });

    // Randomize each run of exactly equal values.
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[perm.order[j]] == values[perm.order[i]]) ++j;
        if (j - i > 1) {
            for (std::size_t k = j - i; k > 1; --k) {
                const std::size_t r = static_cast<std::size_t>(tie_stream.uniform_int(k));
                std::swap(perm.order[i + k - 1], perm.order[i + r]);
            }
            perm.tie_groups.emplace_back(perm.order.begin() + static_cast<std::ptrdiff_t>(i),
                                         perm.order.begin() + static_cast<std::ptrdiff_t>(j));
        }
        i = j;
    }

    perm.rank.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        perm.rank[perm.order[k]] = static_cast<std::int32_t>(k) + 1;
    return perm;
}

int jump_count(std::span<const std::uint8_t> x) {
    int jumps = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] != x[i - 1]) ++jumps;
    return jumps;
}

}  // namespace ranksel
