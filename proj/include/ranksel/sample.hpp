#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ranksel/rng.hpp"

namespace ranksel {

// One feature's paired observations: binary group labels and real values.
struct LabeledSample {
    std::vector<std::uint8_t> labels;
    std::vector<double> values;

    LabeledSample() = default;
    // Validates: equal nonzero lengths, labels in {0,1}.
    LabeledSample(std::vector<std::uint8_t> l, std::vector<double> v);

    std::size_t size() const { return labels.size(); }
};

struct GroupCounts {
    int n0 = 0;  // labels equal to 0
    int n1 = 0;  // labels equal to 1
    int n = 0;
};

GroupCounts group_counts(const LabeledSample& sample);

// Sorting permutation of the values, with exact ties broken uniformly at
// random so the permutation is unique, as it would be for continuous data.
struct RankPermutation {
    // order[k] = index of the k-th smallest value (0-based).
    std::vector<std::int32_t> order;
    // rank[i] = 1-based rank of values[i]; order[rank[i]-1] == i.
    std::vector<std::int32_t> rank;
    // Each run of exactly equal values, listed in the randomized order that
    // was applied. Empty when the values are distinct.
    std::vector<std::vector<std::int32_t>> tie_groups;
};

// Throws std::invalid_argument on empty input or non-finite values.
RankPermutation rank_values(std::span<const double> values, RandomStream& tie_stream);

// Number of positions i with x[i] != x[i+1].
int jump_count(std::span<const std::uint8_t> x);

}  // namespace ranksel
