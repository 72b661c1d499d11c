#include "ranksel/stats.hpp"

#include <stdexcept>

#include "ranksel/errors.hpp"

namespace ranksel {

double mann_whitney_u(const LabeledSample& sample, const RankPermutation& perm) {
    if (perm.rank.size() != sample.size())
        throw std::invalid_argument("mann_whitney_u: permutation size mismatch");
    const GroupCounts gc = group_counts(sample);
    if (gc.n0 == 0 || gc.n1 == 0)
        throw DegenerateGroupError("mann_whitney_u: a group is empty");
    std::int64_t rank_sum0 = 0;
    for (std::size_t i = 0; i < sample.size(); ++i)
        if (sample.labels[i] == 0) rank_sum0 += perm.rank[i];
    const std::int64_t n0 = gc.n0;
    return static_cast<double>(rank_sum0 - n0 * (n0 + 1) / 2);
}

double auc(const LabeledSample& sample, const RankPermutation& perm) {
    const GroupCounts gc = group_counts(sample);
    if (gc.n0 == 0 || gc.n1 == 0)
        throw DegenerateGroupError("auc: a group is empty");
    return mann_whitney_u(sample, perm) /
           (static_cast<double>(gc.n0) * static_cast<double>(gc.n1));
}

double xi_binary(const LabeledSample& sample, const RankPermutation& perm) {
    if (perm.order.size() != sample.size())
        throw std::invalid_argument("xi_binary: permutation size mismatch");
    const GroupCounts gc = group_counts(sample);
    if (gc.n0 == 0 || gc.n1 == 0) return 0.0;
    int tau = 0;
    std::uint8_t prev = sample.labels[perm.order[0]];
    for (std::size_t k = 1; k < sample.size(); ++k) {
        const std::uint8_t cur = sample.labels[perm.order[k]];
        tau += (cur != prev);
        prev = cur;
    }
    return 1.0 - static_cast<double>(gc.n) * tau /
                     (2.0 * static_cast<double>(gc.n0) * static_cast<double>(gc.n1));
}

double auc_of_ordered_labels(std::span<const std::uint8_t> ordered_labels) {
    const std::int64_t m = static_cast<std::int64_t>(ordered_labels.size());
    std::int64_t n1 = 0, rank_sum0 = 0;
    for (std::int64_t k = 0; k < m; ++k) {
        if (ordered_labels[static_cast<std::size_t>(k)])
            ++n1;
        else
            rank_sum0 += k + 1;
    }
    const std::int64_t n0 = m - n1;
    if (n0 == 0 || n1 == 0) return 0.5;
    const std::int64_t u = rank_sum0 - n0 * (n0 + 1) / 2;
    return static_cast<double>(u) / (static_cast<double>(n0) * static_cast<double>(n1));
}

double xi_of_ordered_labels(std::span<const std::uint8_t> ordered_labels) {
    const std::int64_t m = static_cast<std::int64_t>(ordered_labels.size());
    std::int64_t n1 = 0;
    int tau = 0;
    std::uint8_t prev = 0;
    for (std::int64_t k = 0; k < m; ++k) {
        const std::uint8_t cur = ordered_labels[static_cast<std::size_t>(k)];
        n1 += cur;
        if (k > 0) tau += (cur != prev);
        prev = cur;
    }
    const std::int64_t n0 = m - n1;
    if (n0 == 0 || n1 == 0) return 0.0;
    return 1.0 - static_cast<double>(m) * tau /
                     (2.0 * static_cast<double>(n0) * static_cast<double>(n1));
}

}  // namespace ranksel
