#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ranksel/rng.hpp"
#include "ranksel/sample.hpp"
#include "ranksel/stats.hpp"

namespace ranksel {

enum class Kernel { Auc, Xi };

// The ell x m index design shared by every feature column. A pure function
// of (n, m, ell, key): regenerating with the same key gives the same
// design, and storing the indices means the pseudo-random numbers are paid
// for once, not once per feature.
struct SubsampleDesign {
    std::int64_t n = 0;
    std::int32_t m = 0;
    std::int64_t ell = 0;
    StreamKey key;
    std::vector<std::vector<std::int32_t>> indices;  // ell sorted index sets
};

// Throws std::domain_error unless 1 <= m <= n and ell >= 1.
SubsampleDesign build_design(std::int64_t n, std::int32_t m, std::int64_t ell,
                             StreamKey key);

// Precomputes, for one feature (one rank permutation), each subsample's
// members arranged in value order. Kernels then evaluate against any label
// vector in O(m) per subsample, which is what makes permutation p-values
// for resampled statistics affordable.
class SubsampleEvaluator {
public:
    SubsampleEvaluator(const SubsampleDesign& design, const RankPermutation& perm);

    std::int64_t subsample_count() const { return ell_; }
    std::int32_t subsample_size() const { return m_; }

    // Kernel value of subsample j against `labels` (full-length vector).
    // Degenerate subsamples: 0.5 for AUC, 0 for xi.
    double auc_at(std::int64_t j, std::span<const std::uint8_t> labels) const;
    double xi_at(std::int64_t j, std::span<const std::uint8_t> labels) const;

    // Means over all subsamples.
    double mean_auc(std::span<const std::uint8_t> labels) const;
    double mean_xi(std::span<const std::uint8_t> labels) const;
    double mean(Kernel kernel, std::span<const std::uint8_t> labels) const;

private:
    std::int64_t ell_;
    std::int32_t m_;
    std::vector<std::int32_t> ordered_;  // ell blocks of m indices, value order
};

// Monte Carlo subsampled statistics: the mean kernel value over the design's
// subsamples. design.n must equal the sample length.
double resampled_auc(const LabeledSample& sample, const RankPermutation& perm,
                     const SubsampleDesign& design);
double resampled_xi(const LabeledSample& sample, const RankPermutation& perm,
                    const SubsampleDesign& design);

// Exact average of the kernel over all C(n,m) subsets. Guarded by
// BudgetExceededError when C(n,m) > budget (default 1e6).
double exhaustive_u_statistic(const LabeledSample& sample, const RankPermutation& perm,
                              std::int32_t m, Kernel kernel,
                              std::int64_t budget = 1000000);

// Generic-kernel overload: `kernel_fn` receives the subsample's labels in
// value order.
double exhaustive_u_statistic(
    const LabeledSample& sample, const RankPermutation& perm, std::int32_t m,
    const std::function<double(std::span<const std::uint8_t>)>& kernel_fn,
    std::int64_t budget = 1000000);

// Mean xi over ell size-n resamples drawn with replacement. Exists to
// demonstrate the bias of with-replacement resampling for xi; the
// artificial ties it creates are broken by a tie stream derived from key.
double bootstrap_xi_with_replacement(const LabeledSample& sample, std::int64_t ell,
                                     StreamKey key);

}  // namespace ranksel
