#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ranksel/rng.hpp"
#include "ranksel/sample.hpp"
#include "ranksel/stats.hpp"

namespace ranksel {

struct PermutationScheme {
    std::int64_t n_perm = 999;
    StreamKey key;
    Alternative alternative = Alternative::Greater;
};

// A statistic seen only through the label vector; values, ranks and any
// subsample design are baked into the closure. Permuting labels is then all
// a permutation test needs.
using LabelStatistic = std::function<double(std::span<const std::uint8_t>)>;

// Permutation p-value with the finite-permutation correction
// p = (b + 1) / (n_perm + 1), where b counts permuted statistics at least
// as extreme as the observed one (ties inclusive). Two-sided extremity is
// |stat - center|. When n! <= 5040 all distinct label arrangements are
// enumerated instead and the exact fraction is returned.
double permutation_pvalue(const LabelStatistic& statistic,
                          std::span<const std::uint8_t> labels,
                          const PermutationScheme& scheme, double center);

// Convenience wrapper for a statistic of the whole sample: labels are
// permuted, values held fixed.
double permutation_pvalue(const std::function<double(const LabeledSample&)>& statistic,
                          const LabeledSample& sample,
                          const PermutationScheme& scheme, double center);

// Validity diagnostic: p-values over many independent null datasets.
struct UniformityReport {
    std::vector<double> pvalues;
    double max_ecdf_deviation = 0.0;  // sup_t |ECDF(t) - t| over observed p-values

    // Fraction of p-values <= alpha.
    double rejection_rate(double alpha) const;
};

// General form: pvalue_fn computes the finished p-value for dataset `rep`.
UniformityReport pvalue_uniformity_diagnostic(
    const std::function<double(const LabeledSample&, std::uint64_t rep)>& pvalue_fn,
    const std::function<LabeledSample(std::uint64_t rep)>& null_generator,
    std::int64_t n_datasets);

// Permutation-test form: statistic_factory builds the label statistic for
// each generated dataset (ranks, designs, ...); the scheme's key is
// re-derived per dataset so replicates are independent.
UniformityReport pvalue_uniformity_diagnostic(
    const std::function<LabelStatistic(const LabeledSample&)>& statistic_factory,
    const std::function<LabeledSample(std::uint64_t rep)>& null_generator,
    const PermutationScheme& scheme, double center, std::int64_t n_datasets);

}  // namespace ranksel
