#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ranksel/dataset.hpp"
#include "ranksel/rng.hpp"

namespace ranksel {

// Balanced random partition of [n] into k folds (sizes differ by at most 1).
struct FoldPartition {
    std::int32_t k = 0;
    std::vector<std::int32_t> assignment;          // fold index per observation
    std::vector<std::vector<std::int32_t>> folds;  // row indices per fold, ascending
};

// Throws std::domain_error unless 2 <= k <= n.
FoldPartition make_folds(std::int64_t n, std::int32_t k, StreamKey key);

// Ids of the s features with the largest scores; ties go to the smaller
// feature id so |result| == s exactly.
std::vector<std::int32_t> top_s(std::span<const double> scores, std::int32_t s);

// S(M_s): how many features appear in the top-s set of every fold.
std::int32_t stability_count(const std::vector<std::vector<double>>& fold_scores,
                             std::int32_t s);

struct StabilityCurve {
    std::vector<std::int32_t> s_values;
    std::vector<std::int32_t> counts;                 // S(M_s) per s
    std::vector<std::vector<double>> fold_scores;     // retained for audit
    std::string method;
};

// Which per-feature ranking score backs the curve. AUC ranks by distance
// from the null center 0.5, xi by value.
struct RankingConfig {
    bool use_xi = false;
    bool resampled = false;
    std::int32_t m = 50;
    std::int64_t ell = 100;
    std::uint64_t seed = 0;
};

// Per-feature ranking scores on one dataset (typically one fold's rows).
// fold_index scopes the random streams so folds are independent.
std::vector<double> ranking_scores(const DatasetMatrix& data, const RankingConfig& config,
                                   std::int64_t fold_index);

// Computes per-fold rankings on the folds' data and assembles S(M_s) over
// the s grid.
StabilityCurve stability_curve(const DatasetMatrix& data, const RankingConfig& config,
                               const FoldPartition& folds,
                               std::span<const std::int32_t> s_grid);

}  // namespace ranksel
