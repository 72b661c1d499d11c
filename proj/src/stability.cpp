#include "ranksel/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ranksel/stats.hpp"
#include "ranksel/subsample.hpp"

namespace ranksel {

FoldPartition make_folds(std::int64_t n, std::int32_t k, StreamKey key) {
    if (k < 2 || static_cast<std::int64_t>(k) > n)
        throw std::domain_error("make_folds: need 2 <= k <= n");
    std::vector<std::int32_t> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    RandomStream stream(key);
    shuffle(stream, rows);

    FoldPartition part;
    part.k = k;
    part.assignment.resize(static_cast<std::size_t>(n));
    part.folds.resize(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int32_t fold = static_cast<std::int32_t>(i % k);
        const std::int32_t row = rows[static_cast<std::size_t>(i)];
        part.assignment[static_cast<std::size_t>(row)] = fold;
        part.folds[static_cast<std::size_t>(fold)].push_back(row);
    }
    for (auto& fold : part.folds) std::sort(fold.begin(), fold.end());
    return part;
}

std::vector<std::int32_t> top_s(std::span<const double> scores, std::int32_t s) {
    const std::int32_t p = static_cast<std::int32_t>(scores.size());
    if (s < 1 || s > p) throw std::domain_error("top_s: need 1 <= s <= p");
    std::vector<std::int32_t> ids(static_cast<std::size_t>(p));
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), [&](std::int32_t a, std::int32_t b) {
        const double sa = scores[static_cast<std::size_t>(a)];
        const double sb = scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    });
    ids.resize(static_cast<std::size_t>(s));
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::int32_t stability_count(const std::vector<std::vector<double>>& fold_scores,
                             std::int32_t s) {
    if (fold_scores.empty())
        throw std::invalid_argument("stability_count: need at least one fold");
    const std::size_t p = fold_scores.front().size();
    for (const auto& scores : fold_scores)
        if (scores.size() != p)
            throw std::invalid_argument("stability_count: folds rank different feature sets");

    std::vector<std::int32_t> in_all(p, 0);
    for (const auto& scores : fold_scores)
        for (std::int32_t id : top_s(scores, s)) ++in_all[static_cast<std::size_t>(id)];
    const std::int32_t k = static_cast<std::int32_t>(fold_scores.size());
    std::int32_t count = 0;
    for (std::int32_t c : in_all) count += (c == k);
    return count;
}

std::vector<double> ranking_scores(const DatasetMatrix& data, const RankingConfig& config,
                                   std::int64_t fold_index) {
    const std::int64_t n = data.n_rows();
    const std::int64_t p = data.n_features();
    SubsampleDesign design;
    if (config.resampled) {
        if (config.m > n)
            throw std::domain_error("ranking_scores: subsample size exceeds fold size");
        design = build_design(n, config.m, config.ell,
                              make_key(config.seed, StreamPurpose::SubsampleDesign, 0,
                                       static_cast<std::uint64_t>(fold_index)));
    }

    std::vector<double> scores(static_cast<std::size_t>(p));
    std::vector<std::uint8_t> ordered(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < p; ++j) {
        const LabeledSample sample = data.feature_sample(j);
        RandomStream tie_stream(make_key(config.seed, StreamPurpose::TieBreak,
                                         static_cast<std::uint64_t>(j),
                                         static_cast<std::uint64_t>(fold_index)));
        const RankPermutation perm = rank_values(sample.values, tie_stream);
        double value;
        if (config.resampled) {
            const SubsampleEvaluator eval(design, perm);
            value = config.use_xi ? eval.mean_xi(sample.labels) : eval.mean_auc(sample.labels);
        } else {
            // Ordered-label kernels so a degenerate fold scores as
            // uninformative instead of erroring.
            for (std::int64_t k = 0; k < n; ++k)
                ordered[static_cast<std::size_t>(k)] =
                    sample.labels[static_cast<std::size_t>(perm.order[static_cast<std::size_t>(k)])];
            value = config.use_xi ? xi_of_ordered_labels(ordered) : auc_of_ordered_labels(ordered);
        }
        scores[static_cast<std::size_t>(j)] =
            config.use_xi ? value : std::fabs(value - 0.5);
    }
    return scores;
}

StabilityCurve stability_curve(const DatasetMatrix& data, const RankingConfig& config,
                               const FoldPartition& folds,
                               std::span<const std::int32_t> s_grid) {
    StabilityCurve curve;
    curve.method = std::string(config.use_xi ? "xi" : "auc") +
                   (config.resampled ? "_resampled" : "_plain");
    curve.fold_scores.reserve(folds.folds.size());
    std::int64_t fold_index = 0;
    for (const auto& rows : folds.folds) {
        const DatasetMatrix fold_data = data.rows_subset(rows);
        curve.fold_scores.push_back(ranking_scores(fold_data, config, fold_index));
        ++fold_index;
    }
    curve.s_values.assign(s_grid.begin(), s_grid.end());
    curve.counts.reserve(s_grid.size());
    for (std::int32_t s : s_grid)
        curve.counts.push_back(stability_count(curve.fold_scores, s));
    return curve;
}

}  // namespace ranksel
