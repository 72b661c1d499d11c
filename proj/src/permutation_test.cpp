#include "ranksel/permutation_test.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranksel {

namespace {

constexpr double kTieEps = 1e-12;
constexpr std::int64_t kExhaustiveFactorialCap = 5040;  // 7!

double extremity(double stat, Alternative alt, double center) {
    switch (alt) {
        case Alternative::Greater: return stat;
        case Alternative::Less: return -stat;
        case Alternative::TwoSided: return std::fabs(stat - center);
    }
    throw std::logic_error("extremity: unknown alternative");
}

bool exhaustive_applies(std::size_t n) {
    std::int64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= static_cast<std::int64_t>(i);
        if (f > kExhaustiveFactorialCap) return false;
    }
    return true;
}

}  // namespace

double permutation_pvalue(const LabelStatistic& statistic,
                          std::span<const std::uint8_t> labels,
                          const PermutationScheme& scheme, double center) {
    if (scheme.n_perm < 1) throw std::domain_error("permutation_pvalue: need n_perm >= 1");
    const double observed = extremity(statistic(labels), scheme.alternative, center);

    if (exhaustive_applies(labels.size())) {
        // All distinct arrangements of the label multiset, each equally
        // likely under the conditional null.
        std::vector<std::uint8_t> arrangement(labels.begin(), labels.end());
        std::sort(arrangement.begin(), arrangement.end());
        std::int64_t at_least = 0, total = 0;
        do {
            const double e = extremity(statistic(arrangement), scheme.alternative, center);
            at_least += (e >= observed - kTieEps);
            ++total;
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
        return static_cast<double>(at_least) / static_cast<double>(total);
    }

    RandomStream stream(scheme.key);
    std::vector<std::uint8_t> permuted(labels.begin(), labels.end());
    std::int64_t at_least = 0;
    for (std::int64_t b = 0; b < scheme.n_perm; ++b) {
        shuffle(stream, permuted);
        const double e = extremity(statistic(permuted), scheme.alternative, center);
        at_least += (e >= observed - kTieEps);
    }
    return static_cast<double>(at_least + 1) / static_cast<double>(scheme.n_perm + 1);
}

double permutation_pvalue(const std::function<double(const LabeledSample&)>& statistic,
                          const LabeledSample& sample,
                          const PermutationScheme& scheme, double center) {
    LabelStatistic label_stat = [&](std::span<const std::uint8_t> labels) {
        LabeledSample permuted;
        permuted.labels.assign(labels.begin(), labels.end());
        permuted.values = sample.values;
        return statistic(permuted);
    };
    return permutation_pvalue(label_stat, sample.labels, scheme, center);
}

double UniformityReport::rejection_rate(double alpha) const {
    if (pvalues.empty()) return 0.0;
    std::int64_t count = 0;
    for (double p : pvalues) count += (p <= alpha);
    return static_cast<double>(count) / static_cast<double>(pvalues.size());
}

UniformityReport pvalue_uniformity_diagnostic(
    const std::function<double(const LabeledSample&, std::uint64_t)>& pvalue_fn,
    const std::function<LabeledSample(std::uint64_t)>& null_generator,
    std::int64_t n_datasets) {
    if (n_datasets < 1)
        throw std::domain_error("pvalue_uniformity_diagnostic: need n_datasets >= 1");
    UniformityReport report;
    report.pvalues.reserve(static_cast<std::size_t>(n_datasets));
    for (std::int64_t rep = 0; rep < n_datasets; ++rep) {
        const LabeledSample sample = null_generator(static_cast<std::uint64_t>(rep));
        report.pvalues.push_back(pvalue_fn(sample, static_cast<std::uint64_t>(rep)));
    }
    std::vector<double> sorted = report.pvalues;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double hi = static_cast<double>(i + 1) / n - sorted[i];
        const double lo = sorted[i] - static_cast<double>(i) / n;
        report.max_ecdf_deviation = std::max({report.max_ecdf_deviation, hi, lo});
    }
    return report;
}

UniformityReport pvalue_uniformity_diagnostic(
    const std::function<LabelStatistic(const LabeledSample&)>& statistic_factory,
    const std::function<LabeledSample(std::uint64_t)>& null_generator,
    const PermutationScheme& scheme, double center, std::int64_t n_datasets) {
    auto pvalue_fn = [&](const LabeledSample& sample, std::uint64_t rep) {
        PermutationScheme rep_scheme = scheme;
        rep_scheme.key = StreamKey{
            scheme.key.seed,
            derive_stream_id(StreamPurpose::Permutation, scheme.key.stream_id, rep)};
        const LabelStatistic stat = statistic_factory(sample);
        return permutation_pvalue(stat, sample.labels, rep_scheme, center);
    };
    return pvalue_uniformity_diagnostic(pvalue_fn, null_generator, n_datasets);
}

}  // namespace ranksel
