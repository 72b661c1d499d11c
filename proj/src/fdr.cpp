#include "ranksel/fdr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ranksel/dataset.hpp"
#include "ranksel/math_util.hpp"
#include "ranksel/u_dist.hpp"

namespace ranksel {

PValueVector::PValueVector(std::vector<double> v) : values(std::move(v)) {
    if (values.empty()) throw std::invalid_argument("PValueVector: needs >= 1 entry");
    feature_ids.resize(values.size());
    std::iota(feature_ids.begin(), feature_ids.end(), 0);
    for (double p : values)
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("PValueVector: p-values must lie in (0, 1]");
}

PValueVector::PValueVector(std::vector<double> v, std::vector<std::int32_t> ids)
    : PValueVector(std::move(v)) {
    if (ids.size() != values.size())
        throw std::invalid_argument("PValueVector: id/value length mismatch");
    feature_ids = std::move(ids);
}

bool SelectionResult::is_selected(std::int32_t id) const {
    return std::binary_search(selected.begin(), selected.end(), id);
}

SelectionResult fdr_select(const PValueVector& pvalues, double alpha,
                           FdrProcedure procedure) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("fdr_select: alpha must lie in (0, 1)");
    const std::size_t p = pvalues.values.size();
    const double c =
        procedure == FdrProcedure::BenjaminiYekutieli
            ? harmonic_number(static_cast<std::int64_t>(p))
            : 1.0;

    // Stable ordering by (p-value, id) keeps tied reports deterministic.
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pvalues.values[a] != pvalues.values[b])
            return pvalues.values[a] < pvalues.values[b];
        return pvalues.feature_ids[a] < pvalues.feature_ids[b];
    });

    // Step-up adjustment: adj_(i) = min_{j >= i} min(1, p_(j) * p*c / j).
    std::vector<double> adjusted_sorted(p);
    double running = 1.0;
    for (std::size_t i = p; i-- > 0;) {
        const double scaled = pvalues.values[order[i]] * static_cast<double>(p) * c /
                              static_cast<double>(i + 1);
        running = std::min(running, std::min(scaled, 1.0));
        adjusted_sorted[i] = running;
    }

    SelectionResult result;
    result.alpha = alpha;
    result.procedure = procedure;
    result.adjusted.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        result.adjusted[order[i]] = adjusted_sorted[i];
        if (adjusted_sorted[i] <= alpha)
            result.selected.push_back(pvalues.feature_ids[order[i]]);
    }
    std::sort(result.selected.begin(), result.selected.end());
    return result;
}

SelectionResult by_select(const PValueVector& pvalues, double alpha) {
    return fdr_select(pvalues, alpha, FdrProcedure::BenjaminiYekutieli);
}

SelectionResult bh_select(const PValueVector& pvalues, double alpha) {
    return fdr_select(pvalues, alpha, FdrProcedure::BenjaminiHochberg);
}

FdrSimResult fdr_simulation(const FdrSimConfig& config) {
    if (config.reps < 1) throw std::domain_error("fdr_simulation: need reps >= 1");
    const int n1 = static_cast<int>(config.n / 2);
    const int n0 = static_cast<int>(config.n - n1);
    const UNullDistribution null_dist = u_null_distribution(n0, n1);

    double sum_fdp = 0.0, sum_fdp2 = 0.0, sum_r = 0.0;
    for (std::int64_t rep = 0; rep < config.reps; ++rep) {
        SyntheticSpec spec;
        spec.n = config.n;
        spec.p = config.p;
        spec.n_nonnull = config.n_nonnull;
        spec.shift = config.effect;
        spec.rho = config.rho;
        spec.rho_block = config.rho > 0.0 ? config.p : 0;
        spec.key = StreamKey{config.key.seed,
                             derive_stream_id(StreamPurpose::Simulation, config.key.stream_id,
                                              static_cast<std::uint64_t>(rep))};
        const DatasetMatrix data = generate_synthetic(spec);

        std::vector<double> pvals(static_cast<std::size_t>(config.p));
        for (std::int64_t j = 0; j < config.p; ++j) {
            const LabeledSample sample = data.feature_sample(j);
            RandomStream tie_stream(make_key(spec.key.seed, StreamPurpose::TieBreak,
                                             static_cast<std::uint64_t>(j)));
            const RankPermutation perm = rank_values(sample.values, tie_stream);
            const double u = mann_whitney_u(sample, perm);
            const double two_sided =
                std::min(1.0, 2.0 * std::min(null_dist.upper_tail(u), null_dist.cdf(u)));
            pvals[static_cast<std::size_t>(j)] = two_sided;
        }

        const SelectionResult sel =
            fdr_select(PValueVector(pvals), config.alpha, config.procedure);
        std::int64_t v = 0;
        for (std::int32_t id : sel.selected)
            if (id >= config.n_nonnull) ++v;
        const double r = static_cast<double>(sel.selected.size());
        const double fdp = r > 0.0 ? static_cast<double>(v) / r : 0.0;
        sum_fdp += fdp;
        sum_fdp2 += fdp * fdp;
        sum_r += r;
    }

    FdrSimResult result;
    const double reps = static_cast<double>(config.reps);
    result.fdr = sum_fdp / reps;
    result.mean_rejections = sum_r / reps;
    const double var = std::max(0.0, sum_fdp2 / reps - result.fdr * result.fdr);
    result.se = std::sqrt(var / reps);
    return result;
}

}  // namespace ranksel
