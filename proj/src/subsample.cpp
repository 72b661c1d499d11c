#include "ranksel/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ranksel/errors.hpp"
#include "ranksel/math_util.hpp"

namespace ranksel {

SubsampleDesign build_design(std::int64_t n, std::int32_t m, std::int64_t ell,
                             StreamKey key) {
    if (m < 1 || m > n) throw std::domain_error("build_design: need 1 <= m <= n");
    if (ell < 1) throw std::domain_error("build_design: need ell >= 1");
    SubsampleDesign design;
    design.n = n;
    design.m = m;
    design.ell = ell;
    design.key = key;
    design.indices.reserve(static_cast<std::size_t>(ell));
    RandomStream stream(key);
    for (std::int64_t j = 0; j < ell; ++j)
        design.indices.push_back(uniform_subset(stream, n, m));
    return design;
}

SubsampleEvaluator::SubsampleEvaluator(const SubsampleDesign& design,
                                       const RankPermutation& perm)
    : ell_(design.ell), m_(design.m) {
    if (perm.rank.size() != static_cast<std::size_t>(design.n))
        throw std::invalid_argument("SubsampleEvaluator: design/permutation size mismatch");
    ordered_.resize(static_cast<std::size_t>(ell_) * static_cast<std::size_t>(m_));
    std::vector<std::int32_t> scratch;
    for (std::int64_t j = 0; j < ell_; ++j) {
        scratch = design.indices[static_cast<std::size_t>(j)];
        std::sort(scratch.begin(), scratch.end(), [&](std::int32_t a, std::int32_t b) {
            return perm.rank[static_cast<std::size_t>(a)] < perm.rank[static_cast<std::size_t>(b)];
        });
        std::copy(scratch.begin(), scratch.end(),
                  ordered_.begin() + static_cast<std::ptrdiff_t>(j * m_));
    }
}

double SubsampleEvaluator::auc_at(std::int64_t j, std::span<const std::uint8_t> labels) const {
    const std::int32_t* block = ordered_.data() + j * m_;
    std::int64_t n1 = 0, rank_sum0 = 0;
    for (std::int32_t k = 0; k < m_; ++k) {
        if (labels[static_cast<std::size_t>(block[k])])
            ++n1;
        else
            rank_sum0 += k + 1;
    }
    const std::int64_t n0 = m_ - n1;
    if (n0 == 0 || n1 == 0) return 0.5;
    const std::int64_t u = rank_sum0 - n0 * (n0 + 1) / 2;
    return static_cast<double>(u) / (static_cast<double>(n0) * static_cast<double>(n1));
}

double SubsampleEvaluator::xi_at(std::int64_t j, std::span<const std::uint8_t> labels) const {
    const std::int32_t* block = ordered_.data() + j * m_;
    std::int64_t n1 = 0;
    int tau = 0;
    std::uint8_t prev = 0;
    for (std::int32_t k = 0; k < m_; ++k) {
        const std::uint8_t cur = labels[static_cast<std::size_t>(block[k])];
        n1 += cur;
        if (k > 0) tau += (cur != prev);
        prev = cur;
    }
    const std::int64_t n0 = m_ - n1;
    if (n0 == 0 || n1 == 0) return 0.0;
    return 1.0 - static_cast<double>(m_) * tau /
                     (2.0 * static_cast<double>(n0) * static_cast<double>(n1));
}

double SubsampleEvaluator::mean_auc(std::span<const std::uint8_t> labels) const {
    // long double accumulation keeps the m = n degeneracy exact: averaging
    // ell copies of the same kernel value returns that value bit-for-bit.
    long double acc = 0.0L;
    for (std::int64_t j = 0; j < ell_; ++j) acc += auc_at(j, labels);
    return static_cast<double>(acc / static_cast<long double>(ell_));
}

double SubsampleEvaluator::mean_xi(std::span<const std::uint8_t> labels) const {
    long double acc = 0.0L;
    for (std::int64_t j = 0; j < ell_; ++j) acc += xi_at(j, labels);
    return static_cast<double>(acc / static_cast<long double>(ell_));
}

double SubsampleEvaluator::mean(Kernel kernel, std::span<const std::uint8_t> labels) const {
    return kernel == Kernel::Auc ? mean_auc(labels) : mean_xi(labels);
}

double resampled_auc(const LabeledSample& sample, const RankPermutation& perm,
                     const SubsampleDesign& design) {
    if (design.n != static_cast<std::int64_t>(sample.size()))
        throw std::invalid_argument("resampled_auc: design.n != sample length");
    return SubsampleEvaluator(design, perm).mean_auc(sample.labels);
}

double resampled_xi(const LabeledSample& sample, const RankPermutation& perm,
                    const SubsampleDesign& design) {
    if (design.n != static_cast<std::int64_t>(sample.size()))
        throw std::invalid_argument("resampled_xi: design.n != sample length");
    return SubsampleEvaluator(design, perm).mean_xi(sample.labels);
}

namespace {

// Lexicographic enumeration of all m-subsets; calls visit(members).
template <typename Visit>
void for_each_subset(std::int64_t n, std::int32_t m, Visit visit) {
    std::vector<std::int32_t> comb(static_cast<std::size_t>(m));
    for (std::int32_t i = 0; i < m; ++i) comb[static_cast<std::size_t>(i)] = i;
    for (;;) {
        visit(comb);
        std::int32_t i = m - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] ==
                             static_cast<std::int32_t>(n) - m + i)
            --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (std::int32_t k = i + 1; k < m; ++k)
            comb[static_cast<std::size_t>(k)] = comb[static_cast<std::size_t>(k - 1)] + 1;
    }
}

}  // namespace

double exhaustive_u_statistic(
    const LabeledSample& sample, const RankPermutation& perm, std::int32_t m,
    const std::function<double(std::span<const std::uint8_t>)>& kernel_fn,
    std::int64_t budget) {
    const std::int64_t n = static_cast<std::int64_t>(sample.size());
    if (m < 1 || m > n) throw std::domain_error("exhaustive_u_statistic: need 1 <= m <= n");
    const long double n_subsets_ld =
        n < 64 ? static_cast<long double>(binom_exact(static_cast<int>(n), m))
               : std::exp(log_binom(static_cast<int>(n), m));
    if (n_subsets_ld > static_cast<long double>(budget))
        throw BudgetExceededError("exhaustive_u_statistic: C(n,m) exceeds budget");

    std::vector<std::int32_t> by_rank(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        by_rank[static_cast<std::size_t>(perm.rank[i]) - 1] = static_cast<std::int32_t>(i);

    double acc = 0.0;
    std::int64_t count = 0;
    std::vector<std::uint8_t> member(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> ordered_labels(static_cast<std::size_t>(m));
    for_each_subset(n, m, [&](const std::vector<std::int32_t>& comb) {
        std::fill(member.begin(), member.end(), 0);
        for (std::int32_t idx : comb) member[static_cast<std::size_t>(idx)] = 1;
        std::size_t pos = 0;
        for (std::int32_t idx : by_rank)
            if (member[static_cast<std::size_t>(idx)])
                ordered_labels[pos++] = sample.labels[static_cast<std::size_t>(idx)];
        acc += kernel_fn(ordered_labels);
        ++count;
    });
    return acc / static_cast<double>(count);
}

double exhaustive_u_statistic(const LabeledSample& sample, const RankPermutation& perm,
                              std::int32_t m, Kernel kernel, std::int64_t budget) {
    if (kernel == Kernel::Auc)
        return exhaustive_u_statistic(sample, perm, m, auc_of_ordered_labels, budget);
    return exhaustive_u_statistic(sample, perm, m, xi_of_ordered_labels, budget);
}

double bootstrap_xi_with_replacement(const LabeledSample& sample, std::int64_t ell,
                                     StreamKey key) {
    const std::size_t n = sample.size();
    if (n < 2) throw std::domain_error("bootstrap_xi_with_replacement: need n >= 2");
    if (ell < 1) throw std::domain_error("bootstrap_xi_with_replacement: need ell >= 1");
    RandomStream draw_stream(key);
    // Duplicated points create exact ties; break them with a separate stream
    // so the draw sequence stays aligned across runs.
    RandomStream tie_stream(
        StreamKey{key.seed, derive_stream_id(StreamPurpose::TieBreak, key.stream_id)});

    std::vector<std::uint8_t> labels(n);
    std::vector<double> values(n);
    double acc = 0.0;
    for (std::int64_t rep = 0; rep < ell; ++rep) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick =
                static_cast<std::size_t>(draw_stream.uniform_int(static_cast<std::uint64_t>(n)));
            labels[i] = sample.labels[pick];
            values[i] = sample.values[pick];
        }
        const RankPermutation perm = rank_values(values, tie_stream);
        LabeledSample resample;
        resample.labels = labels;
        resample.values = values;
        acc += xi_binary(resample, perm);
    }
    return acc / static_cast<double>(ell);
}

}  // namespace ranksel
