#include "ranksel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ranksel/errors.hpp"
#include "ranksel/math_util.hpp"
#include "ranksel/permutation_test.hpp"
#include "ranksel/u_dist.hpp"

namespace ranksel::oracle {

namespace {

long double count_states(int n, int k) {
    return n < 64 ? static_cast<long double>(binom_exact(n, k))
                  : std::exp(log_binom(n, k));
}

double extremity(double stat, Alternative alt, double center) {
    switch (alt) {
        case Alternative::Greater: return stat;
        case Alternative::Less: return -stat;
        case Alternative::TwoSided: return std::fabs(stat - center);
    }
    return 0.0;
}

}  // namespace

std::int64_t enumerate_binary_sequences(
    int n0, int n1, const std::function<void(std::span<const std::uint8_t>)>& visit,
    EnumerationBudget budget) {
    if (n0 < 0 || n1 < 0 || n0 + n1 < 1)
        throw std::domain_error("enumerate_binary_sequences: need n0 + n1 >= 1");
    if (count_states(n0 + n1, n0) > static_cast<long double>(budget.max_states))
        throw BudgetExceededError("enumerate_binary_sequences: C(n, n0) exceeds budget");
    std::vector<std::uint8_t> seq(static_cast<std::size_t>(n0), 0);
    seq.insert(seq.end(), static_cast<std::size_t>(n1), 1);
    std::int64_t count = 0;
    do {
        visit(seq);
        ++count;
    } while (std::next_permutation(seq.begin(), seq.end()));
    return count;
}

TauDistribution brute_tau_pmf(int n0, int n1, EnumerationBudget budget) {
    if (n0 < 1 || n1 < 1) throw std::domain_error("brute_tau_pmf: need n0, n1 >= 1");
    std::vector<std::int64_t> histogram;
    const std::int64_t total = enumerate_binary_sequences(
        n0, n1,
        [&](std::span<const std::uint8_t> seq) {
            const int tau = jump_count(seq);
            if (static_cast<std::size_t>(tau) >= histogram.size())
                histogram.resize(static_cast<std::size_t>(tau) + 1, 0);
            ++histogram[static_cast<std::size_t>(tau)];
        },
        budget);

    TauDistribution dist;
    dist.n0 = n0;
    dist.n1 = n1;
    dist.support_min = 1;
    dist.pmf.assign(histogram.size() - 1, 0.0);  // tau = 0 never occurs
    for (std::size_t tau = 1; tau < histogram.size(); ++tau)
        dist.pmf[tau - 1] = static_cast<double>(histogram[tau]) / static_cast<double>(total);
    return dist;
}

double brute_u_statistic(const LabeledSample& sample, std::int32_t m, Kernel kernel,
                         EnumerationBudget budget) {
    const int n = static_cast<int>(sample.size());
    if (m < 1 || m > n) throw std::domain_error("brute_u_statistic: need 1 <= m <= n");
    if (count_states(n, m) > static_cast<long double>(budget.max_states))
        throw BudgetExceededError("brute_u_statistic: C(n, m) exceeds budget");

    std::vector<std::int32_t> comb(static_cast<std::size_t>(m));
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<std::int32_t> sorted(static_cast<std::size_t>(m));
    std::vector<std::uint8_t> ordered_labels(static_cast<std::size_t>(m));
    double acc = 0.0;
    std::int64_t count = 0;
    for (;;) {
        sorted = comb;
        std::sort(sorted.begin(), sorted.end(), [&](std::int32_t a, std::int32_t b) {
            const double va = sample.values[static_cast<std::size_t>(a)];
            const double vb = sample.values[static_cast<std::size_t>(b)];
            if (va != vb) return va < vb;
            return a < b;
        });
        for (std::int32_t k = 0; k < m; ++k)
            ordered_labels[static_cast<std::size_t>(k)] =
                sample.labels[static_cast<std::size_t>(sorted[static_cast<std::size_t>(k)])];
        acc += kernel == Kernel::Auc ? auc_of_ordered_labels(ordered_labels)
                                     : xi_of_ordered_labels(ordered_labels);
        ++count;

        std::int32_t i = m - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - m + i) --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (std::int32_t k = i + 1; k < m; ++k)
            comb[static_cast<std::size_t>(k)] = comb[static_cast<std::size_t>(k - 1)] + 1;
    }
    return acc / static_cast<double>(count);
}

double brute_permutation_pvalue(
    const std::function<double(std::span<const std::uint8_t>)>& statistic,
    const LabeledSample& sample, Alternative alternative, double center,
    EnumerationBudget budget) {
    const GroupCounts gc = group_counts(sample);
    const double observed = extremity(statistic(sample.labels), alternative, center);
    std::int64_t at_least = 0, total = 0;
    enumerate_binary_sequences(
        gc.n0, gc.n1,
        [&](std::span<const std::uint8_t> arrangement) {
            const double e = extremity(statistic(arrangement), alternative, center);
            at_least += (e >= observed - 1e-12);
            ++total;
        },
        budget);
    return static_cast<double>(at_least) / static_cast<double>(total);
}

namespace {

struct CheckRunner {
    int failures = 0;

    void check(const std::string& name, bool ok) {
        std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name.c_str());
        if (!ok) ++failures;
    }
};

LabelStatistic plain_statistic(const RankPermutation& perm, Kernel kernel) {
    const std::vector<std::int32_t> order = perm.order;
    return [order, kernel](std::span<const std::uint8_t> labels) {
        std::vector<std::uint8_t> ordered(order.size());
        for (std::size_t k = 0; k < order.size(); ++k)
            ordered[k] = labels[static_cast<std::size_t>(order[k])];
        return kernel == Kernel::Auc ? auc_of_ordered_labels(ordered)
                                     : xi_of_ordered_labels(ordered);
    };
}

}  // namespace

int run_verify_suite() {
    CheckRunner run;

    // tau pmf formula vs enumeration.
    {
        double worst = 0.0;
        for (int n = 2; n <= 10; ++n)
            for (int n0 = 1; n0 < n; ++n0) {
                const TauDistribution closed = tau_pmf(n0, n - n0);
                const TauDistribution brute = brute_tau_pmf(n0, n - n0);
                if (closed.pmf.size() != brute.pmf.size()) worst = 1.0;
                for (std::size_t i = 0; i < closed.pmf.size() && i < brute.pmf.size(); ++i)
                    worst = std::max(worst, std::fabs(closed.pmf[i] - brute.pmf[i]));
            }
        run.check("tau pmf matches enumeration for n <= 10 (max atom error " +
                      std::to_string(worst) + ")",
                  worst <= 1e-12);
    }

    // Moment identities.
    {
        double worst_mean = 0.0, worst_var = 0.0;
        for (int n0 = 1; n0 <= 30; ++n0)
            for (int n1 = 1; n1 <= 30; ++n1)
                worst_mean = std::max(worst_mean,
                                      std::fabs(tau_pmf(n0, n1).mean() - tau_mean(n0, n1)));
        for (int m = 1; m <= 8; ++m)
            worst_var = std::max(worst_var, std::fabs(tau_pmf(m, m).variance() -
                                                      tau_variance_equal(m)));
        run.check("tau mean law holds for n0, n1 <= 30", worst_mean <= 1e-10);
        run.check("tau variance law holds for n0 = n1 = m <= 8", worst_var <= 1e-10);
    }

    // Exhaustive subsampled statistic vs the independent direct loop.
    {
        RandomStream stream(StreamKey{20240913, 1});
        bool ok = true;
        for (int rep = 0; rep < 20 && ok; ++rep) {
            const int n = 5 + static_cast<int>(stream.uniform_int(4));
            const int m = 2 + static_cast<int>(stream.uniform_int(static_cast<std::uint64_t>(n - 2)));
            std::vector<std::uint8_t> labels(static_cast<std::size_t>(n));
            std::vector<double> values(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                labels[static_cast<std::size_t>(i)] =
                    static_cast<std::uint8_t>(stream.uniform_int(2));
                values[static_cast<std::size_t>(i)] = stream.next_double();
            }
            const LabeledSample sample(labels, values);
            RandomStream tie_stream(StreamKey{20240913, 2});
            const RankPermutation perm = rank_values(sample.values, tie_stream);
            for (Kernel kernel : {Kernel::Auc, Kernel::Xi}) {
                const double a = exhaustive_u_statistic(sample, perm, m, kernel);
                const double b = brute_u_statistic(sample, m, kernel);
                ok = ok && (a == b);
            }
        }
        run.check("exhaustive subsample average equals direct loop bit-for-bit", ok);
    }

    // Exhaustive permutation p-values vs the arrangement oracle.
    {
        RandomStream stream(StreamKey{20240913, 3});
        bool ok = true;
        for (int rep = 0; rep < 20 && ok; ++rep) {
            const int n = 4 + static_cast<int>(stream.uniform_int(4));
            std::vector<std::uint8_t> labels(static_cast<std::size_t>(n));
            std::vector<double> values(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                labels[static_cast<std::size_t>(i)] =
                    static_cast<std::uint8_t>(stream.uniform_int(2));
                values[static_cast<std::size_t>(i)] = stream.next_double();
            }
            const LabeledSample sample(labels, values);
            RandomStream tie_stream(StreamKey{20240913, 4});
            const RankPermutation perm = rank_values(sample.values, tie_stream);
            for (Kernel kernel : {Kernel::Auc, Kernel::Xi}) {
                const LabelStatistic stat = plain_statistic(perm, kernel);
                const double center = kernel == Kernel::Auc ? 0.5 : 0.0;
                for (Alternative alt :
                     {Alternative::Greater, Alternative::Less, Alternative::TwoSided}) {
                    PermutationScheme scheme{999, StreamKey{1, 1}, alt};
                    const double a = permutation_pvalue(stat, sample.labels, scheme, center);
                    const double b =
                        brute_permutation_pvalue(stat, sample, alt, center);
                    ok = ok && (a == b);
                }
            }
        }
        run.check("exhaustive permutation p-values equal arrangement oracle", ok);
    }

    // Exact U tail vs enumeration.
    {
        bool ok = true;
        for (int n0 = 1; n0 <= 4 && ok; ++n0)
            for (int n1 = 1; n1 <= 4 && ok; ++n1) {
                std::vector<std::int64_t> counts(
                    static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1) + 1, 0);
                std::int64_t total = enumerate_binary_sequences(
                    n0, n1, [&](std::span<const std::uint8_t> seq) {
                        std::int64_t n1_seen = 0, u = 0;
                        for (std::uint8_t x : seq) {
                            if (x)
                                ++n1_seen;
                            else
                                u += n1_seen;
                        }
                        ++counts[static_cast<std::size_t>(u)];
                    });
                for (std::size_t u = 0; u < counts.size(); ++u) {
                    double tail = 0.0;
                    for (std::size_t v = u; v < counts.size(); ++v)
                        tail += static_cast<double>(counts[v]);
                    tail /= static_cast<double>(total);
                    const double closed = u_exact_pvalue(static_cast<double>(u), n0, n1,
                                                         Alternative::Greater);
                    ok = ok && std::fabs(tail - closed) <= 1e-12;
                }
            }
        run.check("exact U upper tails equal enumeration for n0, n1 <= 4", ok);
    }

    return run.failures;
}

}  // namespace ranksel::oracle
