#include "ranksel/u_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ranksel/math_util.hpp"

namespace ranksel {

double UNullDistribution::mean() const {
    double m = 0.0;
    for (std::size_t u = 0; u < pmf.size(); ++u) m += static_cast<double>(u) * pmf[u];
    return m;
}

double UNullDistribution::variance() const {
    const double m = mean();
    double acc = 0.0;
    for (std::size_t u = 0; u < pmf.size(); ++u) {
        const double d = static_cast<double>(u) - m;
        acc += d * d * pmf[u];
    }
    return acc;
}

double UNullDistribution::cdf(double u) const {
    const std::int64_t hi = static_cast<std::int64_t>(std::floor(u + 1e-9));
    if (hi < 0) return 0.0;
    double acc = 0.0;
    for (std::int64_t v = 0; v <= hi && v < static_cast<std::int64_t>(pmf.size()); ++v)
        acc += pmf[static_cast<std::size_t>(v)];
    return std::min(acc, 1.0);
}

double UNullDistribution::upper_tail(double u) const {
    const std::int64_t lo = static_cast<std::int64_t>(std::ceil(u - 1e-9));
    double acc = 0.0;
    for (std::int64_t v = std::max<std::int64_t>(lo, 0);
         v < static_cast<std::int64_t>(pmf.size()); ++v)
        acc += pmf[static_cast<std::size_t>(v)];
    return std::min(acc, 1.0);
}

UNullDistribution u_null_distribution(int n0, int n1) {
    if (n0 < 1 || n1 < 1) throw std::domain_error("u_null_distribution: need n0, n1 >= 1");
    const std::size_t u_max = static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1);

    // counts[b][u] = number of arrangements with b ones among the a zeros
    // processed so far... iterated over a: standard two-index recurrence
    //   N(u; a, b) = N(u - b; a-1, b) + N(u; a, b-1).
    std::vector<std::vector<long double>> cur(static_cast<std::size_t>(n1) + 1,
                                              std::vector<long double>(u_max + 1, 0.0L));
    // a = 0: U must be 0 whatever b is.
    for (int b = 0; b <= n1; ++b) cur[static_cast<std::size_t>(b)][0] = 1.0L;
    std::vector<std::vector<long double>> next = cur;
    for (int a = 1; a <= n0; ++a) {
        for (int b = 0; b <= n1; ++b) {
            auto& row = next[static_cast<std::size_t>(b)];
            const std::size_t cap = static_cast<std::size_t>(a) * static_cast<std::size_t>(b);
            for (std::size_t u = 0; u <= u_max; ++u) {
                if (u > cap) { row[u] = 0.0L; continue; }
                long double c = 0.0L;
                if (u >= static_cast<std::size_t>(b))
                    c += cur[static_cast<std::size_t>(b)][u - static_cast<std::size_t>(b)];
                if (b >= 1) c += next[static_cast<std::size_t>(b - 1)][u];
                row[u] = c;
            }
        }
        std::swap(cur, next);
    }

    const auto& counts = cur[static_cast<std::size_t>(n1)];
    long double total = 0.0L;
    for (long double c : counts) total += c;

    UNullDistribution dist;
    dist.n0 = n0;
    dist.n1 = n1;
    dist.pmf.resize(u_max + 1);
    for (std::size_t u = 0; u <= u_max; ++u)
        dist.pmf[u] = static_cast<double>(counts[u] / total);
    return dist;
}

double u_exact_pvalue(double observed_u, int n0, int n1, Alternative alternative) {
    const UNullDistribution dist = u_null_distribution(n0, n1);
    switch (alternative) {
        case Alternative::Greater:
            return dist.upper_tail(observed_u);
        case Alternative::Less:
            return dist.cdf(observed_u);
        case Alternative::TwoSided: {
            const double p = 2.0 * std::min(dist.upper_tail(observed_u), dist.cdf(observed_u));
            return std::min(p, 1.0);
        }
    }
    throw std::logic_error("u_exact_pvalue: unknown alternative");
}

double u_normal_approx_pvalue(double observed_u, int n0, int n1, Alternative alternative) {
    if (n0 < 1 || n1 < 1)
        throw std::domain_error("u_normal_approx_pvalue: need n0, n1 >= 1");
    const double n = n0 + n1;
    const double mean = 0.5 * n0 * n1;
    const double sd = std::sqrt(n0 * n1 * (n + 1.0) / 12.0);
    // Continuity correction: P(U >= u) ~ SF((u - 0.5 - mean)/sd).
    const double greater = normal_sf((observed_u - 0.5 - mean) / sd);
    const double less = normal_cdf((observed_u + 0.5 - mean) / sd);
    switch (alternative) {
        case Alternative::Greater:
            return greater;
        case Alternative::Less:
            return less;
        case Alternative::TwoSided:
            return std::min(1.0, 2.0 * std::min(greater, less));
    }
    throw std::logic_error("u_normal_approx_pvalue: unknown alternative");
}

}  // namespace ranksel
