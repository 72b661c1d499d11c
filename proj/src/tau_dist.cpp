#include "ranksel/tau_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ranksel/errors.hpp"
#include "ranksel/math_util.hpp"

namespace ranksel {

double TauDistribution::prob(int x) const {
    if (x < support_min || x > support_max()) return 0.0;
    return pmf[static_cast<std::size_t>(x - support_min)];
}

double TauDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i)
        m += static_cast<double>(support_min + static_cast<int>(i)) * pmf[i];
    return m;
}

double TauDistribution::second_moment() const {
    double m2 = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        const double x = static_cast<double>(support_min + static_cast<int>(i));
        m2 += x * x * pmf[i];
    }
    return m2;
}

double TauDistribution::variance() const {
    const double m = mean();
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        const double d = static_cast<double>(support_min + static_cast<int>(i)) - m;
        acc += d * d * pmf[i];
    }
    return acc;
}

double TauDistribution::cdf(int x) const {
    if (x < support_min) return 0.0;
    if (x >= support_max()) return 1.0;
    double acc = 0.0;
    for (int v = support_min; v <= x; ++v) acc += prob(v);
    return acc;
}

TauDistribution tau_pmf(int n0, int n1) {
    if (n0 < 1 || n1 < 1) throw std::domain_error("tau_pmf: need n0, n1 >= 1");
    const int n = n0 + n1;
    const int max_tau = 2 * std::min(n0, n1) - (n0 == n1 ? 1 : 0);

    TauDistribution dist;
    dist.n0 = n0;
    dist.n1 = n1;
    dist.support_min = 1;
    dist.pmf.resize(static_cast<std::size_t>(max_tau));

    // G(y) = C(n0, y/2) C(n1, y/2) / (2 n0 n1 C(n, n0)), y even.
    const long double denom = 2.0L * n0 * n1;
    auto g = [&](int y) -> long double {
        return binom_product_ratio(n0, n1, y / 2) / denom;
    };
    for (int x = 1; x <= max_tau; ++x) {
        long double p;
        if (x % 2 == 1) {
            p = static_cast<long double>(x + 1) * (x + 1) * g(x + 1);
        } else {
            p = (static_cast<long double>(n) * x - static_cast<long double>(x) * x) * g(x);
        }
        dist.pmf[static_cast<std::size_t>(x - 1)] = static_cast<double>(p);
    }
    return dist;
}

double tau_mean(int n0, int n1) {
    if (n0 < 1 || n1 < 1) throw std::domain_error("tau_mean: need n0, n1 >= 1");
    return 2.0 * n0 * n1 / static_cast<double>(n0 + n1);
}

double tau_variance_equal(int m) {
    if (m < 1) throw std::domain_error("tau_variance_equal: need m >= 1");
    return static_cast<double>(m) * (m - 1) / (2.0 * m - 1.0);
}

double xi_exact_pvalue(double observed_xi, int n0, int n1) {
    if (n0 < 1 || n1 < 1) throw std::domain_error("xi_exact_pvalue: need n0, n1 >= 1");
    const double n = static_cast<double>(n0 + n1);
    const double tau_cont = (1.0 - observed_xi) * 2.0 * n0 * n1 / n;
    const double tau_rounded = std::round(tau_cont);
    if (std::fabs(tau_cont - tau_rounded) > 1e-9)
        throw InconsistencyError("xi_exact_pvalue: observed xi does not invert to an integer jump count");
    const int tau_obs = static_cast<int>(tau_rounded);
    const TauDistribution dist = tau_pmf(n0, n1);
    if (tau_obs < dist.support_min || tau_obs > dist.support_max())
        throw InconsistencyError("xi_exact_pvalue: implied jump count outside the support");
    return dist.cdf(tau_obs);
}

}  // namespace ranksel
