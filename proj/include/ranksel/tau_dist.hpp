#pragma once

#include <vector>

namespace ranksel {

// Exact conditional null distribution of the jump count tau over binary
// sequences with n0 zeros and n1 ones. Support is {1, ..., 2*min(n0,n1)},
// shortened by one when n0 == n1.
struct TauDistribution {
    int n0 = 0;
    int n1 = 0;
    int support_min = 1;
    std::vector<double> pmf;  // pmf[x - support_min] = P(tau = x)

    int support_max() const { return support_min + static_cast<int>(pmf.size()) - 1; }
    double prob(int x) const;

    double mean() const;
    double second_moment() const;
    double variance() const;

    // P(tau <= x), clamped tails.
    double cdf(int x) const;
};

// Closed-form pmf. Throws std::domain_error unless n0, n1 >= 1.
TauDistribution tau_pmf(int n0, int n1);

// E[tau] = 2*n0*n1 / (n0+n1).
double tau_mean(int n0, int n1);

// Var(tau) = m(m-1)/(2m-1) for equal group sizes n0 = n1 = m.
double tau_variance_equal(int m);

// Upper-tail p-value P(xi >= observed_xi) = P(tau <= tau_obs), one-sided:
// large xi means dependence. Throws InconsistencyError when observed_xi
// does not invert to an integer jump count in the support (1e-9 tolerance).
double xi_exact_pvalue(double observed_xi, int n0, int n1);

}  // namespace ranksel
