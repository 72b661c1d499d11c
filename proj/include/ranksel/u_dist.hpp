#pragma once

#include <vector>

#include "ranksel/stats.hpp"

namespace ranksel {

// Exact null distribution of the Mann-Whitney U statistic over all C(n, n0)
// label arrangements, built by the classical count recurrence.
struct UNullDistribution {
    int n0 = 0;
    int n1 = 0;
    std::vector<double> pmf;  // pmf[u] = P(U = u), u in {0, ..., n0*n1}

    double mean() const;
    double variance() const;
    double cdf(double u) const;       // P(U <= u)
    double upper_tail(double u) const;  // P(U >= u)
};

// Throws std::domain_error unless n0, n1 >= 1.
UNullDistribution u_null_distribution(int n0, int n1);

// Exact tail probability of the observed U. Two-sided = 2*min(tails),
// capped at 1.
double u_exact_pvalue(double observed_u, int n0, int n1, Alternative alternative);

// Continuity-corrected Gaussian approximation with the null moments
// mean = n0*n1/2, variance = n0*n1*(n+1)/12.
double u_normal_approx_pvalue(double observed_u, int n0, int n1, Alternative alternative);

}  // namespace ranksel
