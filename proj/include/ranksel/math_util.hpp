#pragma once

#include <cstdint>

namespace ranksel {

// Exact binomial coefficient C(n, k) for n <= 66 (largest n for which every
// C(n, k) fits in uint64_t). Throws std::domain_error outside that range.
std::uint64_t binom_exact(int n, int k);

// log C(n, k) in long double precision, valid for any 0 <= k <= n.
long double log_binom(int n, int k);

// C(n0, x) * C(n1, x) / C(n0 + n1, n0) evaluated in long double.
// Uses exact integer arithmetic when n0 + n1 < 64, log-domain otherwise.
long double binom_product_ratio(int n0, int n1, int x);

// Standard normal CDF / survival function.
double normal_cdf(double z);
double normal_sf(double z);

// Inverse standard normal CDF (Wichura's AS 241, double precision branch).
// Requires u in (0, 1).
double inverse_normal_cdf(double u);

// Harmonic number H_p = sum_{k=1}^{p} 1/k.
double harmonic_number(std::int64_t p);

}  // namespace ranksel
