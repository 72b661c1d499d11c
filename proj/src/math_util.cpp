#include "ranksel/math_util.hpp"

#include <cmath>
#include <stdexcept>

namespace ranksel {

std::uint64_t binom_exact(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("binom_exact: k out of [0, n]");
    if (n > 66) throw std::domain_error("binom_exact: n too large for uint64");
    if (k > n - k) k = n - k;
    // Multiplicative formula; the running value C(n-k+i, i) is itself a
    // binomial coefficient, so with n <= 66 the 128-bit product never
    // overflows and the division is always exact.
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - k + i);
        acc /= static_cast<unsigned __int128>(i);
    }
    return static_cast<std::uint64_t>(acc);
}

long double log_binom(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("log_binom: k out of [0, n]");
    return std::lgamma(static_cast<long double>(n) + 1.0L)
         - std::lgamma(static_cast<long double>(k) + 1.0L)
         - std::lgamma(static_cast<long double>(n - k) + 1.0L);
}

long double binom_product_ratio(int n0, int n1, int x) {
    const int n = n0 + n1;
    if (x < 0 || x > n0 || x > n1) return 0.0L;
    if (n < 64) {
        const long double num = static_cast<long double>(binom_exact(n0, x))
                              * static_cast<long double>(binom_exact(n1, x));
        return num / static_cast<long double>(binom_exact(n, n0));
    }
    return std::exp(log_binom(n0, x) + log_binom(n1, x) - log_binom(n, n0));
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_sf(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double inverse_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("inverse_normal_cdf: u must be in (0,1)");
    // AS 241 (Wichura 1988), PPND16.
    const double q = u - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                  1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                  1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                  5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                  4.2313330701600911252e+1) * r + 1.0);
    }
    r = (q < 0.0) ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                    3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                    4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                    2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                    5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                    5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

double harmonic_number(std::int64_t p) {
    double h = 0.0;
    for (std::int64_t k = 1; k <= p; ++k) h += 1.0 / static_cast<double>(k);
    return h;
}

}  // namespace ranksel
