#pragma once

namespace indtree {

// ln Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 coefficients),
// relative accuracy around 1e-14; exact at x = 1 and x = 2.
double log_gamma(double x);

// ln n! for n >= 0.
double log_factorial(long long n);

// ln C(n, k) for 0 <= k <= n. Exactly 0 for k = 0 and k = n, and exactly
// symmetric under k <-> n-k (the smaller index is always the one computed).
double log_binomial(long long n, long long k);

}  // namespace indtree
