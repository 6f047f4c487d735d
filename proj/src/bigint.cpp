#include "indtree/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace indtree {

BigInt big_pow(const BigInt& base, long long exp) {
  if (exp < 0) throw std::domain_error("big_pow: negative exponent");
  BigInt result = 1;
  BigInt b = base;
  long long e = exp;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

BigInt big_factorial(long long n) {
  if (n < 0) throw std::domain_error("big_factorial: requires n >= 0");
  BigInt result = 1;
  for (long long i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt big_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("big_binomial: requires 0 <= k <= n");
  const long long kk = std::min(k, n - k);
  BigInt result = 1;
  for (long long i = 1; i <= kk; ++i) {
    result *= (n - kk + i);
    result /= i;  // exact at every step
  }
  return result;
}

double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_big: requires a positive value");
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits < 900) return std::log(v.convert_to<double>());
  constexpr double kLn2 = 0.69314718055994530942;
  const BigInt top = v >> (bits - 64);
  return std::log(top.convert_to<double>()) + static_cast<double>(bits - 64) * kLn2;
}

}  // namespace indtree
