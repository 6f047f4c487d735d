#include "indtree/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace indtree {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHalfLogTwoPi = 0.918938533204672741780329736406;  // ln(2*pi)/2

// Godfrey's g = 7 coefficient set.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_log_gamma(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
  }
  return lanczos_log_gamma(x);
}

double log_factorial(long long n) {
  if (n < 0) throw std::domain_error("log_factorial: requires n >= 0");
  return log_gamma(static_cast<double>(n) + 1.0);
}

double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("log_binomial: requires 0 <= k <= n");
  const long long kk = std::min(k, n - k);
  const double nd = static_cast<double>(n);
  if (kk == 0) return 0.0;
  if (kk == 1) return std::log(nd);  // exact, avoids cancellation of huge lgammas
  const double kd = static_cast<double>(kk);
  return log_gamma(nd + 1.0) - log_gamma(kd + 1.0) - log_gamma(nd - kd + 1.0);
}

}  // namespace indtree
