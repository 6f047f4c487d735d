#include "indtree/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "indtree/special.hpp"

namespace indtree {

namespace {

void check_np(long long n, double p) {
  if (n < 1) throw std::domain_error("threshold: requires n >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("threshold: requires 0 < p <= 1");
  if (!(static_cast<double>(n) * p > 1.0)) throw std::domain_error("threshold: requires np > 1");
}

double log_ex_or_neg_inf(long long n, long long k, double p) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return log_expected_tree_count(n, k, p).log_abs();
}

}  // namespace

LogReal log_expected_tree_count(long long n, long long k, double p) {
  if (k < 1 || k > n) throw std::domain_error("log_expected_tree_count: requires 1 <= k <= n");
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::domain_error("log_expected_tree_count: requires 0 < p <= 1");
  }
  const double kd = static_cast<double>(k);
  double log_value = log_binomial(n, k);
  if (k != 1) log_value += (kd - 2.0) * std::log(kd);
  if (k > 1) log_value += (kd - 1.0) * std::log(p);
  const long long complement_exp = k * (k - 1) / 2 - k + 1;
  if (complement_exp != 0) {
    if (p == 1.0) return LogReal::zero();  // (1-p)^e with e > 0
    log_value += static_cast<double>(complement_exp) * std::log1p(-p);
  }
  return LogReal::from_log(log_value);
}

double expectation_ratio(long long n, long long k, double p) {
  if (k < 1 || k >= n) throw std::domain_error("expectation_ratio: requires 1 <= k < n");
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("expectation_ratio: requires 0 < p <= 1");
  const double kd = static_cast<double>(k);
  double r = static_cast<double>(n - k) * p;
  r *= std::pow((kd + 1.0) / kd, kd - 2.0);
  if (k > 1) r *= std::exp((kd - 1.0) * std::log1p(-p));
  return r;
}

FlaggedRatio fortified_ratio(long long n, long long k, double p) {
  if (k < 1 || k > n) throw std::domain_error("fortified_ratio: requires 1 <= k <= n");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("fortified_ratio: requires 0 < p < 1");
  if (k == n) return {1.0, false};
  if (k <= 2) return {0.0, true};  // no outside vertex can reach 3 neighbors

  const double kd = static_cast<double>(k);
  const double log_q = std::log1p(-p);
  double low_sum = 0.0;  // P[Bin(k, p) <= 2]
  for (int i = 0; i <= 2; ++i) {
    low_sum += std::exp(log_binomial(k, i) + i * std::log(p) + (kd - i) * log_q);
  }
  double log_base;
  if (low_sum >= 1.0) {
    return {0.0, true};
  } else if (low_sum <= 0.5) {
    log_base = std::log1p(-low_sum);
  } else {
    // The complement is small; sum the upper binomial tail directly to
    // avoid cancellation in 1 - low_sum.
    double tail = 0.0;
    for (long long i = 3; i <= k; ++i) {
      const double term = std::exp(log_binomial(k, i) + i * std::log(p) + (kd - i) * log_q);
      tail += term;
      if (i > static_cast<long long>(kd * p) + 3 && term < tail * 1e-18) break;
    }
    if (tail <= 0.0) return {0.0, true};
    log_base = std::log(tail);
  }
  return {std::exp(static_cast<double>(n - k) * log_base), false};
}

FlaggedRatio maximal_ratio(long long n, long long k, double p) {
  if (k < 1 || k > n) throw std::domain_error("maximal_ratio: requires 1 <= k <= n");
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("maximal_ratio: requires 0 < p <= 1");
  if (k == n) return {1.0, false};
  double base;  // k p (1-p)^{k-1}
  if (p == 1.0) {
    base = k == 1 ? 1.0 : 0.0;
  } else {
    base = static_cast<double>(k) * p * std::exp((k - 1) * std::log1p(-p));
  }
  if (base >= 1.0) return {0.0, true};
  return {std::exp(static_cast<double>(n - k) * std::log1p(-base)), false};
}

double markov_tail(long long n, double p, long long k) {
  const LogReal expected = log_expected_tree_count(n, k, p);
  if (expected.is_zero()) return 0.0;
  if (expected.log_abs() >= 0.0) return 1.0;
  return std::exp(expected.log_abs());
}

ThresholdReport compute_threshold(long long n, double p) {
  check_np(n, p);
  ThresholdReport report;
  report.n = n;
  report.p = p;
  const double ln_np = std::log(static_cast<double>(n) * p);
  report.ln_ln_np = std::log(ln_np);
  report.approx_k = (2.0 * ln_np + 2.0) / p;

  const auto above_cut = [&](long long k) {
    return log_ex_or_neg_inf(n, k, p) > report.ln_ln_np;
  };

  // E[X_1] = n > ln(np) always, so {k : E[X_k] > ln(np)} is a prefix
  // interval [1, k0] of the unimodal expectation curve.
  long long k = std::llround(report.approx_k);
  k = std::max<long long>(1, std::min<long long>(n, k));
  if (above_cut(k)) {
    while (k < n && above_cut(k + 1)) ++k;
  } else {
    while (k > 1 && !above_cut(k)) --k;
  }
  report.k0 = k;

  if (!(log_ex_or_neg_inf(n, report.k0, p) > report.ln_ln_np &&
        report.ln_ln_np >= log_ex_or_neg_inf(n, report.k0 + 1, p))) {
    throw std::logic_error("compute_threshold: crossing certification failed");
  }

  // The expectation ratio must be decreasing where the scan certifies the
  // crossing; a violation would mean the interval picture is wrong.
  {
    double prev = std::numeric_limits<double>::infinity();
    for (long long kk = std::max<long long>(1, report.k0 - 2);
         kk <= std::min<long long>(n - 1, report.k0 + 2); ++kk) {
      const double r = expectation_ratio(n, kk, p);
      if (kk > std::max<long long>(1, report.k0 - 2) && r > prev * (1.0 + 1e-9)) {
        throw std::logic_error("compute_threshold: non-monotone expectation ratio in window");
      }
      prev = r;
    }
  }

  // Bracket the crossing. High side: step past k0+1 until the ratio drops
  // below 1/2 (from there the expectation at least halves per step), making
  // sure membership never flips back. Low side: the set {E > ln(np)} must
  // reach k = 1 without gaps; spot-check geometrically spaced points.
  {
    long long hi = report.k0 + 1;
    for (int steps = 0; hi < n && expectation_ratio(n, hi, p) >= 0.5 && steps < 64; ++steps) {
      ++hi;
      if (above_cut(hi)) {
        throw std::logic_error("compute_threshold: membership re-entered above k0");
      }
    }
    for (long long lo = report.k0; lo >= 1; lo /= 2) {
      if (!above_cut(lo)) {
        throw std::logic_error("compute_threshold: membership gap below k0");
      }
      if (lo == 1) break;
    }
  }

  const auto unit_or_more = [&](long long kk) { return log_ex_or_neg_inf(n, kk, p) >= 0.0; };
  long long ku = report.k0;
  if (unit_or_more(ku)) {
    while (ku < n && unit_or_more(ku + 1)) ++ku;
  } else {
    while (ku > 1 && !unit_or_more(ku)) --ku;
  }
  report.k_unit = ku;
  report.k_unit_adjacent = (ku == report.k0 || ku == report.k0 + 1);

  report.drift_cut = static_cast<double>(report.k0) -
                     1.0 / (4.0 * static_cast<double>(n) * p * p);
  for (long long kk = std::max<long long>(1, report.k0 - 1); kk <= report.k0 + 2; ++kk) {
    report.log_ex[kk] = log_ex_or_neg_inf(n, kk, p);
  }
  return report;
}

DriftTail drift_tail(long long n, double p) {
  check_np(n, p);
  const ThresholdReport report = compute_threshold(n, p);
  DriftTail result;
  const double width = 1.0 / (4.0 * static_cast<double>(n) * p * p);
  result.window_collapsed = width < 1.0;
  result.k_low = std::max<long long>(
      1, static_cast<long long>(std::ceil(static_cast<double>(report.k0) - width)));
  result.k_high = std::min(n, report.k0 + 1);

  LogReal total = LogReal::zero();
  for (long long k = result.k_low; k <= result.k_high; ++k) {
    const LogReal expected = log_expected_tree_count(n, k, p);
    const double ratio = maximal_ratio(n, k, p).value;
    const LogReal term = expected * LogReal::from_value(ratio);
    total = total + term;
    result.terms.push_back({k, expected.log_abs(), ratio, term.value()});
  }
  result.value = total.value();
  return result;
}

}  // namespace indtree
