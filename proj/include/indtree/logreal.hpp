#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace indtree {

// Signed scalar stored as a sign and the natural log of the magnitude.
// Covers the dynamic range of expectation values and pair counts that
// overflow double long before they stop being interesting (1e300 * 1e300
// is exact on the log scale).
//
// sign == 0 encodes exact zero; log_abs is meaningless in that state.
// Addition uses log-sum-exp. When opposite-sign inputs cancel to a result
// 30 or more decimal orders below the larger input, the result carries a
// sticky `cancelled` flag so downstream variance-style differences can be
// recognized as noise.
class LogReal {
 public:
  static constexpr double kCancelOrders = 30.0;

  LogReal() = default;

  static LogReal zero() { return LogReal(); }
  static LogReal one() { return from_log(0.0); }

  static LogReal from_value(double v) {
    if (std::isnan(v)) throw std::domain_error("LogReal: NaN input");
    if (v == 0.0) return zero();
    LogReal r;
    r.sign_ = v > 0 ? +1 : -1;
    r.log_abs_ = std::log(std::abs(v));
    return r;
  }

  static LogReal from_log(double log_abs, int sign = +1) {
    if (sign == 0) return zero();
    if (sign != +1 && sign != -1) throw std::domain_error("LogReal: sign must be -1, 0 or +1");
    if (std::isnan(log_abs)) throw std::domain_error("LogReal: NaN log magnitude");
    if (log_abs == -std::numeric_limits<double>::infinity()) return zero();
    LogReal r;
    r.sign_ = sign;
    r.log_abs_ = log_abs;
    return r;
  }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool cancelled() const { return cancelled_; }

  // ln|x|, -inf for zero.
  double log_abs() const {
    return sign_ == 0 ? -std::numeric_limits<double>::infinity() : log_abs_;
  }

  // Conversion back to double; overflows to +-inf, underflows to 0.
  double value() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_abs_); }

  LogReal operator*(const LogReal& o) const {
    LogReal r;
    r.cancelled_ = cancelled_ || o.cancelled_;
    if (sign_ == 0 || o.sign_ == 0) return r;
    r.sign_ = sign_ * o.sign_;
    r.log_abs_ = log_abs_ + o.log_abs_;
    return r;
  }

  LogReal operator/(const LogReal& o) const {
    if (o.sign_ == 0) throw std::domain_error("LogReal: division by zero");
    LogReal r;
    r.cancelled_ = cancelled_ || o.cancelled_;
    if (sign_ == 0) return r;
    r.sign_ = sign_ * o.sign_;
    r.log_abs_ = log_abs_ - o.log_abs_;
    return r;
  }

  LogReal operator+(const LogReal& o) const {
    LogReal r;
    r.cancelled_ = cancelled_ || o.cancelled_;
    if (sign_ == 0) {
      r.sign_ = o.sign_;
      r.log_abs_ = o.log_abs_;
      return r;
    }
    if (o.sign_ == 0) {
      r.sign_ = sign_;
      r.log_abs_ = log_abs_;
      return r;
    }
    const double hi = std::max(log_abs_, o.log_abs_);
    const double lo = std::min(log_abs_, o.log_abs_);
    if (sign_ == o.sign_) {
      r.sign_ = sign_;
      r.log_abs_ = hi + std::log1p(std::exp(lo - hi));
      return r;
    }
    if (log_abs_ == o.log_abs_) {
      r.cancelled_ = true;  // exact cancellation to zero
      return r;
    }
    r.sign_ = log_abs_ > o.log_abs_ ? sign_ : o.sign_;
    r.log_abs_ = hi + std::log1p(-std::exp(lo - hi));
    if (hi - r.log_abs_ >= kCancelOrders * kLn10) r.cancelled_ = true;
    return r;
  }

  LogReal operator-(const LogReal& o) const { return *this + o.negated(); }

  LogReal negated() const {
    LogReal r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  // x^e for real e. Negative bases require an integral exponent.
  LogReal pow(double e) const {
    if (std::isnan(e)) throw std::domain_error("LogReal: NaN exponent");
    if (sign_ == 0) {
      if (e > 0) return zero();
      if (e == 0) return one();
      throw std::domain_error("LogReal: zero to a negative power");
    }
    int s = +1;
    if (sign_ < 0) {
      if (e != std::floor(e)) throw std::domain_error("LogReal: negative base, fractional exponent");
      s = std::fmod(std::abs(e), 2.0) < 0.5 ? +1 : -1;
    }
    LogReal r;
    r.cancelled_ = cancelled_;
    r.sign_ = s;
    r.log_abs_ = log_abs_ * e;
    if (r.log_abs_ == -std::numeric_limits<double>::infinity()) return zero();
    return r;
  }

  bool operator==(const LogReal& o) const {
    if (sign_ != o.sign_) return false;
    return sign_ == 0 || log_abs_ == o.log_abs_;
  }
  bool operator!=(const LogReal& o) const { return !(*this == o); }

  bool operator<(const LogReal& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    if (sign_ == 0) return false;
    return sign_ > 0 ? log_abs_ < o.log_abs_ : log_abs_ > o.log_abs_;
  }

 private:
  static constexpr double kLn10 = 2.302585092994045684;

  int sign_ = 0;
  double log_abs_ = -std::numeric_limits<double>::infinity();
  bool cancelled_ = false;
};

}  // namespace indtree
