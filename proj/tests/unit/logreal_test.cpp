#include <doctest.h>

#include <cmath>

#include "indtree/logreal.hpp"
#include "indtree/rng.hpp"

using indtree::LogReal;

TEST_CASE("logreal basic arithmetic") {
  const LogReal two = LogReal::from_value(2.0);
  const LogReal three = LogReal::from_value(3.0);
  CHECK(doctest::Approx((two * three).value()).epsilon(1e-12) == 6.0);
  CHECK(doctest::Approx((three / two).value()).epsilon(1e-12) == 1.5);
  CHECK(doctest::Approx((two + three).value()).epsilon(1e-12) == 5.0);
  CHECK(doctest::Approx((two - three).value()).epsilon(1e-12) == -1.0);
  CHECK(doctest::Approx(two.pow(10.0).value()).epsilon(1e-12) == 1024.0);
}

TEST_CASE("logreal zero handling") {
  const LogReal zero = LogReal::zero();
  const LogReal x = LogReal::from_value(-7.25);
  CHECK(zero.is_zero());
  CHECK(zero.sign() == 0);
  CHECK((x + zero) == x);
  CHECK((zero + x) == x);
  CHECK((x * zero).is_zero());
  CHECK_THROWS_AS(x / zero, std::domain_error);
  CHECK(LogReal::from_value(0.0).is_zero());
  CHECK(zero.pow(3.0).is_zero());
  CHECK(zero.pow(0.0) == LogReal::one());
  CHECK_THROWS_AS(zero.pow(-1.0), std::domain_error);
}

TEST_CASE("huge magnitudes multiply without overflow") {
  const LogReal big = LogReal::from_value(1e300);
  const LogReal product = big * big;
  CHECK(product.sign() == 1);
  CHECK(std::abs(product.log_abs() - 600.0 * std::log(10.0)) < 1e-9);
  CHECK(std::isinf(product.value()));  // double overflow is explicit, log is exact
}

TEST_CASE("value round trip over the full double range") {
  indtree::UnitRng rng(20240817);
  for (int i = 0; i < 10000; ++i) {
    const double log10_x = -300.0 + 600.0 * rng.next_unit();
    const double x = std::pow(10.0, log10_x);
    const double back = LogReal::from_value(x).value();
    CHECK(std::abs(back - x) <= 1e-12 * x);
  }
}

TEST_CASE("signs propagate through products and powers") {
  const LogReal neg = LogReal::from_value(-2.0);
  CHECK((neg * neg).sign() == 1);
  CHECK((neg * neg * neg).sign() == -1);
  CHECK(neg.pow(2.0).sign() == 1);
  CHECK(neg.pow(3.0).sign() == -1);
  CHECK_THROWS_AS(neg.pow(0.5), std::domain_error);
}

TEST_CASE("cancellation flag on near-equal opposite-sign addition") {
  const LogReal a = LogReal::from_log(0.0, +1);
  const LogReal b = LogReal::from_log(-1e-31, -1);
  const LogReal diff = a + b;  // ~1e-31, over 30 orders below the inputs
  CHECK(diff.cancelled());
  CHECK(diff.sign() == 1);

  const LogReal exact = a + LogReal::from_log(0.0, -1);
  CHECK(exact.is_zero());
  CHECK(exact.cancelled());

  // flag is sticky through later operations
  CHECK((diff * LogReal::from_value(2.0)).cancelled());

  // benign additions stay unflagged
  CHECK_FALSE((a + LogReal::from_log(-1.0, -1)).cancelled());
  CHECK_FALSE((a + a).cancelled());
}

TEST_CASE("ordering") {
  CHECK(LogReal::from_value(-5.0) < LogReal::from_value(0.0));
  CHECK(LogReal::from_value(0.0) < LogReal::from_value(1e-300));
  CHECK(LogReal::from_value(2.0) < LogReal::from_value(3.0));
  CHECK_FALSE(LogReal::from_value(-1.0) < LogReal::from_value(-2.0));
  CHECK(LogReal::from_value(-3.0) < LogReal::from_value(-2.0));
}
