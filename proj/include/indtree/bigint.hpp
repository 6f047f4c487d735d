#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace indtree {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt big_pow(const BigInt& base, long long exp);
BigInt big_factorial(long long n);
BigInt big_binomial(long long n, long long k);

// Natural log of a positive big integer, usable far beyond double range.
double log_big(const BigInt& v);

}  // namespace indtree
