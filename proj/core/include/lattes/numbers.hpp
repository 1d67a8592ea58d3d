#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lattes {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Trial-division primality test for small integers.
bool is_prime(std::int64_t n);

/// Distinct prime factors of |n| in ascending order. n must be nonzero.
std::vector<std::int64_t> distinct_prime_factors(std::int64_t n);

/// base^e for nonnegative e.
BigInt big_pow(const BigInt& base, unsigned e);

/// True iff the rational is an integer.
bool is_integral(const Rational& r);

}  // namespace lattes
