#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace picodim {

/// Exact field element. gmpxx keeps mpq values canonical after every operation.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p" or "p/q" (optional leading sign). Throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);
BigInt pow(const BigInt& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);

/// Number of binary bracketings of n+1 leaves.
std::uint64_t catalan(int n);

/// True if the integer fits into an unsigned 64-bit value.
bool fits_u64(const BigInt& z);

}  // namespace picodim
