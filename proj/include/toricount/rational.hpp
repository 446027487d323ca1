#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace toricount {

using Integer = mpz_class;
using Rational = mpq_class;

/// Virtual dimension of a class. `std::nullopt` stands for -infinity (the zero class).
using Dim = std::optional<Rational>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
std::string to_string(const Dim& value);

/// base^exp for any integer exp (base must be nonzero when exp < 0).
Rational pow(const Rational& base, long exp);
Integer pow(const Integer& base, unsigned long exp);

bool is_integer(const Rational& value);
long to_long(const Integer& value);

/// Larger of two dimensions, with nullopt as the bottom element.
Dim max_dim(const Dim& a, const Dim& b);

long gcd(long a, long b);
long lcm(long a, long b);

/// Floor division for possibly negative numerators.
long floor_div(long a, long b);

/// Returns p if q = p^k for a prime p and k >= 1, else 0.
long prime_of_prime_power(long q);

}  // namespace toricount
