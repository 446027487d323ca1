#include "toricount/rational.hpp"

#include <limits>
#include <numeric>

#include "toricount/error.hpp"

namespace toricount {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(s.begin());
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
      throw ParseError("bad rational literal: " + s);
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
  if (r.get_den() == 0) throw ParseError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(const Dim& value) { return value ? value->get_str() : "-inf"; }

Rational pow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    Rational inv = 1 / base;
    return pow(inv, -exp);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

long to_long(const Integer& value) {
  if (!value.fits_slong_p()) throw DomainError("integer does not fit in a machine word");
  return value.get_si();
}

Dim max_dim(const Dim& a, const Dim& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? b : a;
}

long gcd(long a, long b) { return std::gcd(a, b); }

long lcm(long a, long b) { return std::lcm(a, b); }

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long prime_of_prime_power(long q) {
  if (q < 2) return 0;
  long p = 0;
  for (long f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) return q;
  long rest = q;
  while (rest % p == 0) rest /= p;
  return rest == 1 ? p : 0;
}

}  // namespace toricount
