#include "toricount/gring.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "toricount/error.hpp"
#include "toricount/fan.hpp"

namespace toricount {

MotClass::MotClass(const Rational& value) {
  if (sgn(value) != 0) terms_.emplace_back(0, value);
}

MotClass::MotClass(int root_order, std::vector<std::pair<long, Rational>> terms)
    : root_order_(root_order), terms_(std::move(terms)) {
  canonicalize();
}

MotClass MotClass::lefschetz() { return monomial(1, 1); }

MotClass MotClass::monomial(const Rational& coeff, const Rational& exponent) {
  Rational e = exponent;
  e.canonicalize();
  long den = to_long(e.get_den());
  long num = to_long(e.get_num());
  return MotClass(static_cast<int>(den), {{num, coeff}});
}

void MotClass::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<long, Rational>> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const auto& t) { return sgn(t.second) == 0; });
  terms_ = std::move(merged);
  long g = root_order_;
  for (const auto& t : terms_) g = std::gcd(g, std::labs(t.first));
  if (terms_.empty()) g = root_order_;
  if (g > 1) {
    root_order_ /= static_cast<int>(g);
    for (auto& t : terms_) t.first /= g;
  }
}

std::vector<std::pair<long, Rational>> MotClass::rescaled(int to) const {
  const long f = to / root_order_;
  auto out = terms_;
  for (auto& t : out) t.first *= f;
  return out;
}

std::vector<std::pair<Rational, Rational>> MotClass::monomials() const {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& [k, c] : terms_) {
    Rational e(k, root_order_);
    e.canonicalize();
    out.emplace_back(e, c);
  }
  return out;
}

Rational MotClass::coefficient(const Rational& exponent) const {
  Rational scaled = exponent * root_order_;
  if (!is_integer(scaled)) return 0;
  long k = to_long(scaled.get_num());
  for (const auto& t : terms_)
    if (t.first == k) return t.second;
  return 0;
}

bool MotClass::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

Dim MotClass::virtual_dimension() const {
  if (terms_.empty()) return std::nullopt;
  Rational d(terms_.back().first, root_order_);
  d.canonicalize();
  return d;
}

MotClass MotClass::truncate_filtration(const Rational& m) const {
  std::vector<std::pair<long, Rational>> kept;
  for (const auto& t : terms_) {
    if (Rational(t.first, root_order_) >= -m) kept.push_back(t);
  }
  return MotClass(root_order_, std::move(kept));
}

MotClass MotClass::substitute_power(long e) const {
  auto out = terms_;
  for (auto& t : out) t.first *= e;
  return MotClass(root_order_, std::move(out));
}

MotClass& MotClass::operator+=(const MotClass& other) {
  if (other.terms_.empty()) return *this;
  const int r = static_cast<int>(std::lcm(root_order_, other.root_order_));
  auto a = rescaled(r);
  auto b = other.rescaled(r);
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  root_order_ = r;
  terms_ = std::move(a);
  canonicalize();
  return *this;
}

MotClass& MotClass::operator-=(const MotClass& other) { return *this += -other; }

MotClass operator*(const MotClass& a, const MotClass& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  const int r = static_cast<int>(std::lcm(a.root_order_, b.root_order_));
  auto x = a.rescaled(r);
  auto y = b.rescaled(r);
  std::vector<std::pair<long, Rational>> out;
  out.reserve(x.size() * y.size());
  for (const auto& s : x)
    for (const auto& t : y) out.emplace_back(s.first + t.first, s.second * t.second);
  return MotClass(r, std::move(out));
}

MotClass& MotClass::operator*=(const MotClass& other) { return *this = *this * other; }

MotClass& MotClass::operator*=(const Rational& scalar) {
  if (sgn(scalar) == 0) {
    terms_.clear();
    root_order_ = 1;
    return *this;
  }
  for (auto& t : terms_) t.second *= scalar;
  return *this;
}

MotClass MotClass::operator-() const {
  MotClass out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

namespace {

std::string exponent_text(const Rational& e) {
  if (e == 1) return "L";
  if (is_integer(e) && e > 0) return "L^" + e.get_str();
  return "L^{" + e.get_str() + "}";
}

}  // namespace

std::string MotClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational e(it->first, root_order_);
    e.canonicalize();
    Rational c = it->second;
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << exponent_text(e);
    } else {
      os << mag.get_str() << "*" << exponent_text(e);
    }
  }
  return os.str();
}

std::string to_string(const MotClass& a) { return a.to_string(); }

MotClass MotClass::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> MotClass {
    throw ParseError("bad class text '" + std::string(text) + "': " + why);
  };
  auto read_rational = [&]() -> std::string {
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    return std::string(text.substr(start, pos - start));
  };

  MotClass result;
  skip();
  if (pos == text.size()) fail("empty");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational coeff = 1;
    bool have_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = parse_rational(read_rational());
      have_coeff = true;
      skip();
    }
    Rational exponent = 0;
    if (pos < text.size() && text[pos] == '*') {
      if (!have_coeff) fail("dangling *");
      ++pos;
      skip();
      if (pos == text.size() || text[pos] != 'L') fail("expected L after *");
    }
    if (pos < text.size() && text[pos] == 'L') {
      ++pos;
      exponent = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        if (pos < text.size() && (text[pos] == '{' || text[pos] == '(')) {
          char close = text[pos] == '{' ? '}' : ')';
          ++pos;
          skip();
          std::string r = read_rational();
          skip();
          if (pos == text.size() || text[pos] != close) fail("unclosed exponent");
          ++pos;
          exponent = parse_rational(r);
        } else {
          std::string r = read_rational();
          if (r.empty() || r.find('/') != std::string::npos) fail("bad exponent");
          exponent = parse_rational(r);
        }
      }
    } else if (!have_coeff) {
      fail("expected a term");
    }
    result += monomial(sign * coeff, exponent);
  }
  return result;
}

MotClass mot_arith(const MotClass& a, const MotClass& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
  }
  return {};
}

MotClass lefschetz_power(const Rational& s, int root_order) {
  Rational e = s;
  e.canonicalize();
  if (root_order < 1 || root_order % to_long(e.get_den()) != 0)
    throw DomainError("exponent " + e.get_str() + " needs a root order divisible by " +
                      e.get_den().get_str());
  return MotClass::monomial(1, e);
}

// ---------------------------------------------------------------------------

AlgNumber::AlgNumber(long q, Rational value) : q_(q), coeffs_{std::move(value)} {
  if (prime_of_prime_power(q) == 0) throw DomainError("modulus must be a prime power");
}

AlgNumber::AlgNumber(long q, std::vector<Rational> coeffs) : q_(q), coeffs_(std::move(coeffs)) {
  reduce();
}

AlgNumber AlgNumber::x_power(long q, int root_order, long k) {
  long a = floor_div(k, root_order);
  long b = k - a * root_order;
  std::vector<Rational> c(root_order, Rational(0));
  c[b] = pow(Rational(q), a);
  AlgNumber out(q);
  out.coeffs_ = std::move(c);
  out.reduce();
  return out;
}

bool AlgNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

void AlgNumber::lift(int r) {
  const int cur = root_order();
  if (r == cur) return;
  const int f = r / cur;
  std::vector<Rational> c(r, Rational(0));
  for (int j = 0; j < cur; ++j) c[j * f] = coeffs_[j];
  coeffs_ = std::move(c);
}

void AlgNumber::reduce() {
  const int r = root_order();
  int g = r;
  for (int j = 1; j < r; ++j)
    if (sgn(coeffs_[j]) != 0) g = std::gcd(g, j);
  if (g > 1) {
    std::vector<Rational> c(r / g, Rational(0));
    for (int j = 0; j < r; j += g) c[j / g] = coeffs_[j];
    coeffs_ = std::move(c);
  }
}

long double AlgNumber::to_long_double() const {
  long double sum = 0;
  const int r = root_order();
  for (int j = 0; j < r; ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    sum += static_cast<long double>(coeffs_[j].get_d()) *
           std::pow(static_cast<long double>(q_), static_cast<long double>(j) / r);
  }
  return sum;
}

AlgNumber& AlgNumber::operator+=(const AlgNumber& other) {
  if (q_ != other.q_) throw DomainError("AlgNumber moduli differ");
  AlgNumber b = other;
  const int r = static_cast<int>(std::lcm(root_order(), b.root_order()));
  lift(r);
  b.lift(r);
  for (int j = 0; j < r; ++j) coeffs_[j] += b.coeffs_[j];
  reduce();
  return *this;
}

AlgNumber& AlgNumber::operator-=(const AlgNumber& other) { return *this += -other; }

AlgNumber& AlgNumber::operator*=(const AlgNumber& other) {
  if (q_ != other.q_) throw DomainError("AlgNumber moduli differ");
  AlgNumber b = other;
  const int r = static_cast<int>(std::lcm(root_order(), b.root_order()));
  lift(r);
  b.lift(r);
  std::vector<Rational> c(r, Rational(0));
  for (int i = 0; i < r; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (int j = 0; j < r; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      Rational term = coeffs_[i] * b.coeffs_[j];
      int k = i + j;
      if (k >= r) {
        k -= r;
        term *= q_;
      }
      c[k] += term;
    }
  }
  coeffs_ = std::move(c);
  reduce();
  return *this;
}

AlgNumber AlgNumber::operator-() const {
  AlgNumber out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string AlgNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  const int r = root_order();
  for (int j = 0; j < r; ++j) {
    const Rational& c = coeffs_[j];
    if (sgn(c) == 0) continue;
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "x";
      if (j > 1) os << "^" << j;
    }
  }
  if (first) os << "0";
  if (r > 1) os << " [x^" << r << "=" << q_ << "]";
  return os.str();
}

AlgNumber count_specialize(const MotClass& a, long q) {
  AlgNumber out(q);
  const int r = a.root_order();
  for (const auto& [k, c] : a.terms()) {
    out += AlgNumber::x_power(q, r, k) * AlgNumber(q, c);
  }
  return out;
}

Rational specialize_integral(const MotClass& a, const Rational& value) {
  if (a.root_order() != 1) throw DomainError("class has fractional powers of L");
  Rational sum = 0;
  for (const auto& [k, c] : a.terms()) sum += c * pow(value, k);
  return sum;
}

MotClass toric_class(const Fan& fan) {
  const MotClass torus_factor = MotClass::lefschetz() - MotClass(1);
  MotClass total;
  for (RayMask cone : all_cones(fan)) {
    int codim = fan.dim() - std::popcount(cone);
    MotClass orbit(1);
    for (int i = 0; i < codim; ++i) orbit *= torus_factor;
    total += orbit;
  }
  return total;
}

}  // namespace toricount
