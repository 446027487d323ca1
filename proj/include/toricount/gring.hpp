#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toricount/rational.hpp"

namespace toricount {

class Fan;

enum class ArithOp { add, sub, mul };

/// An element of Q[L^{1/r}, L^{-1/r}]: the Laurent-polynomial part of the
/// Grothendieck ring with rational powers of L, carrying the dimension
/// filtration.
///
/// Stored canonically: no zero coefficients, exponents ascending, and the
/// root order reduced to the least r such that every exponent lies in (1/r)Z.
/// Equality is therefore plain structural equality.
class MotClass {
 public:
  MotClass() = default;
  MotClass(long value) : MotClass(Rational(value)) {}  // NOLINT: implicit constants are convenient
  MotClass(const Rational& value);                     // NOLINT

  /// The class of the affine line.
  static MotClass lefschetz();
  /// coeff * L^exponent.
  static MotClass monomial(const Rational& coeff, const Rational& exponent);

  int root_order() const { return root_order_; }
  /// Exponent numerators over root_order(), ascending, with nonzero coefficients.
  const std::vector<std::pair<long, Rational>>& terms() const { return terms_; }
  /// (exponent, coefficient) pairs, ascending in exponent.
  std::vector<std::pair<Rational, Rational>> monomials() const;

  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of L^exponent.
  Rational coefficient(const Rational& exponent) const;
  /// Constant coefficient if the class is a rational constant.
  bool is_constant() const;

  /// Max exponent over nonzero terms; -infinity (nullopt) for zero.
  Dim virtual_dimension() const;
  /// Drops every term of dimension strictly below -m.
  MotClass truncate_filtration(const Rational& m) const;
  /// L -> L^e (exponents scaled by e).
  MotClass substitute_power(long e) const;

  MotClass& operator+=(const MotClass& other);
  MotClass& operator-=(const MotClass& other);
  MotClass& operator*=(const MotClass& other);
  MotClass& operator*=(const Rational& scalar);
  MotClass operator-() const;

  friend MotClass operator+(MotClass a, const MotClass& b) { return a += b; }
  friend MotClass operator-(MotClass a, const MotClass& b) { return a -= b; }
  friend MotClass operator*(const MotClass& a, const MotClass& b);
  friend MotClass operator*(MotClass a, const Rational& s) { return a *= s; }
  friend MotClass operator*(const Rational& s, MotClass a) { return a *= s; }
  friend bool operator==(const MotClass& a, const MotClass& b) {
    return a.root_order_ == b.root_order_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MotClass& a, const MotClass& b) { return !(a == b); }

  /// "a*L^{p/r} + ..." with exponents descending; parseable by `parse`.
  std::string to_string() const;
  static MotClass parse(std::string_view text);

 private:
  MotClass(int root_order, std::vector<std::pair<long, Rational>> terms);
  void canonicalize();
  std::vector<std::pair<long, Rational>> rescaled(int to) const;

  int root_order_ = 1;
  std::vector<std::pair<long, Rational>> terms_;
};

inline bool is_zero(const MotClass& a) { return a.is_zero(); }
inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
std::string to_string(const MotClass& a);

MotClass mot_arith(const MotClass& a, const MotClass& b, ArithOp op);

/// L^s; throws DomainError unless the denominator of s divides root_order.
MotClass lefschetz_power(const Rational& s, int root_order = 1);

/// An element of Q[x]/(x^r - q): the image of a MotClass under L -> q.
///
/// x stays symbolic even when q has a rational r-th root. The representation
/// is reduced to the least r compatible with the nonzero coefficients.
class AlgNumber {
 public:
  AlgNumber(long q, Rational value = 0);

  /// q^{floor(k/r)} x^{k mod r} in the ring with x^r = q.
  static AlgNumber x_power(long q, int root_order, long k);

  long modulus() const { return q_; }
  int root_order() const { return static_cast<int>(coeffs_.size()); }
  /// c_0..c_{r-1} for sum c_j x^j.
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return coeffs_.size() == 1; }
  const Rational& rational_part() const { return coeffs_[0]; }
  /// Real value with x = q^{1/r} > 0.
  long double to_long_double() const;

  AlgNumber& operator+=(const AlgNumber& other);
  AlgNumber& operator-=(const AlgNumber& other);
  AlgNumber& operator*=(const AlgNumber& other);
  AlgNumber operator-() const;
  friend AlgNumber operator+(AlgNumber a, const AlgNumber& b) { return a += b; }
  friend AlgNumber operator-(AlgNumber a, const AlgNumber& b) { return a -= b; }
  friend AlgNumber operator*(AlgNumber a, const AlgNumber& b) { return a *= b; }
  friend bool operator==(const AlgNumber& a, const AlgNumber& b) {
    return a.q_ == b.q_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const AlgNumber& a, const AlgNumber& b) { return !(a == b); }

  /// "c0 + c1*x + ..." followed by " [x^r=q]" when r > 1.
  std::string to_string() const;

 private:
  AlgNumber(long q, std::vector<Rational> coeffs);
  void lift(int r);
  void reduce();

  long q_;
  std::vector<Rational> coeffs_;
};

/// The counting measure: L -> q, L^{1/r} -> x with x^r = q.
AlgNumber count_specialize(const MotClass& a, long q);

/// L -> value for classes with integral exponents only.
Rational specialize_integral(const MotClass& a, const Rational& value);

/// Orbit decomposition class sum over all cones of (L-1)^{n - dim cone}.
MotClass toric_class(const Fan& fan);

}  // namespace toricount
