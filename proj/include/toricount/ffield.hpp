#pragma once

#include <cstdint>
#include <vector>

namespace toricount {

/// GF(q) for a prime power q, elements encoded as 0..q-1 (base-p digits of
/// the polynomial representative), with precomputed operation tables.
class FiniteField {
 public:
  explicit FiniteField(long q);

  int size() const { return q_; }
  int characteristic() const { return p_; }
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  /// Throws on zero.
  int inv(int a) const;

 private:
  int q_;
  int p_;
  std::vector<int> add_;
  std::vector<int> mul_;
  std::vector<int> neg_;
  std::vector<int> inv_;
};

/// Univariate polynomial over GF(q), coefficients ascending, no trailing zeros.
using Poly = std::vector<int>;

int degree(const Poly& f);  // -1 for the zero polynomial
Poly poly_mul(const FiniteField& k, const Poly& a, const Poly& b);
/// Remainder of a by b (b nonzero); the quotient goes to `quotient` when given.
Poly poly_rem(const FiniteField& k, const Poly& a, const Poly& b, Poly* quotient = nullptr);
Poly poly_gcd(const FiniteField& k, Poly a, Poly b);
Poly poly_monic(const FiniteField& k, const Poly& f);

/// The monic polynomial of degree d whose lower coefficients are the base-q
/// digits of index (0 <= index < q^d).
Poly monic_from_index(int q, int d, std::uint64_t index);
std::uint64_t index_of_monic(int q, const Poly& f);

}  // namespace toricount
