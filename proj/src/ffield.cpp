#include "toricount/ffield.hpp"

#include <string>

#include "toricount/error.hpp"
#include "toricount/rational.hpp"

namespace toricount {

namespace {

// Arithmetic on F_p[x] used only to build the tables.
std::vector<int> prime_poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

std::vector<int> prime_poly_rem(std::vector<int> a, const std::vector<int>& m, int p) {
  const int dm = static_cast<int>(m.size()) - 1;
  int lead_inv = 1;
  while (lead_inv * m.back() % p != 1) ++lead_inv;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    const int c = a[i] * lead_inv % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), dm));
  return a;
}

bool prime_poly_irreducible(const std::vector<int>& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int e = 1; 2 * e <= d; ++e) {
    long total = 1;
    for (int i = 0; i < e; ++i) total *= p;
    for (long idx = 0; idx < total; ++idx) {
      std::vector<int> g(e + 1, 0);
      long rest = idx;
      for (int i = 0; i < e; ++i) {
        g[i] = static_cast<int>(rest % p);
        rest /= p;
      }
      g[e] = 1;
      std::vector<int> r = prime_poly_rem(f, g, p);
      bool zero = true;
      for (int c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(long q) {
  const long p = prime_of_prime_power(q);
  if (p == 0) throw DomainError(std::to_string(q) + " is not a prime power");
  if (q > 1024) throw DomainError("field size " + std::to_string(q) + " is too large for table arithmetic");
  q_ = static_cast<int>(q);
  p_ = static_cast<int>(p);
  int k = 0;
  for (long x = q; x > 1; x /= p) ++k;

  std::vector<int> modulus;
  if (k > 1) {
    long total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (long idx = 0; idx < total && modulus.empty(); ++idx) {
      std::vector<int> f(k + 1, 0);
      long rest = idx;
      for (int i = 0; i < k; ++i) {
        f[i] = static_cast<int>(rest % p);
        rest /= p;
      }
      f[k] = 1;
      if (prime_poly_irreducible(f, p_)) modulus = f;
    }
  }
  auto digits = [&](int a) {
    std::vector<int> out(k, 0);
    for (int i = 0; i < k; ++i) {
      out[i] = a % p_;
      a /= p_;
    }
    return out;
  };
  auto encode = [&](const std::vector<int>& v) {
    int out = 0;
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) out = out * p_ + v[i];
    return out;
  };

  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    const std::vector<int> da = digits(a);
    for (int b = 0; b < q_; ++b) {
      const std::vector<int> db = digits(b);
      std::vector<int> sum(k);
      for (int i = 0; i < k; ++i) sum[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = encode(sum);
      if (k == 1) {
        mul_[a * q_ + b] = a * b % p_;
      } else {
        std::vector<int> prod = prime_poly_rem(prime_poly_mul(da, db, p_), modulus, p_);
        prod.resize(k, 0);
        mul_[a * q_ + b] = encode(prod);
      }
    }
  }
  for (int a = 0; a < q_; ++a)
    for (int b = 0; b < q_; ++b) {
      if (add_[a * q_ + b] == 0) neg_[a] = b;
      if (mul_[a * q_ + b] == 1) inv_[a] = b;
    }
}

int FiniteField::inv(int a) const {
  if (a == 0) throw DomainError("inverse of zero");
  return inv_[a];
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

namespace {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

}  // namespace

Poly poly_mul(const FiniteField& k, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

Poly poly_rem(const FiniteField& k, const Poly& a, const Poly& b, Poly* quotient) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  Poly r = a;
  trim(r);
  const int db = degree(b);
  const int lead_inv = k.inv(b.back());
  if (quotient) quotient->assign(std::max(0, degree(r) - db + 1), 0);
  for (int i = degree(r); i >= db; --i) {
    const int c = k.mul(r[i], lead_inv);
    if (c == 0) continue;
    if (quotient) (*quotient)[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = k.sub(r[i - db + j], k.mul(c, b[j]));
  }
  trim(r);
  if (quotient) trim(*quotient);
  return r;
}

Poly poly_gcd(const FiniteField& k, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : poly_monic(k, a);
}

Poly poly_monic(const FiniteField& k, const Poly& f) {
  if (f.empty()) return f;
  const int inv = k.inv(f.back());
  Poly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = k.mul(f[i], inv);
  return out;
}

Poly monic_from_index(int q, int d, std::uint64_t index) {
  Poly out(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    out[i] = static_cast<int>(index % q);
    index /= q;
  }
  out[d] = 1;
  return out;
}

std::uint64_t index_of_monic(int q, const Poly& f) {
  std::uint64_t out = 0;
  for (int i = degree(f) - 1; i >= 0; --i) out = out * q + f[i];
  return out;
}

}  // namespace toricount
