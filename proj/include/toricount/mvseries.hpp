#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toricount/error.hpp"
#include "toricount/fan.hpp"
#include "toricount/gring.hpp"
#include "toricount/rational.hpp"

namespace toricount {

int total_degree(const Multidegree& e);
bool componentwise_le(const Multidegree& a, const Multidegree& b);
Multidegree operator+(const Multidegree& a, const Multidegree& b);
Multidegree operator-(const Multidegree& a, const Multidegree& b);
Multidegree scaled(const Multidegree& a, int factor);
std::string to_string(const Multidegree& e);

/// Total degree first, then lexicographic in the fixed variable order.
struct DegLexLess {
  bool operator()(const Multidegree& a, const Multidegree& b) const;
};

/// The region of multidegrees on which a series is known exactly.
///
/// An exact series (no bound) is a polynomial known everywhere. Otherwise the
/// region is the intersection of an optional total-degree bound and an
/// optional per-variable box; both are down-closed.
class Truncation {
 public:
  static Truncation exact() { return {}; }
  static Truncation total_degree(int bound);
  static Truncation box(Multidegree bound);

  bool is_exact() const { return !total_ && !box_; }
  const std::optional<int>& total() const { return total_; }
  const std::optional<Multidegree>& box() const { return box_; }

  bool contains(const Multidegree& e) const;
  Truncation intersect(const Truncation& other) const;
  /// Region of n with e*n in this region (bounds divided by e, rounded down).
  Truncation divided(int e) const;
  /// Largest total degree in the region; throws for an exact region.
  int max_total_degree(std::size_t nvars) const;
  /// Every multidegree of the region in DegLex order; throws if unbounded.
  std::vector<Multidegree> region(std::size_t nvars) const;

  std::string to_string() const;
  friend bool operator==(const Truncation& a, const Truncation& b) {
    return a.total_ == b.total_ && a.box_ == b.box_;
  }

 private:
  std::optional<int> total_;
  std::optional<Multidegree> box_;
};

inline MotClass inverse_unit(const MotClass& c) {
  if (c.terms().size() != 1) throw DomainError("constant term " + c.to_string() + " is not a unit");
  auto [e, coeff] = c.monomials().front();
  return MotClass::monomial(1 / coeff, -e);
}

inline Rational inverse_unit(const Rational& c) {
  if (sgn(c) == 0) throw DomainError("constant term is zero");
  return 1 / c;
}

inline std::string coeff_text(const Rational& c) { return c.get_str(); }
inline std::string coeff_text(const MotClass& c) { return c.to_string(); }

/// Truncated multivariate power series over a coefficient ring C
/// (Rational or MotClass), sparse and keyed in DegLex order.
template <class C>
class MultiSeries {
 public:
  using TermMap = std::map<Multidegree, C, DegLexLess>;

  explicit MultiSeries(std::size_t nvars, Truncation trunc = Truncation::exact())
      : nvars_(nvars), trunc_(std::move(trunc)) {}

  static MultiSeries constant(std::size_t nvars, const C& c, Truncation trunc = Truncation::exact()) {
    MultiSeries s(nvars, std::move(trunc));
    s.add_to(Multidegree(nvars, 0), c);
    return s;
  }

  static MultiSeries monomial(std::size_t nvars, const Multidegree& e, const C& c,
                              Truncation trunc = Truncation::exact()) {
    MultiSeries s(nvars, std::move(trunc));
    s.add_to(e, c);
    return s;
  }

  std::size_t nvars() const { return nvars_; }
  const Truncation& truncation() const { return trunc_; }
  const TermMap& terms() const { return terms_; }

  /// Coefficient at e; throws if e lies outside the exact region.
  C coeff(const Multidegree& e) const {
    if (!trunc_.contains(e)) throw DomainError("coefficient " + to_string(e) + " lies outside the truncation");
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  /// Adds c at e; contributions outside the region are discarded.
  void add_to(const Multidegree& e, const C& c) {
    if (e.size() != nvars_) throw DomainError("multidegree has wrong number of variables");
    if (!trunc_.contains(e) || is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiSeries truncated(const Truncation& t) const {
    MultiSeries out(nvars_, trunc_.intersect(t));
    for (const auto& [e, c] : terms_)
      if (out.trunc_.contains(e)) out.terms_.emplace(e, c);
    return out;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    MultiSeries<D> out(nvars_, trunc_);
    for (const auto& [e, c] : terms_) out.add_to(e, f(c));
    return out;
  }

  MultiSeries& operator+=(const MultiSeries& other) {
    check_compatible(other);
    trunc_ = trunc_.intersect(other.trunc_);
    std::erase_if(terms_, [&](const auto& t) { return !trunc_.contains(t.first); });
    for (const auto& [e, c] : other.terms_) add_to(e, c);
    return *this;
  }

  MultiSeries& operator-=(const MultiSeries& other) {
    check_compatible(other);
    trunc_ = trunc_.intersect(other.trunc_);
    std::erase_if(terms_, [&](const auto& t) { return !trunc_.contains(t.first); });
    for (const auto& [e, c] : other.terms_) add_to(e, C(0) - c);
    return *this;
  }

  friend MultiSeries operator+(MultiSeries a, const MultiSeries& b) { return a += b; }
  friend MultiSeries operator-(MultiSeries a, const MultiSeries& b) { return a -= b; }

  friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
    a.check_compatible(b);
    MultiSeries out(a.nvars_, a.trunc_.intersect(b.trunc_));
    for (const auto& [ea, ca] : a.terms_) {
      if (!out.trunc_.contains(ea)) continue;
      for (const auto& [eb, cb] : b.terms_) {
        Multidegree e = ea + eb;
        if (out.trunc_.contains(e)) out.add_to(e, ca * cb);
      }
    }
    return out;
  }

  MultiSeries& operator*=(const MultiSeries& other) { return *this = *this * other; }

  /// Equality of coefficients on the intersection of the two regions.
  bool equal_within(const MultiSeries& other) const { return !first_difference(other).has_value(); }

  /// First multidegree (DegLex) in the common region where the series differ.
  std::optional<Multidegree> first_difference(const MultiSeries& other) const {
    check_compatible(other);
    Truncation common = trunc_.intersect(other.trunc_);
    std::optional<Multidegree> first;
    auto consider = [&](const Multidegree& e) {
      if (!common.contains(e)) return;
      if (first && !DegLexLess{}(e, *first)) return;
      auto a = terms_.find(e);
      auto b = other.terms_.find(e);
      C ca = a == terms_.end() ? C(0) : a->second;
      C cb = b == other.terms_.end() ? C(0) : b->second;
      if (!(ca == cb)) first = e;
    };
    for (const auto& t : terms_) consider(t.first);
    for (const auto& t : other.terms_) consider(t.first);
    return first;
  }

  /// One line per stored multidegree, "(e0,e1,...) := coefficient", in DegLex order.
  std::string dump() const {
    std::ostringstream os;
    for (const auto& [e, c] : terms_) os << to_string(e) << " := " << coeff_text(c) << "\n";
    return os.str();
  }

  void check_compatible(const MultiSeries& other) const {
    if (nvars_ != other.nvars_) throw DomainError("series have different variable sets");
  }

 private:
  std::size_t nvars_;
  Truncation trunc_;
  TermMap terms_;
};

using MotSeries = MultiSeries<MotClass>;
using RatSeries = MultiSeries<Rational>;

template <class C>
MultiSeries<C> series_arith(const MultiSeries<C>& f, const MultiSeries<C>& g, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return f + g;
    case ArithOp::sub:
      return f - g;
    case ArithOp::mul:
      return f * g;
  }
  return f;
}

/// H with H*G = F on the common region. A non-monomial divisor needs a
/// bounded region on at least one side.
template <class C>
MultiSeries<C> series_divide(const MultiSeries<C>& f, const MultiSeries<C>& g) {
  f.check_compatible(g);
  const std::size_t n = f.nvars();
  const Multidegree zero(n, 0);
  auto c0 = g.terms().find(zero);
  if (c0 == g.terms().end()) throw DomainError("divisor has zero constant term");
  const C inv = inverse_unit(c0->second);
  Truncation region = f.truncation().intersect(g.truncation());
  if (g.terms().size() == 1) {
    MultiSeries<C> out(n, region);
    for (const auto& [e, c] : f.terms()) out.add_to(e, c * inv);
    return out;
  }
  if (region.is_exact()) throw DomainError("division by a non-monomial needs a truncation");
  MultiSeries<C> out(n, region);
  for (const Multidegree& e : region.region(n)) {
    C acc = C(0);
    auto fe = f.terms().find(e);
    if (fe != f.terms().end()) acc = fe->second;
    for (const auto& [m, gm] : g.terms()) {
      if (m == zero) continue;
      if (DegLexLess{}(e, m)) break;
      if (!componentwise_le(m, e)) continue;
      auto h = out.terms().find(e - m);
      if (h != out.terms().end()) acc -= gm * h->second;
    }
    if (!is_zero(acc)) out.add_to(e, acc * inv);
  }
  return out;
}

/// F^a for F with constant term 1 and any rational a, on F's (bounded) region.
template <class C>
MultiSeries<C> series_pow(const MultiSeries<C>& f, const Rational& a) {
  const std::size_t n = f.nvars();
  const Multidegree zero(n, 0);
  if (!(f.coeff(zero) == C(1))) throw DomainError("power needs constant term 1");
  if (f.truncation().is_exact()) {
    if (is_integer(a) && a >= 0) {
      MultiSeries<C> out = MultiSeries<C>::constant(n, C(1));
      for (long k = 0; k < to_long(a.get_num()); ++k) out *= f;
      return out;
    }
    throw DomainError("power of a polynomial needs a truncation");
  }
  MultiSeries<C> out(n, f.truncation());
  out.add_to(zero, C(1));
  // Coefficient recurrence from F * E(G) = a * E(F) * G with E the Euler operator.
  for (const Multidegree& e : f.truncation().region(n)) {
    if (e == zero) continue;
    const int ne = total_degree(e);
    C acc = C(0);
    for (const auto& [m, fm] : f.terms()) {
      if (m == zero) continue;
      if (DegLexLess{}(e, m)) break;
      if (!componentwise_le(m, e)) continue;
      auto h = out.terms().find(e - m);
      if (h == out.terms().end()) continue;
      Rational w = (a + 1) * total_degree(m) - ne;
      if (sgn(w) == 0) continue;
      acc += (fm * h->second) * w;
    }
    if (!is_zero(acc)) out.add_to(e, acc * Rational(1, ne));
  }
  return out;
}

/// F * U(T^k) where U is univariate with coefficients u[0..M] known up to M
/// (or exactly, when `u_exact`). The region shrinks to what U determines.
template <class C>
MultiSeries<C> multiply_by_univariate(const MultiSeries<C>& f, const std::vector<C>& u,
                                      const Multidegree& k, bool u_exact = false) {
  const int deg_k = total_degree(k);
  if (deg_k <= 0) throw DomainError("substituted monomial must have positive degree");
  Truncation region = f.truncation();
  if (!u_exact) {
    const int known = static_cast<int>(u.size()) - 1;
    region = region.intersect(Truncation::total_degree((known + 1) * deg_k - 1));
  }
  MultiSeries<C> out(f.nvars(), region);
  for (const auto& [e, c] : f.terms()) {
    Multidegree shifted = e;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!region.contains(shifted)) break;
      if (!is_zero(u[i])) out.add_to(shifted, c * u[i]);
      shifted = shifted + k;
    }
  }
  return out;
}

/// Coefficients 0..degree of (1 - c t)^b, by the generalised binomial theorem.
template <class C>
std::vector<C> binomial_series(const C& c, const Integer& b, int degree) {
  std::vector<C> out;
  out.reserve(degree + 1);
  Rational binom = 1;
  C power = C(1);
  for (int i = 0; i <= degree; ++i) {
    if (i > 0) {
      binom = binom * Rational(Integer(b - (i - 1))) / Rational(i);
      power = power * (C(0) - c);
    }
    out.push_back(power * binom);
  }
  return out;
}

/// Product of two univariate coefficient vectors, kept up to `degree`.
template <class C>
std::vector<C> univariate_product(const std::vector<C>& a, const std::vector<C>& b, int degree) {
  std::vector<C> out(degree + 1, C(0));
  for (int i = 0; i <= degree && i < static_cast<int>(a.size()); ++i) {
    if (is_zero(a[i])) continue;
    for (int j = 0; i + j <= degree && j < static_cast<int>(b.size()); ++j)
      if (!is_zero(b[j])) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Univariate series coefficient vector 0..degree (missing terms are zero).
template <class C>
std::vector<C> univariate_coefficients(const MultiSeries<C>& f, int degree) {
  if (f.nvars() != 1) throw DomainError("expected a univariate series");
  std::vector<C> out(degree + 1, C(0));
  for (const auto& [e, c] : f.terms())
    if (e[0] <= degree) out[e[0]] = c;
  return out;
}

// -- MotClass-specific operations --------------------------------------------

struct GeomFactor {
  Multidegree k;
  Rational j;  // exponent of L
  Integer b;   // the factor is (1 - L^j T^k)^{-b}
  friend bool operator==(const GeomFactor&, const GeomFactor&) = default;
};

struct GeomFactorisation {
  std::size_t nvars = 0;
  Truncation region;
  std::vector<GeomFactor> factors;

  /// prod (1 - L^j T^k)^{-b} on the region.
  MotSeries replay() const;
};

/// Greedy factorisation of F (constant term 1, integral coefficients) as
/// prod (1 - L^j T^k)^{-b}, processing k in DegLex order. `bound` further
/// limits the total degree; a bounded region is required.
GeomFactorisation geometric_decompose(const MotSeries& f, std::optional<int> bound = std::nullopt);

struct Evaluation {
  MotClass value;
  /// Dimension bound for the dropped tail; nullopt (-inf) when F is exact.
  Dim tail_dim_bound;
};

/// max over stored nonzero d != 0 of vdim(a_d) / <alpha, d>; nullopt if no such d.
Dim convergence_margin(const MotSeries& f, const std::vector<Rational>& alpha);

/// Sum of a_e L^{<s,e>} over stored e. `slope` is the caller's bound on how
/// fast coefficient dimension grows per unit of total degree beyond the
/// truncation; it drives the tail estimate. Throws DivergenceError when the
/// margin at alpha = -s is >= 1.
Evaluation evaluate_at_powers(const MotSeries& f, const std::vector<Rational>& s,
                              const Rational& slope = 0);

}  // namespace toricount
