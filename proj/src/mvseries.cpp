#include "toricount/mvseries.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace toricount {

int total_degree(const Multidegree& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool componentwise_le(const Multidegree& a, const Multidegree& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Multidegree operator+(const Multidegree& a, const Multidegree& b) {
  Multidegree out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Multidegree operator-(const Multidegree& a, const Multidegree& b) {
  Multidegree out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Multidegree scaled(const Multidegree& a, int factor) {
  Multidegree out(a);
  for (int& x : out) x *= factor;
  return out;
}

std::string to_string(const Multidegree& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e[i]);
  }
  return out + ")";
}

bool DegLexLess::operator()(const Multidegree& a, const Multidegree& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Truncation Truncation::total_degree(int bound) {
  if (bound < 0) throw DomainError("negative total-degree bound");
  Truncation t;
  t.total_ = bound;
  return t;
}

Truncation Truncation::box(Multidegree bound) {
  for (int b : bound)
    if (b < 0) throw DomainError("negative box bound");
  Truncation t;
  t.box_ = std::move(bound);
  return t;
}

bool Truncation::contains(const Multidegree& e) const {
  for (int x : e)
    if (x < 0) return false;
  if (total_ && toricount::total_degree(e) > *total_) return false;
  if (box_) {
    if (box_->size() != e.size()) throw DomainError("box bound has wrong number of variables");
    if (!componentwise_le(e, *box_)) return false;
  }
  return true;
}

Truncation Truncation::intersect(const Truncation& other) const {
  Truncation out = *this;
  if (other.total_) out.total_ = out.total_ ? std::min(*out.total_, *other.total_) : *other.total_;
  if (other.box_) {
    if (!out.box_) {
      out.box_ = other.box_;
    } else {
      if (out.box_->size() != other.box_->size()) throw DomainError("box bounds have different lengths");
      for (std::size_t i = 0; i < out.box_->size(); ++i) (*out.box_)[i] = std::min((*out.box_)[i], (*other.box_)[i]);
    }
  }
  return out;
}

Truncation Truncation::divided(int e) const {
  if (e <= 0) throw DomainError("divisor must be positive");
  Truncation out = *this;
  if (out.total_) *out.total_ /= e;
  if (out.box_)
    for (int& b : *out.box_) b /= e;
  return out;
}

int Truncation::max_total_degree(std::size_t nvars) const {
  if (is_exact()) throw DomainError("an exact series has no degree bound");
  int bound = total_ ? *total_ : std::numeric_limits<int>::max();
  if (box_) {
    if (box_->size() != nvars) throw DomainError("box bound has wrong number of variables");
    bound = std::min(bound, toricount::total_degree(*box_));
  }
  return bound;
}

namespace {

void compositions(int remaining, std::size_t index, Multidegree& current, const Truncation& t,
                  std::vector<Multidegree>& out) {
  const std::size_t n = current.size();
  if (index + 1 == n) {
    current[index] = remaining;
    if (t.contains(current)) out.push_back(current);
    return;
  }
  int cap = remaining;
  if (t.box()) cap = std::min(cap, (*t.box())[index]);
  for (int x = 0; x <= cap; ++x) {
    current[index] = x;
    compositions(remaining - x, index + 1, current, t, out);
  }
}

}  // namespace

std::vector<Multidegree> Truncation::region(std::size_t nvars) const {
  const int top = max_total_degree(nvars);
  std::vector<Multidegree> out;
  if (nvars == 0) {
    out.emplace_back();
    return out;
  }
  Multidegree current(nvars, 0);
  for (int t = 0; t <= top; ++t) compositions(t, 0, current, *this, out);
  return out;
}

std::string Truncation::to_string() const {
  if (is_exact()) return "exact";
  std::string out;
  if (total_) out = "total<=" + std::to_string(*total_);
  if (box_) {
    if (!out.empty()) out += ";";
    out += "box<=" + toricount::to_string(*box_);
  }
  return out;
}

MotSeries GeomFactorisation::replay() const {
  MotSeries out = MotSeries::constant(nvars, MotClass(1), region);
  const int top = region.max_total_degree(nvars);
  for (const GeomFactor& f : factors) {
    const int reach = top / total_degree(f.k);
    out = multiply_by_univariate(out, binomial_series(MotClass::monomial(1, f.j), Integer(-f.b), reach),
                                 f.k, true);
  }
  return out;
}

GeomFactorisation geometric_decompose(const MotSeries& f, std::optional<int> bound) {
  const std::size_t n = f.nvars();
  Truncation region = f.truncation();
  if (bound) region = region.intersect(Truncation::total_degree(*bound));
  if (region.is_exact()) throw DomainError("geometric decomposition needs a bounded region");
  const Multidegree zero(n, 0);
  if (!(f.coeff(zero) == MotClass(1))) throw DomainError("geometric decomposition needs constant term 1");

  GeomFactorisation out{n, region, {}};
  MotSeries residual = f.truncated(region);
  const int top = region.max_total_degree(n);
  for (const Multidegree& k : region.region(n)) {
    if (k == zero) continue;
    const MotClass c = residual.coeff(k);
    if (c.is_zero()) continue;
    const int reach = top / total_degree(k);
    std::vector<MotClass> u{MotClass(1)};
    for (const auto& [j, coeff] : c.monomials()) {
      if (!is_integer(coeff))
        throw DomainError("coefficient " + c.to_string() + " at " + to_string(k) + " has a non-integral multiplicity");
      const Integer b = coeff.get_num();
      out.factors.push_back({k, j, b});
      MotClass lj = MotClass::monomial(1, j);
      u = univariate_product(u, binomial_series(lj, b, reach), reach);
    }
    residual = multiply_by_univariate(residual, u, k, true);
  }
  return out;
}

Dim convergence_margin(const MotSeries& f, const std::vector<Rational>& alpha) {
  if (alpha.size() != f.nvars()) throw DomainError("alpha has wrong number of variables");
  Dim out;
  for (const auto& [e, c] : f.terms()) {
    if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) continue;
    Rational pairing = 0;
    for (std::size_t i = 0; i < e.size(); ++i) pairing += alpha[i] * e[i];
    if (sgn(pairing) <= 0)
      throw DomainError("<alpha, e> is not positive at " + to_string(e));
    Dim d = c.virtual_dimension();
    if (d) out = max_dim(out, Dim(Rational(*d / pairing)));
  }
  return out;
}

Evaluation evaluate_at_powers(const MotSeries& f, const std::vector<Rational>& s, const Rational& slope) {
  const std::size_t n = f.nvars();
  if (s.size() != n) throw DomainError("exponent tuple has wrong number of variables");
  std::vector<Rational> alpha;
  for (const Rational& x : s) alpha.push_back(-x);
  Dim margin = convergence_margin(f, alpha);
  if (margin && *margin >= 1)
    throw DivergenceError("convergence margin " + to_string(*margin) + " is not below 1");

  Evaluation out;
  const Truncation& t = f.truncation();
  Rational max_s = *std::max_element(s.begin(), s.end());
  for (const auto& [e, c] : f.terms()) {
    Rational pairing = 0;
    for (std::size_t i = 0; i < n; ++i) pairing += s[i] * e[i];
    out.value += c * MotClass::monomial(1, pairing);
    if (t.is_exact()) continue;
    const Rational base = *c.virtual_dimension() + pairing;
    if (t.total()) {
      const int dist = *t.total() + 1 - total_degree(e);
      out.tail_dim_bound = max_dim(out.tail_dim_bound, Dim(Rational(base + dist * (slope + max_s))));
    }
    if (t.box()) {
      for (std::size_t i = 0; i < n; ++i) {
        const int dist = (*t.box())[i] + 1 - e[i];
        out.tail_dim_bound = max_dim(out.tail_dim_bound, Dim(Rational(base + dist * (slope + s[i]))));
      }
    }
  }
  return out;
}

}  // namespace toricount
