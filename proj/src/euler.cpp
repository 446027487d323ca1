#include "toricount/euler.hpp"

#include <bit>
#include <map>

#include "toricount/error.hpp"

namespace toricount {

LocalFactor::LocalFactor(MotSeries s) : series(std::move(s)) {
  if (!(series.coeff(Multidegree(series.nvars(), 0)) == MotClass(1)))
    throw DomainError("a local factor needs constant term 1");
}

namespace {

void check_multiplicities(std::size_t nvars, std::span<const int> m) {
  if (m.size() != nvars) throw DomainError("multiplicity tuple has wrong length");
  for (int x : m)
    if (x < 1) throw DomainError("multiplicities must be positive");
}

RayMask support(const Multidegree& e) {
  RayMask mask = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) mask |= RayMask{1} << i;
  return mask;
}

bool entries_admissible(const Multidegree& e, std::span<const int> m) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0 && e[i] < m[i]) return false;
  return true;
}

}  // namespace

LocalFactor classical_moebius(const Fan& fan) {
  const std::size_t n = fan.num_rays();
  if (n > 20) throw DomainError("too many rays for the Moebius polynomial");
  MotSeries out(n);
  const RayMask full = (RayMask{1} << n) - 1;
  for (RayMask t = 0; t <= full; ++t) {
    long mu = 0;
    // Sum over subsets s of t of (-1)^{|t \ s|} [s cone-supported].
    for (RayMask s = t;; s = (s - 1) & t) {
      if (fan.cone_supported(s)) mu += (std::popcount(t & ~s) % 2) ? -1 : 1;
      if (s == 0) break;
    }
    Multidegree e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = (t >> i) & 1;
    out.add_to(e, MotClass(mu));
  }
  return LocalFactor(std::move(out));
}

LocalFactor campana_admissible_local(const Fan& fan, std::span<const int> m, const Truncation& region) {
  const std::size_t n = fan.num_rays();
  check_multiplicities(n, m);
  MotSeries out(n, region);
  for (const Multidegree& e : region.region(n))
    if (entries_admissible(e, m) && fan.cone_supported(support(e))) out.add_to(e, MotClass(1));
  return LocalFactor(std::move(out));
}

LocalFactor campana_admissible_local(const Fan& fan, std::span<const int> m, int bound) {
  return campana_admissible_local(fan, m, Truncation::total_degree(bound));
}

LocalFactor unconstrained_local(std::span<const int> m, const Truncation& region) {
  const std::size_t n = m.size();
  check_multiplicities(n, m);
  MotSeries out(n, region);
  for (const Multidegree& e : region.region(n))
    if (entries_admissible(e, m)) out.add_to(e, MotClass(1));
  return LocalFactor(std::move(out));
}

LocalFactor campana_moebius(const Fan& fan, std::span<const int> m, const Truncation& region) {
  return LocalFactor(series_divide(campana_admissible_local(fan, m, region).series, unconstrained_local(m, region).series));
}

LocalFactor campana_moebius(const Fan& fan, std::span<const int> m, int bound) {
  return campana_moebius(fan, m, Truncation::total_degree(bound));
}

LocalFactor pole_cancelling_local(std::span<const int> m) {
  const std::size_t n = m.size();
  check_multiplicities(n, m);
  MotSeries out = MotSeries::constant(n, MotClass(1));
  for (std::size_t i = 0; i < n; ++i) {
    Multidegree k(n, 0);
    k[i] = m[i];
    MotSeries factor = MotSeries::constant(n, MotClass(1));
    factor.add_to(k, MotClass(-1));
    out *= factor;
  }
  return LocalFactor(std::move(out));
}

RatSeries specialize_series(const MotSeries& s, long q) {
  return s.map_coefficients([q](const MotClass& c) {
    AlgNumber v = count_specialize(c, q);
    if (!v.is_rational()) throw DomainError("coefficient " + c.to_string() + " does not specialise to a rational");
    return Rational(v.rational_part());
  });
}

MotSeries to_mot_series(const RatSeries& s) {
  return s.map_coefficients([](const Rational& c) { return MotClass(c); });
}

RatSeries euler_product_counting(const LocalFactor& local, const CurveModel& curve, long q, const Truncation& region) {
  const std::size_t n = local.nvars();
  const Truncation r = local.series.truncation().intersect(region);
  const int top = r.max_total_degree(n);
  RatSeries out = RatSeries::constant(n, Rational(1), r);
  if (top == 0) return out;
  const PointCounts counts = point_counts(curve, q, top);
  for (int e = 1; e <= top; ++e) {
    if (counts.b[e] == 0) continue;
    const Truncation re = r.divided(e);
    if (re.max_total_degree(n) == 0) break;
    RatSeries h(n, re);
    for (const auto& [t, c] : local.series.terms()) {
      if (!re.contains(t)) continue;
      AlgNumber v = count_specialize(c.substitute_power(e), q);
      if (!v.is_rational()) throw DomainError("local coefficient " + c.to_string() + " is not rational at q");
      h.add_to(t, v.rational_part());
    }
    const RatSeries power = series_pow(h, Rational(counts.b[e]));
    RatSeries substituted(n, r);
    for (const auto& [t, c] : power.terms()) substituted.add_to(scaled(t, e), c);
    out = out * substituted;
  }
  return out;
}

RatSeries euler_product_counting(const LocalFactor& local, const CurveModel& curve, long q, int bound) {
  return euler_product_counting(local, curve, q, Truncation::total_degree(bound));
}

std::vector<MotClass> shifted_zeta_power(const CurveModel& curve, const Rational& j, const Integer& b, int degree) {
  const MotClass lj = MotClass::monomial(1, j);
  std::vector<MotClass> out = univariate_product(binomial_series(lj, Integer(-b), degree),
                                                 binomial_series(lj * MotClass::lefschetz(), Integer(-b), degree), degree);
  if (curve.numerator.size() > 1) {
    MotSeries p(1, Truncation::total_degree(degree));
    MotClass shift(1);
    for (std::size_t i = 0; i < curve.numerator.size(); ++i) {
      p.add_to({static_cast<int>(i)}, curve.numerator[i] * shift);
      shift *= lj;
    }
    out = univariate_product(out, univariate_coefficients(series_pow(p, Rational(b)), degree), degree);
  }
  return out;
}

MotSeries euler_product_motivic(const LocalFactor& local, const CurveModel& curve, const Truncation& region) {
  const std::size_t n = local.nvars();
  const Truncation r = local.series.truncation().intersect(region);
  const int top = r.max_total_degree(n);
  const GeomFactorisation factors = geometric_decompose(local.series.truncated(r));
  std::map<Multidegree, std::vector<GeomFactor>, DegLexLess> by_k;
  for (const GeomFactor& f : factors.factors) by_k[f.k].push_back(f);
  MotSeries out = MotSeries::constant(n, MotClass(1), r);
  for (const auto& [k, group] : by_k) {
    const int reach = top / total_degree(k);
    std::vector<MotClass> u{MotClass(1)};
    for (const GeomFactor& f : group) u = univariate_product(u, shifted_zeta_power(curve, f.j, f.b, reach), reach);
    out = multiply_by_univariate(out, u, k, true);
  }
  return out;
}

MotSeries euler_product_motivic(const LocalFactor& local, const CurveModel& curve, int bound) {
  return euler_product_motivic(local, curve, Truncation::total_degree(bound));
}

MotSeries zeta_product(const CurveModel& curve, std::span<const int> m, const Truncation& region) {
  const std::size_t n = m.size();
  check_multiplicities(n, m);
  const int top = region.max_total_degree(n);
  const MotSeries z = kapranov_zeta(curve, top);
  MotSeries out = MotSeries::constant(n, MotClass(1), region);
  for (std::size_t i = 0; i < n; ++i) {
    Multidegree k(n, 0);
    k[i] = m[i];
    out = multiply_by_univariate(out, univariate_coefficients(z, top / m[i]), k, true);
  }
  return out;
}

CheckResult multiplicativity_check(const LocalFactor& f, const LocalFactor& g, const CurveModel& curve, long q,
                                   int bound) {
  const Truncation region = Truncation::total_degree(bound);
  const LocalFactor product(f.series * g.series);
  const RatSeries lhs = euler_product_counting(f, curve, q, region) * euler_product_counting(g, curve, q, region);
  const RatSeries rhs = euler_product_counting(product, curve, q, region);
  CheckResult out;
  out.first_difference = lhs.first_difference(rhs);
  out.pass = !out.first_difference;
  if (!out.pass)
    out.detail = "EP(F)EP(G) and EP(FG) differ at " + to_string(*out.first_difference) + ": " +
                 lhs.coeff(*out.first_difference).get_str() + " vs " + rhs.coeff(*out.first_difference).get_str();
  return out;
}

}  // namespace toricount
