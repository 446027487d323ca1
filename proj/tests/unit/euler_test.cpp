#include "toricount/euler.hpp"

#include <gtest/gtest.h>

#include <random>

#include "toricount/error.hpp"

namespace toricount {
namespace {

const MotClass L = MotClass::lefschetz();

CurveModel line() { return make_curve(0, {MotClass(1)}, "p1"); }

MotSeries poly(std::size_t n, std::initializer_list<std::pair<Multidegree, MotClass>> terms,
               Truncation t = Truncation::exact()) {
  MotSeries s(n, std::move(t));
  for (const auto& [e, c] : terms) s.add_to(e, c);
  return s;
}

// Membership in the admissible set: support cone-supported, nonzero entries >= m_i.
bool admissible(const Fan& fan, const Multidegree& n, std::span<const int> m) {
  RayMask support = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) continue;
    if (n[i] < m[i]) return false;
    support |= RayMask{1} << i;
  }
  return fan.cone_supported(support);
}

bool unconstrained(const Multidegree& n, std::span<const int> m) {
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] != 0 && n[i] < m[i]) return false;
  return true;
}

std::vector<Multidegree> box_points(std::size_t n, int top) {
  return Truncation::box(Multidegree(n, top)).region(n);
}

TEST(ClassicalMoebius, Examples) {
  EXPECT_TRUE(classical_moebius(builtin_fan("p1")).series.equal_within(poly(2, {{{0, 0}, 1}, {{1, 1}, -1}})));
  EXPECT_TRUE(
      classical_moebius(builtin_fan("p2")).series.equal_within(poly(3, {{{0, 0, 0}, 1}, {{1, 1, 1}, -1}})));
  const Fan p1xp1 = builtin_fan("p1xp1");
  const auto collections = primitive_collections(p1xp1).minimal_collections;
  MotSeries want = MotSeries::constant(4, 1);
  for (const auto& c : collections) {
    Multidegree e(4, 0);
    for (int i : c) e[i] = 1;
    want *= poly(4, {{Multidegree(4, 0), 1}, {e, -1}});
  }
  EXPECT_TRUE(classical_moebius(p1xp1).series.equal_within(want));
}

TEST(ClassicalMoebius, InversionIdentity) {
  for (const char* name : {"p1", "p2", "p1xp1", "hirzebruch:1", "hirzebruch:2", "dp6"}) {
    const Fan fan = builtin_fan(name);
    const std::vector<int> ones(fan.num_rays(), 1);
    const MotSeries mu = classical_moebius(fan).series;
    const int top = fan.num_rays() > 4 ? 2 : 3;
    for (const Multidegree& n : box_points(fan.num_rays(), top)) {
      MotClass sum;
      for (const auto& [e, c] : mu.terms())
        if (componentwise_le(e, n)) sum += c;
      EXPECT_EQ(sum, MotClass(admissible(fan, n, ones) ? 1 : 0)) << name << " " << to_string(n);
    }
  }
}

TEST(ClassicalMoebius, ValuationAtLeastTwo) {
  for (const char* name : {"p1", "p2", "p1xp1", "hirzebruch:3", "dp6"}) {
    const MotSeries mu = classical_moebius(builtin_fan(name)).series;
    for (const auto& [e, c] : mu.terms()) {
      if (total_degree(e) == 0) continue;
      EXPECT_GE(total_degree(e), 2);
      for (int x : e) EXPECT_LE(x, 1);
    }
  }
}

TEST(CampanaAdmissible, Examples) {
  const Fan p1 = builtin_fan("p1");
  const MotSeries s = campana_admissible_local(p1, std::vector<int>{2, 2}, 6).series;
  for (const Multidegree& e : Truncation::total_degree(6).region(2)) {
    const bool on_axis = (e[0] == 0 || e[1] == 0);
    const bool want = on_axis && (e[0] == 0 || e[0] >= 2) && (e[1] == 0 || e[1] >= 2);
    EXPECT_EQ(s.coeff(e), MotClass(want ? 1 : 0)) << to_string(e);
  }
  const MotSeries p2 = campana_admissible_local(builtin_fan("p2"), std::vector<int>{1, 1, 1}, 4).series;
  EXPECT_EQ(p2.coeff({1, 1, 1}), MotClass(0));
  EXPECT_EQ(p2.coeff({0, 0, 0}), MotClass(1));
}

TEST(CampanaAdmissible, IndicatorOfAdmissibleSet) {
  std::mt19937 rng(1);
  for (const char* name : {"p2", "p1xp1", "hirzebruch:1"}) {
    const Fan fan = builtin_fan(name);
    std::uniform_int_distribution<int> mult(1, 3);
    std::vector<int> m(fan.num_rays());
    for (int& x : m) x = mult(rng);
    const MotSeries s = campana_admissible_local(fan, m, 7).series;
    for (const Multidegree& e : Truncation::total_degree(7).region(fan.num_rays()))
      EXPECT_EQ(s.coeff(e), MotClass(admissible(fan, e, m) ? 1 : 0));
  }
}

TEST(CampanaMoebius, Examples) {
  const Fan p1 = builtin_fan("p1");
  const MotSeries mu = campana_moebius(p1, std::vector<int>{2, 2}, 6).series;
  EXPECT_EQ(mu.coeff({2, 2}), MotClass(-1));
  EXPECT_EQ(mu.coeff({2, 0}), MotClass(0));
  EXPECT_EQ(mu.coeff({0, 0}), MotClass(1));
  for (const char* name : {"p1", "p2", "p1xp1", "dp6"}) {
    const Fan fan = builtin_fan(name);
    const std::vector<int> ones(fan.num_rays(), 1);
    const MotSeries c = campana_moebius(fan, ones, 5).series;
    EXPECT_TRUE(c.equal_within(classical_moebius(fan).series.truncated(c.truncation()))) << name;
  }
}

TEST(CampanaMoebius, ConvolutionIdentityAndValuation) {
  for (const char* name : {"p1", "p2", "p1xp1"}) {
    const Fan fan = builtin_fan(name);
    for (int mm : {2, 3}) {
      std::vector<int> m(fan.num_rays(), mm);
      m[0] = 2;
      const MotSeries mu = campana_moebius(fan, m, 8).series;
      for (const Multidegree& n : box_points(fan.num_rays(), 3)) {
        if (total_degree(n) > 8) continue;
        MotClass sum;
        for (const auto& [e, c] : mu.terms())
          if (componentwise_le(e, n) && unconstrained(n - e, m)) sum += c;
        EXPECT_EQ(sum, MotClass(admissible(fan, n, m) ? 1 : 0)) << name << " " << to_string(n);
      }
      for (const auto& [e, c] : mu.terms()) {
        if (total_degree(e) == 0) continue;
        int big = 0;
        for (std::size_t i = 0; i < e.size(); ++i) big += e[i] >= m[i];
        EXPECT_GE(big, 2) << name << " " << to_string(e);
      }
    }
  }
}

TEST(EulerCounting, Examples) {
  const Fan p1 = builtin_fan("p1");
  const RatSeries ep = euler_product_counting(classical_moebius(p1), line(), 2, 6);
  EXPECT_EQ(ep.coeff({1, 1}), -3);
  const RatSeries one = euler_product_counting(LocalFactor(MotSeries::constant(2, 1)), line(), 2, 6);
  EXPECT_TRUE(one.equal_within(RatSeries::constant(2, 1, Truncation::total_degree(6))));
  for (long q : {2L, 3L}) {
    const RatSeries adm = euler_product_counting(campana_admissible_local(p1, std::vector<int>{1, 1}, 6), line(), q, 6);
    for (int d = 1; d <= 3; ++d)
      EXPECT_EQ(adm.coeff({d, d}), pow(Rational(q), 2 * d - 1) * (q + 1)) << q << " " << d;
  }
}

TEST(EulerCounting, UnivariateZetaOracle) {
  // EP of 1/(1-T) is Z_C(T); its coefficients count effective divisors.
  const LocalFactor geo(series_divide(MotSeries::constant(1, 1, Truncation::total_degree(8)),
                                      poly(1, {{{0}, 1}, {{1}, -1}})));
  for (const CurveModel& curve : {line(), builtin_curve("elliptic:q2a2")}) {
    const RatSeries ep = euler_product_counting(geo, curve, 2, 8);
    const RatSeries z = specialize_series(kapranov_zeta(curve, 8), 2);
    EXPECT_TRUE(ep.equal_within(z)) << curve.label;
  }
}

TEST(EulerMotivic, Examples) {
  const LocalFactor geo(series_divide(MotSeries::constant(1, 1, Truncation::total_degree(8)),
                                      poly(1, {{{0}, 1}, {{1}, -1}})));
  for (const CurveModel& curve : {line(), builtin_curve("elliptic:q2a2")})
    EXPECT_TRUE(euler_product_motivic(geo, curve, 8).equal_within(kapranov_zeta(curve, 8)));

  const Fan p1 = builtin_fan("p1");
  const MotSeries ep = euler_product_motivic(classical_moebius(p1), line(), 8);
  const MotSeries want = poly(2, {{{0, 0}, 1}, {{1, 1}, -1}}) * poly(2, {{{0, 0}, 1}, {{1, 1}, -L}});
  EXPECT_TRUE(ep.equal_within(want.truncated(ep.truncation())));
}

TEST(EulerMotivic, SpecialisationLaw) {
  const std::vector<std::pair<const char*, std::vector<int>>> cases = {
      {"p1", {1, 1}}, {"p1", {2, 2}}, {"p1", {2, 3}}, {"p2", {1, 1, 1}}, {"p2", {2, 2, 2}}, {"p1xp1", {1, 1, 2, 2}}};
  for (const auto& [name, m] : cases) {
    const Fan fan = builtin_fan(name);
    const int bound = fan.num_rays() > 3 ? 6 : 8;
    const LocalFactor adm = campana_admissible_local(fan, m, bound);
    const LocalFactor mu = campana_moebius(fan, m, bound);
    for (const CurveModel& curve : {line(), builtin_curve("elliptic:q2a2")}) {
      for (const LocalFactor* local : {&adm, &mu}) {
        const RatSeries counted = euler_product_counting(*local, curve, 2, bound);
        const RatSeries motivic = specialize_series(euler_product_motivic(*local, curve, bound), 2);
        EXPECT_TRUE(counted.equal_within(motivic)) << name << " " << curve.label;
      }
    }
  }
}

TEST(Multiplicativity, Examples) {
  const Truncation t = Truncation::total_degree(6);
  const LocalFactor f(poly(2, {{{0, 0}, 1}, {{1, 1}, -1}}));
  const LocalFactor g(series_divide(MotSeries::constant(2, 1, t), poly(2, {{{0, 0}, 1}, {{1, 0}, -1}})));
  EXPECT_TRUE(multiplicativity_check(f, g, line(), 2, 6).pass);
  const LocalFactor one(MotSeries::constant(2, 1));
  EXPECT_TRUE(multiplicativity_check(one, one, line(), 2, 6).pass);
}

TEST(Multiplicativity, RandomUnitPolynomials) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> lpow(-1, 1);
  for (int trial = 0; trial < 12; ++trial) {
    MotSeries a = MotSeries::constant(2, 1);
    MotSeries b = MotSeries::constant(2, 1);
    for (const Multidegree& e : Truncation::total_degree(3).region(2)) {
      if (total_degree(e) == 0) continue;
      a.add_to(e, MotClass::monomial(coeff(rng), lpow(rng)));
      b.add_to(e, coeff(rng));
    }
    const CurveModel curve = trial % 2 ? line() : builtin_curve("elliptic:q2a2");
    const CheckResult r = multiplicativity_check(LocalFactor(a), LocalFactor(b), curve, 2, 5);
    EXPECT_TRUE(r.pass) << r.detail;
  }
}

TEST(Factorisation, ZetaFactorsCancelPoleFactors) {
  const std::vector<std::pair<const char*, std::vector<int>>> cases = {
      {"p1", {2, 2}}, {"p1", {2, 3}}, {"p2", {2, 2, 2}}, {"p1xp1", {1, 2, 1, 2}}};
  for (const auto& [name, m] : cases) {
    const Fan fan = builtin_fan(name);
    const int bound = fan.num_rays() > 3 ? 6 : 8;
    const Truncation region = Truncation::total_degree(bound);
    const MotSeries inner = pole_cancelling_local(m).series * campana_moebius(fan, m, region).series *
                            unconstrained_local(m, region).series;
    const MotSeries lhs = zeta_product(line(), m, region) * euler_product_motivic(LocalFactor(inner), line(), region);
    const MotSeries rhs = euler_product_motivic(campana_admissible_local(fan, m, region), line(), region);
    EXPECT_TRUE(lhs.equal_within(rhs)) << name;
  }
}

TEST(LemmaBound, CampanaMoebiusDimensions) {
  // After u_i = T_i^{m_i}, coefficient dimensions stay below half the u-degree.
  const std::vector<std::pair<const char*, std::vector<int>>> cases = {
      {"p1", {1, 1}}, {"p1", {2, 2}}, {"p2", {1, 1, 1}}, {"p2", {2, 2, 2}}};
  for (const auto& [name, m] : cases) {
    const Fan fan = builtin_fan(name);
    const MotSeries ep = euler_product_motivic(campana_moebius(fan, m, 9), line(), 9);
    for (const auto& [e, c] : ep.terms()) {
      Rational u_degree = 0;
      for (std::size_t i = 0; i < e.size(); ++i) u_degree += Rational(e[i], m[i]);
      EXPECT_LE(*c.virtual_dimension(), u_degree / 2) << name << " " << to_string(e);
    }
  }
}

TEST(LemmaBound, ClassicalMoebiusMargin) {
  for (const char* name : {"p1", "p2", "p1xp1", "hirzebruch:1"}) {
    const Fan fan = builtin_fan(name);
    const int bound = fan.num_rays() > 3 ? 8 : 10;
    const MotSeries ep = euler_product_motivic(classical_moebius(fan), line(), bound);
    const Dim margin = convergence_margin(ep, std::vector<Rational>(fan.num_rays(), 1));
    ASSERT_TRUE(margin.has_value());
    EXPECT_LE(*margin, Rational(1, 2)) << name;
  }
}

TEST(ShiftedZeta, MatchesSeriesPower) {
  const CurveModel e = builtin_curve("elliptic:q2a2");
  for (int b : {-2, -1, 1, 3}) {
    for (const Rational& j : {Rational(0), Rational(-1), Rational(1, 2)}) {
      const auto coeffs = shifted_zeta_power(e, j, b, 6);
      MotSeries z = kapranov_zeta(e, 6);
      MotSeries shifted(1, z.truncation());
      for (const auto& [k, c] : z.terms()) shifted.add_to(k, c * MotClass::monomial(1, j * k[0]));
      const MotSeries want = series_pow(shifted, b);
      for (int k = 0; k <= 6; ++k) EXPECT_EQ(coeffs[k], want.coeff({k})) << b << " " << j << " " << k;
    }
  }
}

TEST(LocalFactorCheck, ConstantTermMustBeOne) {
  EXPECT_THROW(LocalFactor(poly(1, {{{0}, 2}})), DomainError);
  EXPECT_THROW(LocalFactor(poly(1, {{{1}, 1}})), DomainError);
}

}  // namespace
}  // namespace toricount
