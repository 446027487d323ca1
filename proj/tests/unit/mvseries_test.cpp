#include "toricount/mvseries.hpp"

#include <gtest/gtest.h>

#include <random>

#include "toricount/curve.hpp"
#include "toricount/error.hpp"
#include "toricount/euler.hpp"

namespace toricount {
namespace {

const MotClass L = MotClass::lefschetz();

MotSeries poly(std::size_t n, std::initializer_list<std::pair<Multidegree, MotClass>> terms,
               Truncation t = Truncation::exact()) {
  MotSeries s(n, std::move(t));
  for (const auto& [e, c] : terms) s.add_to(e, c);
  return s;
}

RatSeries random_series(std::mt19937& rng, std::size_t n, const Truncation& t, bool unit_constant) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  RatSeries s(n, t);
  for (const Multidegree& e : t.region(n)) s.add_to(e, coeff(rng));
  if (unit_constant) {
    const Multidegree zero(n, 0);
    s.add_to(zero, 1 - s.coeff(zero));
  }
  return s;
}

TEST(Truncation, Regions) {
  const Truncation t = Truncation::total_degree(2);
  EXPECT_EQ(t.region(2).size(), 6u);
  EXPECT_TRUE(t.contains({1, 1}));
  EXPECT_FALSE(t.contains({2, 1}));
  const Truncation b = Truncation::box({1, 2});
  EXPECT_EQ(b.region(2).size(), 6u);
  EXPECT_EQ(t.intersect(b).region(2).size(), 5u);
  EXPECT_EQ(Truncation::total_degree(7).divided(2), Truncation::total_degree(3));
  // Region order is total degree, then lexicographic.
  const auto r = t.region(2);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_TRUE(DegLexLess{}(r[i - 1], r[i]));
}

TEST(SeriesArith, Examples) {
  const MotSeries a = poly(2, {{{0, 0}, 1}, {{1, 1}, -1}});
  const MotSeries b = poly(2, {{{0, 0}, 1}, {{1, 1}, 1}, {{2, 2}, 1}});
  EXPECT_TRUE(series_arith(a, b, ArithOp::mul).equal_within(poly(2, {{{0, 0}, 1}, {{3, 3}, -1}})));
  EXPECT_TRUE(series_arith(a, MotSeries(2), ArithOp::add).equal_within(a));
  const MotSeries c = poly(2, {{{0, 0}, 1}, {{1, 0}, 1}});
  const MotSeries d = poly(2, {{{0, 0}, 1}, {{0, 1}, 1}});
  EXPECT_TRUE((c * d).equal_within(poly(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}})));
  EXPECT_THROW(series_arith(a, MotSeries(3), ArithOp::add), DomainError);
}

TEST(SeriesArith, TruncationIntersects) {
  const MotSeries a = poly(1, {{{0}, 1}, {{3}, 1}}, Truncation::total_degree(5));
  const MotSeries b = poly(1, {{{0}, 1}, {{2}, 1}}, Truncation::total_degree(3));
  const MotSeries p = a * b;
  EXPECT_EQ(p.truncation(), Truncation::total_degree(3));
  for (const auto& [e, c] : p.terms()) EXPECT_LE(total_degree(e), 3);
  EXPECT_THROW(p.coeff({4}), DomainError);
}

TEST(SeriesArith, ProductMatchesConvolutionOracle) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Truncation t = trial % 2 ? Truncation::total_degree(4) : Truncation::box({2, 3, 1});
    const RatSeries f = random_series(rng, 3, t, false);
    const RatSeries g = random_series(rng, 3, t, false);
    const RatSeries h = f * g;
    for (const Multidegree& e : t.region(3)) {
      Rational want = 0;
      for (const Multidegree& a : t.region(3))
        if (componentwise_le(a, e)) want += f.coeff(a) * g.coeff(e - a);
      EXPECT_EQ(h.coeff(e), want);
    }
  }
}

TEST(SeriesDivide, Examples) {
  const Truncation t = Truncation::total_degree(10);
  const MotSeries one = MotSeries::constant(1, 1, t);
  const MotSeries geo = series_divide(one, poly(1, {{{0}, 1}, {{1}, -1}}));
  for (int e = 0; e <= 10; ++e) EXPECT_EQ(geo.coeff({e}), MotClass(1));
  const MotSeries q = series_divide(poly(1, {{{0}, 1}, {{2}, -1}}, t), poly(1, {{{0}, 1}, {{1}, -1}}));
  EXPECT_TRUE(q.equal_within(poly(1, {{{0}, 1}, {{1}, 1}}, t)));
  const MotSeries lgeo = series_divide(one, poly(1, {{{0}, 1}, {{1}, -L}}));
  MotClass power = 1;
  for (int e = 0; e <= 10; ++e, power *= L) EXPECT_EQ(lgeo.coeff({e}), power);
  EXPECT_THROW(series_divide(one, poly(1, {{{1}, 1}})), DomainError);
  EXPECT_THROW(series_divide(one, poly(1, {{{0}, 1 + L}, {{1}, 1}})), DomainError);
}

TEST(SeriesDivide, DivideThenMultiplyIsIdentity) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Truncation t = trial % 2 ? Truncation::total_degree(5) : Truncation::box({3, 2});
    const RatSeries f = random_series(rng, 2, t, false);
    const RatSeries g = random_series(rng, 2, t, true);
    EXPECT_TRUE((series_divide(f, g) * g).equal_within(f));
  }
}

TEST(SeriesPow, MatchesRepeatedProduct) {
  std::mt19937 rng(4);
  const Truncation t = Truncation::total_degree(5);
  for (int trial = 0; trial < 10; ++trial) {
    const RatSeries f = random_series(rng, 2, t, true);
    RatSeries cube = RatSeries::constant(2, 1, t);
    for (int k = 0; k < 3; ++k) cube *= f;
    EXPECT_TRUE(series_pow(f, 3).equal_within(cube));
    EXPECT_TRUE((series_pow(f, -2) * series_pow(f, 2)).equal_within(RatSeries::constant(2, 1, t)));
    const RatSeries root = series_pow(f, Rational(1, 2));
    EXPECT_TRUE((root * root).equal_within(f));
  }
}

TEST(BinomialSeries, MatchesProduct) {
  // (1 - 2t)^3 = 1 - 6t + 12t^2 - 8t^3
  const auto c = binomial_series(Rational(2), Integer(3), 5);
  EXPECT_EQ(c, (std::vector<Rational>{1, -6, 12, -8, 0, 0}));
  // (1 - t)^{-2} = sum (k+1) t^k
  const auto inv = binomial_series(Rational(1), Integer(-2), 4);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(inv[k], k + 1);
}

TEST(GeometricDecompose, Examples) {
  const Truncation t = Truncation::total_degree(8);
  const MotSeries zeta = kapranov_zeta(make_curve(0, {MotClass(1)}), 8);
  const GeomFactorisation g = geometric_decompose(zeta);
  EXPECT_EQ(g.factors, (std::vector<GeomFactor>{{{1}, 0, 1}, {{1}, 1, 1}}));

  EXPECT_EQ(geometric_decompose(poly(1, {{{0}, 1}, {{2}, -1}}, t)).factors,
            (std::vector<GeomFactor>{{{2}, 0, -1}}));
  EXPECT_EQ(geometric_decompose(poly(2, {{{0, 0}, 1}, {{1, 1}, -1}}, t)).factors,
            (std::vector<GeomFactor>{{{1, 1}, 0, -1}}));
}

TEST(GeometricDecompose, ReplayReproducesSource) {
  std::vector<MotSeries> sources;
  for (const char* name : {"p1", "p2", "p1xp1", "hirzebruch:1", "dp6"}) {
    const Fan fan = builtin_fan(name);
    const std::vector<int> ones(fan.num_rays(), 1);
    const std::vector<int> twos(fan.num_rays(), 2);
    const int bound = fan.num_rays() > 4 ? 5 : 7;
    sources.push_back(classical_moebius(fan).series.truncated(Truncation::total_degree(bound)));
    sources.push_back(campana_admissible_local(fan, ones, bound).series);
    sources.push_back(campana_moebius(fan, twos, bound).series);
  }
  sources.push_back(kapranov_zeta(make_curve(0, {MotClass(1)}), 9));
  sources.push_back(kapranov_zeta(builtin_curve("elliptic:q2a2"), 9));
  for (const MotSeries& s : sources) {
    const GeomFactorisation g = geometric_decompose(s);
    EXPECT_TRUE(g.replay().equal_within(s)) << s.dump();
  }
}

TEST(GeometricDecompose, RejectsNonIntegralResidual) {
  const MotSeries s = poly(1, {{{0}, 1}, {{1}, Rational(1, 2)}}, Truncation::total_degree(4));
  EXPECT_THROW(geometric_decompose(s), DomainError);
}

TEST(EvaluateAtPowers, GeometricTail) {
  MotSeries f(1, Truncation::total_degree(10));
  for (int e = 0; e <= 10; ++e) f.add_to({e}, 1);
  const Evaluation ev = evaluate_at_powers(f, {Rational(-2)});
  MotClass want;
  for (int e = 0; e <= 10; ++e) want += MotClass::monomial(1, -2 * e);
  EXPECT_EQ(ev.value, want);
  ASSERT_TRUE(ev.tail_dim_bound.has_value());
  EXPECT_EQ(*ev.tail_dim_bound, Rational(-22));
}

TEST(EvaluateAtPowers, PolynomialIsExact) {
  const MotSeries f = poly(2, {{{0, 0}, 1}, {{1, 1}, -1}});
  const Evaluation ev = evaluate_at_powers(f, {Rational(-1), Rational(-1)});
  EXPECT_EQ(ev.value, 1 - MotClass::monomial(1, -2));
  EXPECT_FALSE(ev.tail_dim_bound.has_value());
}

TEST(EvaluateAtPowers, DetectsDivergence) {
  MotSeries f(1, Truncation::total_degree(10));
  MotClass power = 1;
  for (int e = 0; e <= 10; ++e, power *= L) f.add_to({e}, power);
  EXPECT_THROW(evaluate_at_powers(f, {Rational(-1)}), DivergenceError);
}

TEST(EvaluateAtPowers, RationalExponents) {
  const MotSeries f = poly(1, {{{0}, 1}, {{1}, 1}, {{3}, 2}});
  const Evaluation ev = evaluate_at_powers(f, {Rational(-1, 2)});
  EXPECT_EQ(ev.value, 1 + MotClass::monomial(1, Rational(-1, 2)) + MotClass::monomial(2, Rational(-3, 2)));
  EXPECT_EQ(ev.value.root_order(), 2);
}

TEST(ConvergenceMargin, Examples) {
  MotSeries ones(1, Truncation::total_degree(8));
  MotSeries powers(1, Truncation::total_degree(8));
  MotSeries halves(1, Truncation::total_degree(8));
  for (int e = 0; e <= 8; ++e) {
    ones.add_to({e}, 1);
    powers.add_to({e}, MotClass::monomial(1, e));
    halves.add_to({e}, MotClass::monomial(1, Rational(e, 2)));
  }
  EXPECT_EQ(convergence_margin(ones, {Rational(1)}), Dim(Rational(0)));
  EXPECT_EQ(convergence_margin(powers, {Rational(1)}), Dim(Rational(1)));
  EXPECT_EQ(convergence_margin(halves, {Rational(1)}), Dim(Rational(1, 2)));
  EXPECT_THROW(convergence_margin(ones, {Rational(0)}), DomainError);
}

TEST(SeriesDump, Format) {
  const MotSeries s = poly(2, {{{0, 0}, 1}, {{1, 1}, -L}, {{0, 2}, 3}});
  EXPECT_EQ(s.dump(), "(0,0) := 1\n(0,2) := 3\n(1,1) := -L\n");
}

}  // namespace
}  // namespace toricount
