#include "toricount/curve.hpp"

#include <gtest/gtest.h>

#include "toricount/error.hpp"
#include "toricount/ffcount.hpp"

namespace toricount {
namespace {

const MotClass L = MotClass::lefschetz();

CurveModel p1() { return make_curve(0, {MotClass(1)}, "p1"); }
CurveModel elliptic() { return make_curve(1, {MotClass(1), MotClass(2), MotClass(2)}, "E"); }

// #E(F_{q^m}) for P = 1 + aT + qT^2 from the recurrence s_m = -a s_{m-1} - q s_{m-2}
// on the power sums of the inverse roots.
Integer elliptic_points(long q, long a, int m) {
  Integer s_prev = 2;
  Integer s = -a;
  for (int k = 2; k <= m; ++k) {
    const Integer next = -a * s - q * s_prev;
    s_prev = s;
    s = next;
  }
  return pow(Integer(q), static_cast<unsigned long>(m)) + 1 - s;
}

TEST(MakeCurve, Validation) {
  EXPECT_EQ(make_curve(0, {MotClass(1)}).genus, 0);
  EXPECT_EQ(elliptic().numerator.size(), 3u);
  EXPECT_THROW(make_curve(1, {MotClass(2), MotClass(1)}), DomainError);
  EXPECT_THROW(make_curve(0, {MotClass(1), MotClass(1)}), DomainError);
  EXPECT_THROW(make_curve(-1, {MotClass(1)}), DomainError);
}

TEST(PointCounts, ProjectiveLine) {
  const PointCounts c = point_counts(p1(), 2, 2);
  EXPECT_EQ(c.n[1], 3);
  EXPECT_EQ(c.n[2], 5);
  EXPECT_EQ(c.b[1], 3);
  EXPECT_EQ(c.b[2], 1);
  EXPECT_EQ(point_counts(p1(), 3, 1).b[1], 4);
}

TEST(PointCounts, EllipticMatchesRecurrence) {
  const PointCounts c = point_counts(elliptic(), 2, 6);
  EXPECT_EQ(c.n[1], 5);
  EXPECT_EQ(c.n[2], 5);
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(c.n[m], elliptic_points(2, 2, m)) << m;
  const PointCounts d = point_counts(builtin_curve("elliptic:q3a-1"), 3, 5);
  for (int m = 1; m <= 5; ++m) EXPECT_EQ(d.n[m], elliptic_points(3, -1, m)) << m;
}

TEST(PointCounts, ClosedPointsSumToRationalPoints) {
  for (const CurveModel& curve : {p1(), elliptic(), builtin_curve("elliptic:q3a1")}) {
    for (long q : {2L, 3L, 4L}) {
      PointCounts c;
      try {
        c = point_counts(curve, q, 8);
      } catch (const DomainError&) {
        continue;
      }
      for (int m = 1; m <= 8; ++m) {
        Integer sum = 0;
        for (int e = 1; e <= m; ++e)
          if (m % e == 0) sum += e * c.b[e];
        EXPECT_EQ(sum, c.n[m]);
        EXPECT_GE(c.b[m], 0);
      }
    }
  }
}

TEST(PointCounts, RejectsNegativeClosedPointCounts) {
  // 1 + 9T + 2T^2 is no zeta numerator over F_2: it forces a negative count.
  const CurveModel bogus = make_curve(1, {MotClass(1), MotClass(9), MotClass(2)});
  EXPECT_THROW(point_counts(bogus, 2, 3), DomainError);
}

TEST(Moebius, Values) {
  const int want[] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(moebius(n), want[n]) << n;
}

TEST(KapranovZeta, GenusZero) {
  const MotSeries z = kapranov_zeta(p1(), 6);
  EXPECT_EQ(z.coeff({0}), MotClass(1));
  EXPECT_EQ(z.coeff({2}), L * L + L + 1);
  MotClass sum = 0;
  MotClass power = 1;
  for (int d = 0; d <= 6; ++d, power *= L) {
    sum += power;
    EXPECT_EQ(z.coeff({d}), sum);
  }
}

TEST(KapranovZeta, Rationality) {
  for (const CurveModel& curve : {p1(), elliptic()}) {
    const int bound = 8;
    const MotSeries z = kapranov_zeta(curve, bound);
    MotSeries denom(1);
    denom.add_to({0}, 1);
    denom.add_to({1}, -1 - L);
    denom.add_to({2}, L);
    MotSeries numerator(1, Truncation::total_degree(bound));
    for (std::size_t k = 0; k < curve.numerator.size(); ++k) numerator.add_to({static_cast<int>(k)}, curve.numerator[k]);
    EXPECT_TRUE((z * denom).equal_within(numerator));
  }
}

TEST(KapranovZeta, EllipticSymmetricPowers) {
  const MotSeries z = kapranov_zeta(elliptic(), 4);
  EXPECT_EQ(specialize_integral(z.coeff({1}), 2), 5);
}

TEST(KapranovZeta, GenusZeroCountsEffectiveDivisors) {
  const MotSeries z = kapranov_zeta(p1(), 4);
  for (long q : {2L, 3L}) {
    const ClosedPointTable table = closed_points(q, 4);
    for (int d = 0; d <= 4; ++d) {
      const Rational want = (pow(Rational(q), d + 1) - 1) / (q - 1);
      EXPECT_EQ(specialize_integral(z.coeff({d}), q), want);
      EXPECT_EQ(Rational(static_cast<long>(effective_divisors(table, d).size())), want);
    }
  }
}

TEST(H0, Regimes) {
  EXPECT_EQ(h0(p1(), 3), 4);
  EXPECT_EQ(h0(p1(), -1), 0);
  const CurveModel g2 = make_curve(2, {MotClass(1), MotClass(0), MotClass(0), MotClass(0), MotClass(4)});
  EXPECT_EQ(h0(g2, 5), 4);
  EXPECT_EQ(h0(g2, -3), 0);
  EXPECT_THROW(h0(g2, 2), DomainError);
  EXPECT_THROW(h0(elliptic(), 0), DomainError);
  EXPECT_EQ(h0(elliptic(), 1), 1);
}

TEST(Pic0, Counts) {
  EXPECT_EQ(pic0_count(p1(), 2), 1);
  EXPECT_EQ(pic0_count(p1(), 7), 1);
  EXPECT_EQ(pic0_count(elliptic(), 2), 5);
  const CurveModel symbolic = make_curve(1, {MotClass(1), MotClass(-2), L});
  EXPECT_EQ(pic0_count(symbolic, 3), 2);
}

TEST(CurveJson, RoundTrip) {
  for (const CurveModel& curve : {p1(), elliptic(), make_curve(1, {MotClass(1), MotClass(-2), L})}) {
    const CurveModel back = parse_curve(curve_to_json(curve));
    EXPECT_EQ(back.genus, curve.genus);
    EXPECT_EQ(back.numerator, curve.numerator);
  }
  EXPECT_EQ(resolve_curve("elliptic:q2a2").numerator, elliptic().numerator);
  EXPECT_THROW(parse_curve(nlohmann::json::parse(R"({"numerator_coeffs":[1]})")), ParseError);
}

}  // namespace
}  // namespace toricount
