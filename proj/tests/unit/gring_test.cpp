#include "toricount/gring.hpp"

#include <gtest/gtest.h>

#include <random>

#include "toricount/error.hpp"
#include "toricount/fan.hpp"
#include "toricount/ffcount.hpp"

namespace toricount {
namespace {

const MotClass L = MotClass::lefschetz();

MotClass random_class(std::mt19937& rng, int root_order) {
  std::uniform_int_distribution<int> exp(-3 * root_order, 3 * root_order);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> count(0, 4);
  MotClass out;
  for (int k = count(rng); k > 0; --k) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    out += MotClass::monomial(c, Rational(exp(rng), root_order));
  }
  return out;
}

TEST(MotClassArith, Examples) {
  EXPECT_EQ(mot_arith(L - 1, L + 1, ArithOp::mul), L * L - 1);
  const MotClass x = lefschetz_power(Rational(1, 2), 2);
  EXPECT_EQ(x * x, L);
  const MotClass p2 = L * L + L + 1;
  EXPECT_TRUE(mot_arith(p2, p2, ArithOp::sub).is_zero());
  EXPECT_EQ(mot_arith(p2, 1, ArithOp::add), L * L + L + 2);
}

TEST(MotClassArith, CanonicalRootOrder) {
  const MotClass x = lefschetz_power(Rational(1, 2), 2);
  EXPECT_EQ(x.root_order(), 2);
  EXPECT_EQ((x * x).root_order(), 1);
  const MotClass y = lefschetz_power(Rational(1, 3), 3);
  EXPECT_EQ((x * y).root_order(), 6);
  EXPECT_EQ(lefschetz_power(1, 4), L);
}

TEST(MotClassArith, RingAxioms) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const MotClass a = random_class(rng, 1 + trial % 3);
    const MotClass b = random_class(rng, 1 + trial % 2);
    const MotClass c = random_class(rng, 2);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * MotClass(1), a);
  }
}

TEST(MotClassPower, Examples) {
  EXPECT_EQ(lefschetz_power(1, 1), L);
  EXPECT_EQ(lefschetz_power(Rational(1, 2), 2).to_string(), MotClass::monomial(1, Rational(1, 2)).to_string());
  const MotClass x_inv3 = lefschetz_power(Rational(-3, 2), 2);
  EXPECT_EQ(x_inv3.virtual_dimension(), Rational(-3, 2));
  EXPECT_EQ(x_inv3 * lefschetz_power(Rational(3, 2), 2), MotClass(1));
  EXPECT_THROW(lefschetz_power(Rational(1, 3), 2), DomainError);
}

TEST(MotClassDimension, Examples) {
  EXPECT_EQ((L * L + L + 1).virtual_dimension(), Rational(2));
  EXPECT_EQ(MotClass::monomial(1, -3).virtual_dimension(), Rational(-3));
  EXPECT_FALSE(MotClass().virtual_dimension().has_value());
}

TEST(MotClassDimension, AdditiveUnderProducts) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const MotClass a = random_class(rng, 1 + trial % 2);
    const MotClass b = random_class(rng, 1 + trial % 3);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ((a * b).virtual_dimension(), Rational(*a.virtual_dimension() + *b.virtual_dimension()));
  }
}

TEST(MotClassFiltration, Examples) {
  EXPECT_EQ((1 + MotClass::monomial(1, -2)).truncate_filtration(1), MotClass(1));
  EXPECT_EQ((L + 1).truncate_filtration(0), L + 1);
  EXPECT_TRUE(MotClass::monomial(1, -5).truncate_filtration(3).is_zero());
}

TEST(MotClassFiltration, Idempotent) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const MotClass a = random_class(rng, 2);
    const Rational m(trial % 7 - 3, 2);
    const MotClass once = a.truncate_filtration(m);
    EXPECT_EQ(once.truncate_filtration(m), once);
    for (const auto& [e, c] : once.monomials()) EXPECT_GE(e, -m);
  }
}

TEST(MotClassText, RoundTrip) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const MotClass a = random_class(rng, 1 + trial % 4);
    EXPECT_EQ(MotClass::parse(a.to_string()), a) << a.to_string();
  }
  EXPECT_EQ(MotClass::parse("L^2 + L + 1"), L * L + L + 1);
  EXPECT_THROW(MotClass::parse("L^"), ParseError);
}

TEST(CountSpecialize, Examples) {
  EXPECT_EQ(count_specialize(L * L + L + 1, 2), AlgNumber(2, 7));
  const AlgNumber x = count_specialize(lefschetz_power(Rational(1, 2), 2), 4);
  EXPECT_EQ(x.root_order(), 2);
  EXPECT_FALSE(x.is_rational());
  EXPECT_EQ(x * x, AlgNumber(4, 4));
  EXPECT_TRUE(count_specialize(MotClass(), 3).is_zero());
}

TEST(CountSpecialize, RingMorphism) {
  std::mt19937 rng(23);
  for (long q : {2L, 3L, 4L, 5L}) {
    for (int trial = 0; trial < 100; ++trial) {
      const MotClass a = random_class(rng, 1 + trial % 3);
      const MotClass b = random_class(rng, 1 + trial % 2);
      EXPECT_EQ(count_specialize(a * b, q), count_specialize(a, q) * count_specialize(b, q));
      EXPECT_EQ(count_specialize(a + b, q), count_specialize(a, q) + count_specialize(b, q));
      EXPECT_EQ(count_specialize(a - b, q), count_specialize(a, q) - count_specialize(b, q));
    }
  }
}

TEST(CountSpecialize, RealValue) {
  const AlgNumber v = count_specialize(MotClass::monomial(3, Rational(-1, 2)), 2);
  EXPECT_NEAR(static_cast<double>(v.to_long_double()), 3 / std::sqrt(2.0), 1e-12);
}

TEST(ToricClass, Examples) {
  EXPECT_EQ(toric_class(builtin_fan("p2")), L * L + L + 1);
  EXPECT_EQ(toric_class(builtin_fan("p1")), L + 1);
  EXPECT_EQ(toric_class(builtin_fan("p1xp1")), (L + 1) * (L + 1));
}

TEST(ToricClass, MatchesOrbitEnumeration) {
  for (const char* name : {"p1", "p2", "p1xp1", "hirzebruch:1", "hirzebruch:2", "dp6"}) {
    const Fan fan = builtin_fan(name);
    const MotClass x = toric_class(fan);
    for (long q : {2L, 3L, 4L}) EXPECT_EQ(specialize_integral(x, q), Rational(orbit_point_count(fan, q))) << name;
  }
}

TEST(ToricClass, NormalisedClassLiesInOnePlusF2) {
  for (const char* name : {"p1", "p2", "p1xp1", "hirzebruch:1", "hirzebruch:3", "dp6"}) {
    const Fan fan = builtin_fan(name);
    const long rk = static_cast<long>(fan.num_rays()) - fan.dim();
    MotClass v = MotClass::monomial(1, -fan.dim()) * toric_class(fan);
    for (long i = 0; i < rk; ++i) v *= 1 - MotClass::monomial(1, -1);
    const Dim dim = (v - 1).virtual_dimension();
    ASSERT_TRUE(dim.has_value()) << name;
    EXPECT_LE(*dim, -2) << name;
  }
}

}  // namespace
}  // namespace toricount
