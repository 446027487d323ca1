#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toricount/fan.hpp"
#include "toricount/ffield.hpp"
#include "toricount/rational.hpp"

namespace toricount {

/// sum_k coeffs[k] u^{d-k} v^k.
struct BinaryForm {
  int degree = 0;
  std::vector<int> coeffs;

  bool is_zero() const;
  /// f(t, 1) with t = u/v.
  Poly dehomogenised() const;
  /// Order of vanishing at the point v = 0.
  int infinity_multiplicity() const;
};

/// A closed point of P^1: the point at infinity (v = 0) or a monic irreducible in t = u/v.
struct ClosedPoint {
  bool infinity = false;
  Poly poly;

  int degree() const { return infinity ? 1 : toricount::degree(poly); }
  std::string to_string() const;
  friend bool operator==(const ClosedPoint&, const ClosedPoint&) = default;
};

struct PointDivisor {
  std::vector<std::pair<ClosedPoint, int>> points;  // distinct points, multiplicities >= 1

  int degree() const;
};

struct ClosedPointTable {
  long q = 0;
  std::vector<std::vector<ClosedPoint>> by_degree;  // by_degree[e], e >= 1; by_degree[0] empty

  int depth() const { return static_cast<int>(by_degree.size()) - 1; }
  std::size_t count(int e) const { return by_degree.at(e).size(); }
};

ClosedPointTable closed_points(const FiniteField& field, int deg_max);
ClosedPointTable closed_points(long q, int deg_max);

/// Complete factorisation of a nonzero form; throws if the table is too shallow.
PointDivisor multiplicity_profile(const FiniteField& field, const BinaryForm& f, const ClosedPointTable& table);

/// Every multiplicity is at least m.
bool campana_admissible(const PointDivisor& d, int m);

struct CountOptions {
  std::uint64_t max_tuples = 200'000'000;
  std::optional<std::chrono::milliseconds> time_limit;
  unsigned workers = 1;
};

struct CountResult {
  Integer count;  // morphisms
  Integer raw;    // tuples passing every filter, before dividing out the torus
};

/// Tuples of nonzero binary forms of degrees d with no common zero along any
/// primitive collection and Campana multiplicities, modulo the torus.
CountResult count_hom_forms(const Fan& fan, long q, std::span<const int> d, std::span<const int> m,
                            const CountOptions& options = {});

/// Tuples of effective divisors of degrees d whose local exponent vectors lie
/// in the admissible set, times (q-1)^dim.
CountResult count_hom_divisors(const Fan& fan, long q, std::span<const int> d, std::span<const int> m,
                               const CountOptions& options = {});

/// #X(F_q) by enumerating Cox coordinates over F_q.
Integer orbit_point_count(const Fan& fan, long q);

/// Every nonzero binary form of degree d over the field.
std::vector<BinaryForm> all_forms(const FiniteField& field, int d);

/// Effective divisors of degree d on P^1 whose multiplicities are all >= m.
std::vector<PointDivisor> effective_divisors(const ClosedPointTable& table, int d, int m = 1);

}  // namespace toricount
