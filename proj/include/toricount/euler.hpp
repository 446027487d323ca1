#pragma once

#include <optional>
#include <span>
#include <string>

#include "toricount/curve.hpp"
#include "toricount/fan.hpp"
#include "toricount/mvseries.hpp"

namespace toricount {

/// A uniform local factor: at a closed point of degree e it contributes the
/// series with L -> L^e and T -> T^e.
struct LocalFactor {
  MotSeries series;

  explicit LocalFactor(MotSeries s);
  std::size_t nvars() const { return series.nvars(); }
};

/// sum over e in {0,1}^rays of mu(e) T^e (an exact polynomial).
LocalFactor classical_moebius(const Fan& fan);

/// Generating series of tuples with cone-supported support and every nonzero
/// entry at least m_i.
LocalFactor campana_admissible_local(const Fan& fan, std::span<const int> m, const Truncation& region);
LocalFactor campana_admissible_local(const Fan& fan, std::span<const int> m, int bound);

/// prod_i (1 + T_i^{m_i} / (1 - T_i)): tuples with every entry 0 or >= m_i.
LocalFactor unconstrained_local(std::span<const int> m, const Truncation& region);

/// Admissible series divided by the unconstrained series.
LocalFactor campana_moebius(const Fan& fan, std::span<const int> m, const Truncation& region);
LocalFactor campana_moebius(const Fan& fan, std::span<const int> m, int bound);

/// prod_i (1 - T_i^{m_i}), exact.
LocalFactor pole_cancelling_local(std::span<const int> m);

/// Product over closed points of C under the counting measure at q, on the
/// local factor's region intersected with `region` (which must be bounded).
RatSeries euler_product_counting(const LocalFactor& local, const CurveModel& curve, long q, const Truncation& region);
RatSeries euler_product_counting(const LocalFactor& local, const CurveModel& curve, long q, int bound);

/// Motivic product via geometric decomposition and Kapranov zeta factors.
MotSeries euler_product_motivic(const LocalFactor& local, const CurveModel& curve, const Truncation& region);
MotSeries euler_product_motivic(const LocalFactor& local, const CurveModel& curve, int bound);

/// prod_i Z_C(T_i^{m_i}) on the region.
MotSeries zeta_product(const CurveModel& curve, std::span<const int> m, const Truncation& region);

/// Coefficients 0..degree of Z_C(L^j t)^b.
std::vector<MotClass> shifted_zeta_power(const CurveModel& curve, const Rational& j, const Integer& b, int degree);

struct CheckResult {
  bool pass = true;
  std::optional<Multidegree> first_difference;
  std::string detail;
};

/// EP(F) EP(G) = EP(F G) under the counting measure at q.
CheckResult multiplicativity_check(const LocalFactor& f, const LocalFactor& g, const CurveModel& curve, long q,
                                   int bound);

RatSeries specialize_series(const MotSeries& s, long q);
MotSeries to_mot_series(const RatSeries& s);

}  // namespace toricount
