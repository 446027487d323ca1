#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "toricount/gring.hpp"
#include "toricount/mvseries.hpp"
#include "toricount/rational.hpp"

namespace toricount {

/// A smooth projective curve seen through its genus and zeta numerator P_C,
/// with Z_C(T) = P_C(T) / ((1 - T)(1 - L T)).
struct CurveModel {
  int genus = 0;
  std::vector<MotClass> numerator{MotClass(1)};  // coefficients of T^0..T^{deg}
  std::string label;

  /// P_C with L -> q; throws unless every coefficient becomes an integer.
  std::vector<Integer> numerator_at(long q) const;
};

CurveModel make_curve(int genus, std::vector<MotClass> numerator, std::string label = {});

struct PointCounts {
  long q = 0;
  std::vector<Integer> n;  // n[m] = #C(F_{q^m}) for 1 <= m <= e_max; n[0] unused
  std::vector<Integer> b;  // b[e] = number of closed points of degree e; b[0] unused
};

/// Throws DomainError when some closed-point count would be negative.
PointCounts point_counts(const CurveModel& curve, long q, int e_max);

/// Z_C^{Kapr}(T) truncated at degree `bound`.
MotSeries kapranov_zeta(const CurveModel& curve, int bound);

/// Dimension of the space of sections in the Riemann-Roch regime; throws in
/// the range 0 <= d <= 2g - 2 for g >= 1.
long h0(const CurveModel& curve, long d);

/// #Pic^0(C)(F_q) = P_C(1) at q.
Integer pic0_count(const CurveModel& curve, long q);

/// `p1`, or `elliptic:q<q>a<a>` (numerator 1 + aT + qT^2, e.g. `elliptic:q2a2`).
CurveModel builtin_curve(std::string_view name);

/// {"genus": g, "numerator_coeffs": [...]} with integers or MotClass text.
CurveModel parse_curve(const nlohmann::json& document);
nlohmann::json curve_to_json(const CurveModel& curve);

/// A preset name, else a path to a curve file.
CurveModel resolve_curve(std::string_view name_or_path);

/// Classical Moebius function.
int moebius(long n);

}  // namespace toricount
