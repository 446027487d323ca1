#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricount/curve.hpp"
#include "toricount/euler.hpp"
#include "toricount/fan.hpp"
#include "toricount/ffcount.hpp"
#include "toricount/gring.hpp"

namespace toricount {

/// Coefficient at d of the counting Euler product of the admissible series,
/// times (q-1)^dim / #Pic^0^dim. Exact for genus 0, asymptotic otherwise.
Rational predicted_count(const Fan& fan, const CurveModel& curve, long q, std::span<const int> d,
                         std::span<const int> m);

/// sum_i d_i / m_i + dim (1 - g).
Rational normalisation_exponent(const Fan& fan, const CurveModel& curve, std::span<const int> d,
                                std::span<const int> m);

/// count * q^{-normalisation_exponent}.
AlgNumber normalised_count(const Rational& count, const Fan& fan, const CurveModel& curve, long q,
                           std::span<const int> d, std::span<const int> m);

struct TamagawaResult {
  AlgNumber value;
  /// Dimension bound at the truncation frontier from the local error exponent.
  Rational error_dim_bound;
  /// Tail estimate of the truncated evaluation.
  Dim tail_dim_bound;
  /// The evaluated convergent factor before specialisation.
  MotClass euler_value;
};

/// Predicted limit of the normalised count: pole residues times the
/// convergent Euler product evaluated at T_i = L^{-1/m_i}, truncated at
/// total degree `bound`. With `residue_class`, only multidegrees e with
/// e = residue_class (mod m) contribute, which is the limit along degrees in
/// that class.
TamagawaResult tamagawa_constant(const Fan& fan, const CurveModel& curve, long q, std::span<const int> m, int bound,
                                 std::optional<std::vector<int>> residue_class = std::nullopt);

struct CountRow {
  std::string fan;
  std::string curve;
  long q = 0;
  std::vector<int> m;
  std::vector<int> d;
  std::optional<Integer> brute_count;
  std::optional<Integer> divisor_count;
  Rational predicted_count;
  AlgNumber normalised_value{2};
  AlgNumber limit_constant{2};
  Rational limit_error_bound;
  Rational theorem_error_exponent;
  /// log_q |normalised - limit|; nullopt when they agree exactly.
  std::optional<double> observed_error_exponent;
  /// ok, mismatch, budget, non-admissible or asymptotic.
  std::string status;
};

struct CountReport {
  std::vector<CountRow> rows;
  int truncation_bound = 0;
  CountOptions budget;
};

struct ReportOptions {
  int bound = 16;
  CountOptions budget;
  bool brute_force = true;
  bool divisor_oracle = true;
};

/// One row per degree in d_list, in the given order.
CountReport convergence_report(const Fan& fan, const CurveModel& curve, long q, std::span<const int> m,
                               const std::vector<std::vector<int>>& d_list, const ReportOptions& options = {});

std::string report_csv(const CountReport& report);
nlohmann::json report_json(const CountReport& report);

/// The classical constant (#Pic0 q^{1-g} / (q-1))^rk times the product over
/// closed points p of (1 - q_p^{-1})^rk #X(F_{q_p}) / q_p^dim, with the
/// product truncated at points of degree <= max_degree.
long double corollary_constant(const Fan& fan, const CurveModel& curve, long q, int max_degree);

}  // namespace toricount
