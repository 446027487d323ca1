#include "toricount/predict.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "toricount/error.hpp"

namespace toricount {

namespace {

void check_tuple(const Fan& fan, std::span<const int> t, const char* what) {
  if (t.size() != fan.num_rays())
    throw DomainError(std::string(what) + " tuple must have one entry per ray");
}

std::string tuple_text(std::span<const int> t) { return to_string(Multidegree(t.begin(), t.end())); }

}  // namespace

Rational predicted_count(const Fan& fan, const CurveModel& curve, long q, std::span<const int> d,
                         std::span<const int> m) {
  check_tuple(fan, d, "degree");
  check_tuple(fan, m, "multiplicity");
  if (!degree_admissible(fan, d)) throw DomainError("degree " + tuple_text(d) + " is not admissible");
  const Multidegree target(d.begin(), d.end());
  const Truncation region = Truncation::box(target);
  const RatSeries ep = euler_product_counting(campana_admissible_local(fan, m, region), curve, q, region);
  const unsigned long n = static_cast<unsigned long>(fan.dim());
  return ep.coeff(target) * Rational(pow(Integer(q - 1), n)) / Rational(pow(pic0_count(curve, q), n));
}

Rational normalisation_exponent(const Fan& fan, const CurveModel& curve, std::span<const int> d,
                                std::span<const int> m) {
  check_tuple(fan, d, "degree");
  check_tuple(fan, m, "multiplicity");
  return log_anticanonical_degree(fan, m, d) + fan.dim() * (1 - curve.genus);
}

AlgNumber normalised_count(const Rational& count, const Fan& fan, const CurveModel& curve, long q,
                           std::span<const int> d, std::span<const int> m) {
  if (count < 0) throw DomainError("negative count");
  return count_specialize(MotClass::monomial(count, -normalisation_exponent(fan, curve, d, m)), q);
}

TamagawaResult tamagawa_constant(const Fan& fan, const CurveModel& curve, long q, std::span<const int> m, int bound,
                                 std::optional<std::vector<int>> residue_class) {
  check_tuple(fan, m, "multiplicity");
  const std::size_t rays = fan.num_rays();
  const Truncation region = Truncation::total_degree(bound);

  // Admissible series with the poles of prod_i Z_C(T_i^{m_i}) removed.
  MotSeries local = campana_admissible_local(fan, m, region).series;
  for (std::size_t i = 0; i < rays; ++i) {
    Multidegree k(rays, 0);
    k[i] = m[i];
    local = multiply_by_univariate(local, std::vector<MotClass>{MotClass(1), MotClass(-1)}, k, true);
  }
  MotSeries g = euler_product_motivic(LocalFactor(local), curve, region);
  if (residue_class) {
    check_tuple(fan, *residue_class, "residue class");
    MotSeries restricted(rays, g.truncation());
    for (const auto& [e, c] : g.terms()) {
      bool match = true;
      for (std::size_t i = 0; i < rays; ++i)
        match = match && (e[i] - (*residue_class)[i]) % m[i] == 0;
      if (match) restricted.add_to(e, c);
    }
    g = std::move(restricted);
  }

  std::vector<Rational> s;
  for (int mi : m) s.emplace_back(-1, mi);
  const int m_min = *std::min_element(m.begin(), m.end());
  const Evaluation ev = evaluate_at_powers(g, s, Rational(1, 2 * m_min));

  Rational p_at_inverse_q = 0;
  const std::vector<Integer> p = curve.numerator_at(q);
  for (std::size_t k = 0; k < p.size(); ++k) p_at_inverse_q += Rational(p[k]) / Rational(pow(Integer(q), k));
  const Rational residue = p_at_inverse_q / (1 - Rational(1, q));
  const int n = fan.dim();
  const Rational torus = pow(Rational(q - 1), n) * pow(Rational(q), -n * (1 - curve.genus)) /
                         pow(Rational(pic0_count(curve, q)), n);
  const Rational scale = pow(residue, static_cast<long>(rays)) * torus;

  TamagawaResult out{count_specialize(ev.value, q) * AlgNumber(q, scale), 0, ev.tail_dim_bound, ev.value};
  const int frontier = bound / static_cast<int>(rays);
  Rational worst;
  for (std::size_t i = 0; i < rays; ++i) {
    Rational v(frontier + 1, m[i]);
    v.canonicalize();
    if (i == 0 || v < worst) worst = v;
  }
  out.error_dim_bound = -worst / 4;
  return out;
}

CountReport convergence_report(const Fan& fan, const CurveModel& curve, long q, std::span<const int> m,
                               const std::vector<std::vector<int>>& d_list, const ReportOptions& options) {
  check_tuple(fan, m, "multiplicity");
  CountReport report;
  report.truncation_bound = options.bound;
  report.budget = options.budget;
  std::map<std::vector<int>, TamagawaResult> limits;

  for (const std::vector<int>& d : d_list) {
    check_tuple(fan, d, "degree");
    CountRow row;
    row.fan = fan.label();
    row.curve = curve.label;
    row.q = q;
    row.m.assign(m.begin(), m.end());
    row.d = d;
    row.normalised_value = AlgNumber(q);
    Rational ratio_min;
    for (std::size_t i = 0; i < d.size(); ++i) {
      Rational v(d[i], m[i]);
      v.canonicalize();
      if (i == 0 || v < ratio_min) ratio_min = v;
    }
    row.theorem_error_exponent = -ratio_min / 4;

    std::vector<int> residue(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) residue[i] = d[i] % m[i];
    auto it = limits.find(residue);
    if (it == limits.end()) it = limits.emplace(residue, tamagawa_constant(fan, curve, q, m, options.bound, residue)).first;
    row.limit_constant = it->second.value;
    row.limit_error_bound = it->second.error_dim_bound;

    if (!degree_admissible(fan, d)) {
      row.predicted_count = 0;
      row.brute_count = Integer(0);
      row.status = "non-admissible";
      report.rows.push_back(std::move(row));
      continue;
    }
    row.predicted_count = predicted_count(fan, curve, q, d, m);
    row.status = curve.genus == 0 ? "ok" : "asymptotic";
    if (curve.genus == 0) {
      try {
        if (options.brute_force) row.brute_count = count_hom_forms(fan, q, d, m, options.budget).count;
        if (options.divisor_oracle) row.divisor_count = count_hom_divisors(fan, q, d, m, options.budget).count;
      } catch (const BudgetExceeded&) {
        row.status = "budget";
      }
      const Rational predicted = row.predicted_count;
      if ((row.brute_count && Rational(*row.brute_count) != predicted) ||
          (row.divisor_count && Rational(*row.divisor_count) != predicted))
        row.status = "mismatch";
    }
    const Rational count = row.brute_count ? Rational(*row.brute_count) : row.predicted_count;
    row.normalised_value = normalised_count(count, fan, curve, q, d, m);
    const AlgNumber diff = row.normalised_value - row.limit_constant;
    if (!diff.is_zero())
      row.observed_error_exponent =
          static_cast<double>(std::log(std::fabs(diff.to_long_double())) / std::log(static_cast<long double>(q)));
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string exponent_text(const std::optional<double>& e) {
  if (!e) return "-inf";
  std::ostringstream os;
  os.precision(6);
  os << *e;
  return os.str();
}

}  // namespace

std::string report_csv(const CountReport& report) {
  std::ostringstream os;
  os << "fan,curve,q,m,d,brute_count,predicted_count,normalised_value,limit_constant,limit_error_bound,"
        "theorem_error_exponent,observed_error_exponent,status\n";
  for (const CountRow& r : report.rows) {
    os << csv_field(r.fan) << ',' << csv_field(r.curve) << ',' << r.q << ',' << csv_field(tuple_text(r.m)) << ','
       << csv_field(tuple_text(r.d)) << ',' << (r.brute_count ? r.brute_count->get_str() : std::string("null")) << ','
       << r.predicted_count.get_str() << ',' << csv_field(r.normalised_value.to_string()) << ','
       << csv_field(r.limit_constant.to_string()) << ',' << r.limit_error_bound.get_str() << ','
       << r.theorem_error_exponent.get_str() << ',' << exponent_text(r.observed_error_exponent) << ',' << r.status
       << '\n';
  }
  return os.str();
}

nlohmann::json report_json(const CountReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const CountRow& r : report.rows) {
    nlohmann::json row = {
        {"fan", r.fan},
        {"curve", r.curve},
        {"q", r.q},
        {"m", r.m},
        {"d", r.d},
        {"brute_count", r.brute_count ? nlohmann::json(r.brute_count->get_str()) : nlohmann::json(nullptr)},
        {"divisor_count", r.divisor_count ? nlohmann::json(r.divisor_count->get_str()) : nlohmann::json(nullptr)},
        {"predicted_count", r.predicted_count.get_str()},
        {"normalised_value", r.normalised_value.to_string()},
        {"limit_constant", r.limit_constant.to_string()},
        {"limit_error_bound", r.limit_error_bound.get_str()},
        {"theorem_error_exponent", r.theorem_error_exponent.get_str()},
        {"observed_error_exponent",
         r.observed_error_exponent ? nlohmann::json(*r.observed_error_exponent) : nlohmann::json("-inf")},
        {"status", r.status},
    };
    rows.push_back(std::move(row));
  }
  nlohmann::json metadata = {
      {"truncation_bound", report.truncation_bound},
      {"max_tuples", report.budget.max_tuples},
      {"time_limit_ms", report.budget.time_limit ? nlohmann::json(report.budget.time_limit->count()) : nlohmann::json(nullptr)},
  };
  return {{"metadata", metadata}, {"rows", rows}};
}

long double corollary_constant(const Fan& fan, const CurveModel& curve, long q, int max_degree) {
  const int n = fan.dim();
  const long rk = static_cast<long>(fan.num_rays()) - n;
  const MotClass x_class = toric_class(fan);
  const Rational lead =
      pow(Rational(pic0_count(curve, q)) * pow(Rational(q), 1 - curve.genus) / Rational(q - 1), rk);
  long double out = lead.get_d();
  const PointCounts counts = point_counts(curve, q, max_degree);
  for (int e = 1; e <= max_degree; ++e) {
    const Rational qe = pow(Rational(q), e);
    const Rational local = pow(1 - 1 / qe, rk) * specialize_integral(x_class, qe) / pow(qe, n);
    out *= std::pow(static_cast<long double>(local.get_d()), static_cast<long double>(counts.b[e].get_d()));
  }
  return out;
}

}  // namespace toricount
