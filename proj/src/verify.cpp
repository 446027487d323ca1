#include "toricount/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "toricount/curve.hpp"
#include "toricount/error.hpp"
#include "toricount/euler.hpp"
#include "toricount/fan.hpp"
#include "toricount/ffcount.hpp"
#include "toricount/predict.hpp"

namespace toricount {

namespace {

class Recorder {
 public:
  Recorder(int id, std::string name, double time_limit) : start_(std::chrono::steady_clock::now()) {
    result_.id = id;
    result_.name = std::move(name);
    result_.pass = true;
    result_.time_limit_seconds = time_limit;
  }

  void check(bool ok, const std::string& what) {
    if (ok) return;
    result_.pass = false;
    result_.details.push_back("FAIL " + what);
  }
  void note(const std::string& line) { result_.details.push_back(line); }

  CriterionResult finish(std::string summary) {
    result_.summary = std::move(summary);
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  CriterionResult result_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<int> repeated(std::size_t n, int value) { return std::vector<int>(n, value); }

std::string tuple_text(const std::vector<int>& t) { return to_string(Multidegree(t)); }

const std::vector<std::string>& library_fans() {
  static const std::vector<std::string> names{"p1",           "p2",           "p1xp1",        "hirzebruch:0",
                                              "hirzebruch:1", "hirzebruch:2", "hirzebruch:3", "dp6"};
  return names;
}

CountOptions with_workers(unsigned workers) {
  CountOptions options;
  options.workers = workers;
  return options;
}

unsigned worker_count() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

}  // namespace

CriterionResult verify_classical_p1(VerifyBudget budget) {
  Recorder rec(1, "classical-p1", 10);
  const Fan fan = builtin_fan("p1");
  const CurveModel curve = builtin_curve("p1");
  const std::vector<int> m{1, 1};
  const std::vector<long> qs = budget == VerifyBudget::full ? std::vector<long>{2, 3, 4, 5} : std::vector<long>{2, 3};
  for (long q : qs) {
    const AlgNumber constant(q, 1 - Rational(1, q * q));
    const AlgNumber limit = tamagawa_constant(fan, curve, q, m, 8).value;
    rec.check(limit == constant, "q=" + std::to_string(q) + ": Tamagawa constant " + limit.to_string() + " != 1 - q^-2");
    for (int d = 1; d <= 3; ++d) {
      const std::vector<int> deg{d, d};
      const Integer count = count_hom_forms(fan, q, deg, m, with_workers(worker_count())).count;
      const Integer expected = pow(Integer(q), 2 * d + 1) - pow(Integer(q), 2 * d - 1);
      rec.check(count == expected, "q=" + std::to_string(q) + " d=" + std::to_string(d) + ": count " + count.get_str() +
                                       " != " + expected.get_str());
      const AlgNumber normalised = normalised_count(Rational(count), fan, curve, q, deg, m);
      rec.check(normalised == constant, "q=" + std::to_string(q) + " d=" + std::to_string(d) + ": normalised " +
                                            normalised.to_string());
      rec.note("q=" + std::to_string(q) + " d=" + std::to_string(d) + " count=" + count.get_str() +
               " normalised=" + normalised.to_string());
    }
  }
  return rec.finish("P1 target: counts equal q^(2d+1)-q^(2d-1), normalised value exactly 1-q^-2 (3/4 at q=2)");
}

CriterionResult verify_p2_identity(VerifyBudget budget) {
  Recorder rec(2, "p2-identity", 120);
  const Fan fan = builtin_fan("p2");
  const CurveModel curve = builtin_curve("p1");
  const std::vector<int> m{1, 1, 1};
  for (long q : {2L, 3L}) {
    for (int a = 1; a <= 3; ++a) {
      if (budget == VerifyBudget::small && q == 3 && a == 3) continue;
      const std::vector<int> d = repeated(3, a);
      const Integer forms = count_hom_forms(fan, q, d, m, with_workers(worker_count())).count;
      const Integer divisors = count_hom_divisors(fan, q, d, m, with_workers(worker_count())).count;
      const Rational predicted = predicted_count(fan, curve, q, d, m);
      const std::string tag = "q=" + std::to_string(q) + " a=" + std::to_string(a);
      rec.check(forms == divisors && Rational(forms) == predicted,
                tag + ": forms " + forms.get_str() + ", divisors " + divisors.get_str() + ", predicted " +
                    predicted.get_str());
      if (q == 2 && a == 1) rec.check(forms == 24, "q=2 a=1 count is not 24");
      rec.note(tag + " count=" + forms.get_str());
    }
  }
  return rec.finish("P2 target: form count = divisor count = predicted count (24 at q=2, a=1)");
}

CriterionResult verify_campana_p1(VerifyBudget) {
  Recorder rec(3, "campana-p1", 30);
  const Fan fan = builtin_fan("p1");
  const CurveModel curve = builtin_curve("p1");
  const std::vector<int> m{2, 2};
  for (long q : {2L, 3L}) {
    for (int a = 2; a <= 4; ++a) {
      const std::vector<int> d{a, a};
      const Integer forms = count_hom_forms(fan, q, d, m, with_workers(worker_count())).count;
      const Integer divisors = count_hom_divisors(fan, q, d, m).count;
      const Rational predicted = predicted_count(fan, curve, q, d, m);
      const std::string tag = "q=" + std::to_string(q) + " d=" + tuple_text(d);
      rec.check(Rational(forms) == predicted && forms == divisors,
                tag + ": forms " + forms.get_str() + ", divisors " + divisors.get_str() + ", predicted " +
                    predicted.get_str());
      if (a == 2) rec.check(forms == Integer(q * q * q - q), tag + ": count is not q^3 - q");
      rec.note(tag + " count=" + forms.get_str());
    }
  }
  return rec.finish("Campana P1, m=(2,2): brute force equals prediction; q^3-q at d=(2,2)");
}

CriterionResult verify_convergence_p2(VerifyBudget budget) {
  Recorder rec(4, "convergence-p2", 300);
  const Fan fan = builtin_fan("p2");
  const CurveModel curve = builtin_curve("p1");
  const std::vector<int> m{1, 1, 1};
  const int top = budget == VerifyBudget::full ? 4 : 3;
  std::vector<std::vector<int>> degrees;
  for (int a = 1; a <= top; ++a) degrees.push_back(repeated(3, a));
  ReportOptions options;
  options.bound = 12;
  options.budget.workers = worker_count();
  const CountReport report = convergence_report(fan, curve, 2, m, degrees, options);

  std::vector<double> errors;
  for (const CountRow& row : report.rows) {
    rec.check(row.status == "ok", "d=" + tuple_text(row.d) + " status " + row.status);
    rec.check(row.observed_error_exponent.has_value(), "d=" + tuple_text(row.d) + " has zero error");
    const double err = row.observed_error_exponent.value_or(-INFINITY);
    errors.push_back(err);
    std::ostringstream line;
    line << "a=" << row.d[0] << " normalised=" << row.normalised_value.to_string()
         << " limit=" << row.limit_constant.to_string() << " log2|error|=" << err;
    rec.note(line.str());
  }
  double c = -INFINITY;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    c = std::max(c, errors[i] + (i + 1) / 4.0);
    if (i > 0) rec.check(errors[i] <= errors[i - 1], "error increases from a=" + std::to_string(i) + " to a=" + std::to_string(i + 1));
  }
  rec.check(std::isfinite(c), "no finite constant c");
  rec.check(errors.size() < 2 || errors.back() - errors.front() <= -0.25 * static_cast<double>(errors.size() - 1),
            "errors decay more slowly than q^(-a/4) overall");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    sx += x;
    sy += errors[i];
    sxx += x * x;
    sxy += x * errors[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  std::ostringstream summary;
  summary << "P2, q=2: errors nonincreasing, bounded by -a/4 + c with c=" << c << " (fitted slope " << slope << ")";
  return rec.finish(summary.str());
}

CriterionResult verify_euler_two_path(VerifyBudget budget) {
  Recorder rec(5, "euler-two-path", 60);
  const int bound = budget == VerifyBudget::full ? 8 : 6;
  struct CurveCase {
    std::string name;
    std::vector<long> qs;
  };
  const std::vector<CurveCase> curves{{"p1", {2, 3}}, {"elliptic:q2a2", {2}}};
  int compared = 0;
  for (const std::string fan_name : {"p1", "p2", "p1xp1", "hirzebruch:1"}) {
    const Fan fan = builtin_fan(fan_name);
    const std::size_t n = fan.num_rays();
    const std::vector<std::pair<std::string, LocalFactor>> locals{
        {"classical-moebius", classical_moebius(fan)},
        {"campana-moebius-m2", campana_moebius(fan, repeated(n, 2), bound)},
        {"admissible-m1", campana_admissible_local(fan, repeated(n, 1), bound)},
        {"admissible-m2", campana_admissible_local(fan, repeated(n, 2), bound)},
    };
    for (const CurveCase& cc : curves) {
      const CurveModel curve = builtin_curve(cc.name);
      for (const auto& [local_name, local] : locals) {
        const MotSeries motivic = euler_product_motivic(local, curve, bound);
        for (long q : cc.qs) {
          const RatSeries counting = euler_product_counting(local, curve, q, bound);
          const RatSeries specialised = specialize_series(motivic, q);
          const auto diff = specialised.first_difference(counting);
          rec.check(!diff, fan_name + "/" + cc.name + "/" + local_name + " q=" + std::to_string(q) + " differs at " +
                               (diff ? to_string(*diff) : std::string()));
          ++compared;
        }
      }
    }
  }
  rec.note(std::to_string(compared) + " (fan, curve, local factor, q) cases compared to total degree " +
           std::to_string(bound));
  return rec.finish("motivic Euler products specialise to the counting Euler products coefficientwise");
}

CriterionResult verify_moebius_laws(VerifyBudget budget) {
  Recorder rec(6, "moebius-laws", 30);
  for (const std::string& name : library_fans()) {
    if (budget == VerifyBudget::small && name == "dp6") continue;
    const Fan fan = builtin_fan(name);
    const std::size_t n = fan.num_rays();
    const LocalFactor mu = classical_moebius(fan);
    for (const auto& [e, c] : mu.series.terms()) {
      rec.check(std::all_of(e.begin(), e.end(), [](int x) { return x == 0 || x == 1; }),
                name + ": classical coefficient off {0,1} at " + to_string(e));
      rec.check(total_degree(e) != 1, name + ": nonzero classical coefficient in degree 1 at " + to_string(e));
    }

    const Multidegree box_bound(n, 3);
    const Truncation box = Truncation::box(box_bound);
    const std::vector<Multidegree> region = box.region(n);
    // Classical inversion: partial sums of mu are the indicator of cone-supported support.
    for (const Multidegree& e : region) {
      Rational sum = 0;
      for (const auto& [k, c] : mu.series.terms())
        if (componentwise_le(k, e)) sum += c.coefficient(0);
      RayMask support = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (e[i]) support |= RayMask{1} << i;
      rec.check(sum == (fan.cone_supported(support) ? 1 : 0), name + ": classical inversion fails at " + to_string(e));
    }

    for (int mult : {1, 2}) {
      const std::vector<int> m = repeated(n, mult);
      const LocalFactor campana = campana_moebius(fan, m, box);
      if (mult == 1) {
        const auto diff = campana.series.first_difference(mu.series);
        rec.check(!diff, name + ": Campana Moebius with m=1 differs from classical at " + (diff ? to_string(*diff) : ""));
      }
      // Campana inversion: convolution with the unconstrained indicator gives the admissible indicator.
      auto unconstrained = [&](const Multidegree& e) {
        for (std::size_t i = 0; i < n; ++i)
          if (e[i] != 0 && e[i] < m[i]) return false;
        return true;
      };
      for (const Multidegree& e : region) {
        Rational sum = 0;
        for (const auto& [k, c] : campana.series.terms())
          if (componentwise_le(k, e) && unconstrained(e - k)) sum += c.coefficient(0);
        RayMask support = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (e[i]) support |= RayMask{1} << i;
        const bool admissible = unconstrained(e) && fan.cone_supported(support);
        rec.check(sum == (admissible ? 1 : 0),
                  name + " m=" + std::to_string(mult) + ": Campana inversion fails at " + to_string(e));
      }
    }
    rec.note(name + ": " + std::to_string(mu.series.terms().size()) + " classical Moebius terms checked");
  }
  return rec.finish("Moebius support, valuation, inversion identities and m=1 specialisation hold on e <= (3,...,3)");
}

CriterionResult verify_factorisation(VerifyBudget budget) {
  Recorder rec(7, "factorisation", 30);
  const int bound = budget == VerifyBudget::full ? 8 : 6;
  const Truncation region = Truncation::total_degree(bound);
  for (const std::string fan_name : {"p1", "p2"}) {
    const Fan fan = builtin_fan(fan_name);
    const std::size_t n = fan.num_rays();
    for (int mult : {1, 2}) {
      const std::vector<int> m = repeated(n, mult);
      const MotSeries moebius = campana_moebius(fan, m, region).series;
      const MotSeries unconstrained = unconstrained_local(m, region).series;
      const LocalFactor factored(pole_cancelling_local(m).series * moebius * unconstrained);
      const LocalFactor admissible = campana_admissible_local(fan, m, region);
      for (const std::string curve_name : {"p1", "elliptic:q2a2"}) {
        const CurveModel curve = builtin_curve(curve_name);
        const MotSeries lhs = zeta_product(curve, m, region) * euler_product_motivic(factored, curve, region);
        const MotSeries rhs = euler_product_motivic(admissible, curve, region);
        const auto diff = lhs.first_difference(rhs);
        rec.check(!diff, fan_name + " m=" + std::to_string(mult) + " curve " + curve_name + ": differs at " +
                             (diff ? to_string(*diff) : ""));
        rec.note(fan_name + " m=" + std::to_string(mult) + " curve " + curve_name + ": " +
                 std::to_string(rhs.terms().size()) + " coefficients agree");
      }
    }
  }
  return rec.finish("prod Z_C(T_i^m_i) * EP(prod(1-T_i^m_i) * P^eps * unconstrained) = EP(admissible) to degree " +
                    std::to_string(bound));
}

CriterionResult verify_curve_shadows(VerifyBudget) {
  Recorder rec(8, "curve-shadows", 5);
  const int bound = 10;
  for (const std::string name : {"p1", "elliptic:q2a2"}) {
    const CurveModel curve = builtin_curve(name);
    MotSeries factors = MotSeries::constant(1, MotClass(1));
    factors.add_to({1}, MotClass(-1));
    MotSeries second = MotSeries::constant(1, MotClass(1));
    second.add_to({1}, -MotClass::lefschetz());
    const MotSeries product = kapranov_zeta(curve, bound) * factors * second;
    MotSeries numerator(1);
    for (std::size_t k = 0; k < curve.numerator.size(); ++k) numerator.add_to({static_cast<int>(k)}, curve.numerator[k]);
    rec.check(product.equal_within(numerator), name + ": Z_C (1-T)(1-LT) != P_C");
  }
  const std::vector<std::pair<std::string, long>> count_cases{{"p1", 2}, {"p1", 3}, {"p1", 4}, {"p1", 5}, {"elliptic:q2a2", 2}};
  for (const auto& [name, q] : count_cases) {
    const PointCounts pc = point_counts(builtin_curve(name), q, 8);
    for (int mm = 1; mm <= 8; ++mm) {
      Integer sum = 0;
      for (int e = 1; e <= mm; ++e)
        if (mm % e == 0) sum += e * pc.b[e];
      rec.check(sum == pc.n[mm], name + " q=" + std::to_string(q) + ": sum e B_e != N_" + std::to_string(mm));
    }
  }
  for (const std::string& name : library_fans()) {
    const Fan fan = builtin_fan(name);
    const MotClass cls = toric_class(fan);
    for (long q : {2L, 3L, 4L}) {
      const AlgNumber predicted = count_specialize(cls, q);
      const Integer direct = orbit_point_count(fan, q);
      rec.check(predicted == AlgNumber(q, Rational(direct)),
                name + " q=" + std::to_string(q) + ": class gives " + predicted.to_string() + ", enumeration " +
                    direct.get_str());
    }
  }
  const Integer pic0 = pic0_count(builtin_curve("elliptic:q2a2"), 2);
  rec.check(pic0 == 5, "elliptic pic0 is " + pic0.get_str());
  rec.note("pic0(elliptic:q2a2) = " + pic0.get_str());
  return rec.finish("Kapranov rationality, closed-point counting, toric point counts and #Pic0 = 5 agree");
}

CriterionResult verify_structural(VerifyBudget budget) {
  Recorder rec(9, "structural", 120);
  struct Case {
    std::string fan;
    std::vector<int> d;
    int mult;
  };
  std::vector<Case> cases{
      {"p1", {1, 1}, 1},          {"p1", {2, 2}, 1},          {"p1", {3, 3}, 1},          {"p1", {4, 4}, 2},
      {"p2", {1, 1, 1}, 1},       {"p2", {2, 2, 2}, 1},       {"p2", {2, 2, 2}, 2},       {"p1xp1", {1, 1, 1, 1}, 1},
      {"p1xp1", {2, 2, 1, 1}, 1}, {"p1xp1", {2, 2, 2, 2}, 2}, {"hirzebruch:1", {1, 0, 1, 1}, 1},
      {"hirzebruch:1", {0, 1, 0, 1}, 1}, {"hirzebruch:1", {1, 1, 1, 2}, 1},
  };
  if (budget == VerifyBudget::full) cases.push_back({"p1xp1", {2, 2, 2, 2}, 1});
  const std::vector<Case> non_admissible{{"p1", {1, 2}, 1}, {"p2", {1, 2, 1}, 1}, {"hirzebruch:1", {1, 0, 0, 1}, 1}};

  int runs = 0;
  for (const Case& c : cases) {
    const Fan fan = builtin_fan(c.fan);
    const std::vector<int> m = repeated(fan.num_rays(), c.mult);
    for (long q : {2L, 3L}) {
      const std::string tag = c.fan + " d=" + tuple_text(c.d) + " m=" + std::to_string(c.mult) + " q=" + std::to_string(q);
      const Integer torus = pow(Integer(q - 1), static_cast<unsigned long>(fan.num_rays() - fan.dim()));
      const CountResult serial = count_hom_forms(fan, q, c.d, m, with_workers(1));
      rec.check(serial.raw % torus == 0, tag + ": raw count not divisible by (q-1)^rk");
      for (unsigned workers : {2u, 3u, 5u}) {
        const CountResult parallel = count_hom_forms(fan, q, c.d, m, with_workers(workers));
        rec.check(parallel.raw == serial.raw, tag + ": partitioned run with " + std::to_string(workers) + " workers differs");
      }
      const CountResult divisors = count_hom_divisors(fan, q, c.d, m, with_workers(3));
      rec.check(divisors.count == serial.count, tag + ": divisor oracle " + divisors.count.get_str() + " vs forms " +
                                                    serial.count.get_str());
      ++runs;
    }
  }
  for (const Case& c : non_admissible) {
    const Fan fan = builtin_fan(c.fan);
    const std::vector<int> m = repeated(fan.num_rays(), c.mult);
    for (long q : {2L, 3L}) {
      rec.check(count_hom_forms(fan, q, c.d, m).count == 0 && count_hom_divisors(fan, q, c.d, m).count == 0,
                c.fan + " d=" + tuple_text(c.d) + ": non-admissible degree has nonzero count");
    }
  }
  rec.note(std::to_string(runs) + " admissible cases, each with 4 partitionings and the divisor oracle");
  return rec.finish("torus divisibility, partition independence, oracle agreement and zero non-admissible counts");
}

std::vector<std::string> suite_names() {
  return {"classical-p1",   "p2-identity",  "campana-p1",    "convergence-p2", "euler-two-path",
          "moebius-laws",   "factorisation", "curve-shadows", "structural"};
}

std::vector<CriterionResult> run_suite(std::string_view name, VerifyBudget budget) {
  using Runner = std::function<CriterionResult(VerifyBudget)>;
  const std::vector<std::pair<std::string, Runner>> suites{
      {"classical-p1", verify_classical_p1},     {"p2-identity", verify_p2_identity},
      {"campana-p1", verify_campana_p1},         {"convergence-p2", verify_convergence_p2},
      {"euler-two-path", verify_euler_two_path}, {"moebius-laws", verify_moebius_laws},
      {"factorisation", verify_factorisation},   {"curve-shadows", verify_curve_shadows},
      {"structural", verify_structural},
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    const auto& [suite, run] = suites[i];
    if (name != "all" && name != suite) continue;
    try {
      out.push_back(run(budget));
    } catch (const Error& e) {
      CriterionResult failed;
      failed.id = static_cast<int>(i + 1);
      failed.name = suite;
      failed.summary = std::string("error: ") + e.what();
      out.push_back(failed);
    }
  }
  if (out.empty()) throw DomainError("unknown verify suite '" + std::string(name) + "'");
  return out;
}

}  // namespace toricount
