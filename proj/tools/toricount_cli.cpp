#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toricount/curve.hpp"
#include "toricount/error.hpp"
#include "toricount/euler.hpp"
#include "toricount/fan.hpp"
#include "toricount/predict.hpp"
#include "toricount/verify.hpp"

using namespace toricount;

namespace {

enum Exit : int { ok = 0, usage = 1, validation = 2, mismatch = 3, budget = 4 };

std::vector<int> parse_tuple(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("'" + text + "' is not a comma-separated integer list");
    }
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

std::vector<int> multiplicities(const Fan& fan, const std::string& text) {
  if (text.empty()) return std::vector<int>(fan.num_rays(), 1);
  std::vector<int> m = parse_tuple(text);
  if (m.size() == 1) m.assign(fan.num_rays(), m[0]);
  if (m.size() != fan.num_rays()) throw ParseError("--m needs one entry per ray");
  for (int x : m)
    if (x < 1) throw ParseError("multiplicities must be positive");
  return m;
}

std::string set_text(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string matrix_text(const IntMatrix& m) {
  std::string out;
  for (const IntVector& row : m) {
    out += "  [";
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? ", " : "") + std::to_string(row[i]);
    out += "]\n";
  }
  return out;
}

// 64-bit FNV-1a, stable across platforms.
std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

template <class C>
std::string polynomial_text(const MultiSeries<C>& s) {
  std::string out;
  for (const auto& [e, c] : s.terms()) {
    std::string coeff = coeff_text(c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "T" + std::to_string(i) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
    bool negative = !coeff.empty() && coeff[0] == '-' && coeff.find(' ') == std::string::npos;
    if (negative) coeff = coeff.substr(1);
    std::string term;
    if (mono.empty())
      term = coeff;
    else if (coeff == "1")
      term = mono;
    else
      term = (coeff.find(' ') != std::string::npos ? "(" + coeff + ")" : coeff) + "*" + mono;
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

int run_fan(const std::string& action, const std::string& fan_name) {
  const Fan fan = resolve_fan(fan_name);
  if (action == "validate") {
    const ValidationReport report = validate(fan);
    std::cout << "fan: " << fan.label() << "\n"
              << "smooth: " << (report.smooth ? "yes" : "no") << "\n"
              << "complete: " << (report.complete ? "yes" : "no") << "\n";
    for (const std::string& d : report.details) std::cout << "violation: " << d << "\n";
    return report.ok() ? Exit::ok : Exit::validation;
  }
  if (action == "invariants") {
    const PicData pic = picard_lattice(fan);
    std::cout << "fan: " << fan.label() << "\n"
              << "dimension: " << fan.dim() << "\n"
              << "rays: " << fan.num_rays() << "\n"
              << "maximal cones: " << fan.max_cones().size() << "\n"
              << "picard rank: " << pic.rank << "\n"
              << "ray pairing:\n"
              << matrix_text(pic.ray_pairing) << "degree map:\n"
              << matrix_text(pic.quotient) << "section matrix:\n"
              << matrix_text(pic.section_matrix) << "class: " << toric_class(fan).to_string() << "\n";
    return Exit::ok;
  }
  if (action == "collections") {
    for (const auto& c : primitive_collections(fan).minimal_collections) std::cout << set_text(c) << "\n";
    return Exit::ok;
  }
  if (action == "export") {
    std::cout << fan_to_json(fan).dump(2) << "\n";
    return Exit::ok;
  }
  throw ParseError("unknown fan action '" + action + "'");
}

struct SeriesArgs {
  std::string action;
  std::string fan;
  std::string m;
  std::string curve = "p1";
  std::string local = "admissible";
  int bound = 6;
  long q = 0;
};

int run_series(const SeriesArgs& args) {
  const Fan fan = resolve_fan(args.fan);
  const std::vector<int> m = multiplicities(fan, args.m);
  auto header = [&](const std::string& kind, const Truncation& t) {
    std::cout << "# series " << kind << "\n# fan " << fan.label() << "\n# variables";
    for (std::size_t i = 0; i < fan.num_rays(); ++i) std::cout << " T" << i;
    std::cout << "\n# truncation " << t.to_string() << "\n";
  };
  auto local_factor = [&](const std::string& name) {
    if (name == "moebius") return classical_moebius(fan);
    if (name == "campana-moebius") return campana_moebius(fan, m, args.bound);
    if (name == "admissible") return campana_admissible_local(fan, m, args.bound);
    throw ParseError("unknown local factor '" + name + "'");
  };

  if (args.action == "moebius" || args.action == "campana-moebius" || args.action == "admissible") {
    const LocalFactor local = local_factor(args.action);
    header(args.action, local.series.truncation());
    if (local.series.truncation().is_exact()) std::cout << "# polynomial " << polynomial_text(local.series) << "\n";
    std::cout << local.series.dump();
    return Exit::ok;
  }
  if (args.action == "euler") {
    const CurveModel curve = resolve_curve(args.curve);
    const LocalFactor local = local_factor(args.local);
    if (args.q) {
      const RatSeries ep = euler_product_counting(local, curve, args.q, args.bound);
      header("euler local=" + args.local + " curve=" + curve.label + " q=" + std::to_string(args.q), ep.truncation());
      std::cout << ep.dump();
    } else {
      const MotSeries ep = euler_product_motivic(local, curve, args.bound);
      header("euler local=" + args.local + " curve=" + curve.label + " motivic", ep.truncation());
      std::cout << ep.dump();
    }
    return Exit::ok;
  }
  throw ParseError("unknown series action '" + args.action + "'");
}

struct CountArgs {
  std::string fan;
  std::string curve = "p1";
  std::vector<long> qs;
  std::string m;
  std::vector<std::string> degrees;
  int degree_ray = 0;
  /// 0 selects 12 * max(m).
  int bound = 0;
  std::uint64_t budget = 200'000'000;
  double time_limit = 0;
  std::string out;
  unsigned workers = 1;
  bool no_brute = false;
};

int run_count(const CountArgs& args) {
  const Fan fan = resolve_fan(args.fan);
  const CurveModel curve = resolve_curve(args.curve);
  const std::vector<int> m = multiplicities(fan, args.m);
  std::vector<std::vector<int>> degrees;
  for (const std::string& d : args.degrees) {
    degrees.push_back(parse_tuple(d));
    if (degrees.back().size() != fan.num_rays()) throw ParseError("--deg needs one entry per ray");
  }
  for (int delta = 1; delta <= args.degree_ray; ++delta) degrees.emplace_back(fan.num_rays(), delta);
  if (degrees.empty()) throw ParseError("no degrees given (use --deg or --deg-ray)");
  if (args.qs.empty()) throw ParseError("no field size given (use --q)");
  if (args.budget == 0 || args.workers == 0 || args.bound < 0) throw ParseError("budgets must be positive");
  const int bound = args.bound > 0 ? args.bound : 12 * *std::max_element(m.begin(), m.end());

  ReportOptions options;
  options.bound = bound;
  options.budget.max_tuples = args.budget;
  options.budget.workers = args.workers;
  if (args.time_limit > 0)
    options.budget.time_limit = std::chrono::milliseconds(static_cast<long>(args.time_limit * 1000));
  options.brute_force = !args.no_brute;
  options.divisor_oracle = !args.no_brute;

  CountReport combined;
  combined.truncation_bound = options.bound;
  combined.budget = options.budget;
  const auto start = std::chrono::steady_clock::now();
  for (long q : args.qs) {
    CountReport r = convergence_report(fan, curve, q, m, degrees, options);
    combined.rows.insert(combined.rows.end(), r.rows.begin(), r.rows.end());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "count finished in " << seconds << " s\n";

  nlohmann::json config = {{"fan", fan_to_json(fan)},   {"curve", curve_to_json(curve)}, {"q", args.qs},
                           {"m", m},                    {"degrees", degrees},            {"bound", bound},
                           {"max_tuples", args.budget}, {"brute_force", !args.no_brute}};
  nlohmann::json structured = report_json(combined);
  structured["metadata"]["config"] = config;
  structured["metadata"]["config_hash"] = config_hash(config.dump());

  const std::string csv = report_csv(combined);
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream(args.out + ".csv") << csv;
    std::ofstream(args.out + ".json") << structured.dump(2) << "\n";
    std::cout << "wrote " << args.out << ".csv and " << args.out << ".json\n";
  }
  bool any_mismatch = false;
  bool any_budget = false;
  for (const CountRow& row : combined.rows) {
    any_mismatch = any_mismatch || row.status == "mismatch";
    any_budget = any_budget || row.status == "budget";
  }
  if (any_mismatch) return Exit::mismatch;
  if (any_budget) return Exit::budget;
  return Exit::ok;
}

int run_verify(const std::string& suite, const std::string& budget_name) {
  VerifyBudget budget;
  if (budget_name == "full")
    budget = VerifyBudget::full;
  else if (budget_name == "small")
    budget = VerifyBudget::small;
  else
    throw ParseError("--budget must be small or full");
  int failures = 0;
  for (const CriterionResult& r : run_suite(suite, budget)) {
    if (!r.pass) ++failures;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " [" << r.name << "]: " << r.summary << "\n";
    for (const std::string& line : r.details) std::cout << "    " << line << "\n";
    std::cerr << r.name << " took " << r.seconds << " s\n";
  }
  std::cout << failures << " failed\n";
  return failures == 0 ? Exit::ok : Exit::mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Count curves on toric varieties over finite fields and compare with Euler-product predictions"};
  app.require_subcommand(1);

  std::string fan_action, fan_name;
  auto* fan_cmd = app.add_subcommand("fan", "inspect a fan (validate, invariants, collections, export)");
  fan_cmd->add_option("action", fan_action)->required()->check(CLI::IsMember({"validate", "invariants", "collections", "export"}));
  fan_cmd->add_option("fan", fan_name, "builtin name or fan file")->required();

  SeriesArgs series;
  auto* series_cmd = app.add_subcommand("series", "print a local series or an Euler product");
  series_cmd->add_option("action", series.action)
      ->required()
      ->check(CLI::IsMember({"moebius", "campana-moebius", "admissible", "euler"}));
  series_cmd->add_option("fan", series.fan, "builtin name or fan file")->required();
  series_cmd->add_option("--m", series.m, "multiplicities, one per ray or a single value");
  series_cmd->add_option("--bound", series.bound, "total-degree truncation")->check(CLI::PositiveNumber);
  series_cmd->add_option("--curve", series.curve, "curve preset or file");
  series_cmd->add_option("--q", series.q, "field size; omit for the motivic product");
  series_cmd->add_option("--local", series.local, "local factor for euler")
      ->check(CLI::IsMember({"moebius", "campana-moebius", "admissible"}));

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "count morphisms and compare with the prediction");
  count_cmd->add_option("--fan", count.fan, "builtin name or fan file")->required();
  count_cmd->add_option("--curve", count.curve, "curve preset or file");
  count_cmd->add_option("--q", count.qs, "field sizes")->delimiter(',');
  count_cmd->add_option("--m", count.m, "multiplicities");
  count_cmd->add_option("--deg", count.degrees, "multidegree, comma separated (repeatable)");
  count_cmd->add_option("--deg-ray", count.degree_ray, "add delta*(1,...,1) for delta = 1..N");
  count_cmd->add_option("--bound", count.bound, "Euler product truncation for the limit constant (default 12*max m)");
  count_cmd->add_option("--budget", count.budget, "maximum tuples per enumeration");
  count_cmd->add_option("--time-limit", count.time_limit, "wall-clock limit per enumeration in seconds");
  count_cmd->add_option("--out", count.out, "write <out>.csv and <out>.json instead of printing CSV");
  count_cmd->add_option("--workers", count.workers, "enumeration threads");
  count_cmd->add_flag("--no-brute", count.no_brute, "skip the enumeration oracles");

  std::string suite, budget_name = "full";
  auto* verify_cmd = app.add_subcommand("verify", "run an acceptance suite");
  std::vector<std::string> suites = suite_names();
  suites.emplace_back("all");
  verify_cmd->add_option("suite", suite)->required()->check(CLI::IsMember(suites));
  verify_cmd->add_option("--budget", budget_name, "small or full")->check(CLI::IsMember({"small", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*fan_cmd) return run_fan(fan_action, fan_name);
    if (*series_cmd) return run_series(series);
    if (*count_cmd) return run_count(count);
    if (*verify_cmd) return run_verify(suite, budget_name);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return Exit::budget;
  } catch (const OracleMismatch& e) {
    std::cerr << "oracle mismatch: " << e.what() << "\n";
    return Exit::mismatch;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  }
  return Exit::usage;
}
