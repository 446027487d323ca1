#include "toricount/curve.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "toricount/error.hpp"

namespace toricount {

std::vector<Integer> CurveModel::numerator_at(long q) const {
  std::vector<Integer> out;
  for (const MotClass& c : numerator) {
    AlgNumber v = count_specialize(c, q);
    if (!v.is_rational() || !is_integer(v.rational_part()))
      throw DomainError("numerator coefficient " + c.to_string() + " is not an integer at q=" + std::to_string(q));
    out.push_back(v.rational_part().get_num());
  }
  return out;
}

CurveModel make_curve(int genus, std::vector<MotClass> numerator, std::string label) {
  if (genus < 0) throw DomainError("negative genus");
  while (numerator.size() > 1 && numerator.back().is_zero()) numerator.pop_back();
  if (numerator.empty() || numerator.front() != MotClass(1)) throw DomainError("numerator must satisfy P(0) = 1");
  if (static_cast<int>(numerator.size()) - 1 > 2 * genus)
    throw DomainError("numerator degree exceeds 2g = " + std::to_string(2 * genus));
  return CurveModel{genus, std::move(numerator), std::move(label)};
}

int moebius(long n) {
  int result = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

PointCounts point_counts(const CurveModel& curve, long q, int e_max) {
  if (e_max < 1) throw DomainError("e_max must be positive");
  if (!prime_of_prime_power(q)) throw DomainError(std::to_string(q) + " is not a prime power");
  const std::vector<Integer> c = curve.numerator_at(q);
  // P(T) = prod (1 - alpha_i T), so the elementary symmetric functions are (-1)^k c_k.
  auto elem = [&](int k) -> Integer {
    if (k >= static_cast<int>(c.size())) return 0;
    return k % 2 ? Integer(-c[k]) : c[k];
  };
  std::vector<Integer> power_sum(e_max + 1, 0);
  for (int m = 1; m <= e_max; ++m) {
    Integer p = (m % 2 ? 1 : -1) * m * elem(m);
    for (int i = 1; i < m; ++i) p += (i % 2 ? 1 : -1) * elem(i) * power_sum[m - i];
    power_sum[m] = p;
  }
  PointCounts out{q, std::vector<Integer>(e_max + 1, 0), std::vector<Integer>(e_max + 1, 0)};
  for (int m = 1; m <= e_max; ++m) out.n[m] = pow(Integer(q), m) + 1 - power_sum[m];
  for (int e = 1; e <= e_max; ++e) {
    Integer sum = 0;
    for (int d = 1; d <= e; ++d)
      if (e % d == 0) sum += moebius(d) * out.n[e / d];
    if (sum % e != 0 || sum < 0)
      throw DomainError("numerator gives an invalid closed-point count in degree " + std::to_string(e) + " at q=" +
                        std::to_string(q));
    out.b[e] = sum / e;
  }
  return out;
}

MotSeries kapranov_zeta(const CurveModel& curve, int bound) {
  const Truncation t = Truncation::total_degree(bound);
  MotSeries p(1, t);
  for (std::size_t k = 0; k < curve.numerator.size(); ++k) p.add_to({static_cast<int>(k)}, curve.numerator[k]);
  std::vector<MotClass> ones(bound + 1, MotClass(1));
  std::vector<MotClass> lpowers;
  for (int b = 0; b <= bound; ++b) lpowers.push_back(MotClass::monomial(1, b));
  return multiply_by_univariate(multiply_by_univariate(p, ones, {1}, true), lpowers, {1}, true);
}

long h0(const CurveModel& curve, long d) {
  if (d < 0) return 0;
  if (curve.genus == 0) return d + 1;
  if (d > 2 * curve.genus - 2) return d + 1 - curve.genus;
  throw DomainError("h0 in degree " + std::to_string(d) + " depends on the line bundle for genus " +
                    std::to_string(curve.genus));
}

Integer pic0_count(const CurveModel& curve, long q) {
  Integer sum = 0;
  for (const Integer& c : curve.numerator_at(q)) sum += c;
  if (sum <= 0) throw DomainError("P_C(1) is not positive at q=" + std::to_string(q));
  return sum;
}

CurveModel builtin_curve(std::string_view name) {
  if (name == "p1") return make_curve(0, {MotClass(1)}, "p1");
  static const std::regex elliptic(R"(elliptic:q(\d+)a(-?\d+))");
  std::cmatch match;
  if (std::regex_match(name.begin(), name.end(), match, elliptic)) {
    const long q = std::stol(match[1]);
    const long a = std::stol(match[2]);
    return make_curve(1, {MotClass(1), MotClass(a), MotClass(q)}, std::string(name));
  }
  throw ParseError("unknown curve preset '" + std::string(name) + "'");
}

CurveModel parse_curve(const nlohmann::json& document) {
  try {
    if (!document.is_object() || !document.contains("genus")) throw ParseError("curve document needs 'genus'");
    const int genus = document.at("genus").get<int>();
    std::vector<MotClass> numerator;
    if (document.contains("numerator_coeffs")) {
      for (const auto& c : document.at("numerator_coeffs")) {
        if (c.is_number_integer())
          numerator.emplace_back(c.get<long>());
        else if (c.is_string())
          numerator.push_back(MotClass::parse(c.get<std::string>()));
        else
          throw ParseError("numerator coefficient must be an integer or class text");
      }
    } else {
      numerator.emplace_back(1);
    }
    std::string label = document.value("label", std::string("genus") + std::to_string(genus));
    return make_curve(genus, std::move(numerator), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed curve document: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

nlohmann::json curve_to_json(const CurveModel& curve) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const MotClass& c : curve.numerator) {
    if (c.is_constant() && is_integer(c.coefficient(0)))
      coeffs.push_back(to_long(c.coefficient(0).get_num()));
    else
      coeffs.push_back(c.to_string());
  }
  return {{"genus", curve.genus}, {"numerator_coeffs", coeffs}, {"label", curve.label}};
}

CurveModel resolve_curve(std::string_view name_or_path) {
  try {
    return builtin_curve(name_or_path);
  } catch (const ParseError&) {
  }
  std::ifstream in{std::string(name_or_path)};
  if (!in) throw ParseError("'" + std::string(name_or_path) + "' is neither a curve preset nor a readable file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_curve(nlohmann::json::parse(buffer.str()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed curve file: ") + e.what());
  }
}

}  // namespace toricount
