#include "toricount/ffcount.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <functional>
#include <thread>

#include "toricount/error.hpp"

namespace toricount {

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
}

Poly BinaryForm::dehomogenised() const {
  Poly out(degree + 1, 0);
  for (int k = 0; k <= degree; ++k) out[degree - k] = coeffs[k];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

int BinaryForm::infinity_multiplicity() const {
  for (int k = 0; k <= degree; ++k)
    if (coeffs[k] != 0) return k;
  throw DomainError("the zero form has no multiplicity profile");
}

std::string ClosedPoint::to_string() const {
  if (infinity) return "inf";
  std::string out;
  for (int i = toricount::degree(poly); i >= 0; --i) {
    if (poly[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || poly[i] != 1) out += std::to_string(poly[i]);
    if (i >= 1) out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

int PointDivisor::degree() const {
  int out = 0;
  for (const auto& [p, mult] : points) out += mult * p.degree();
  return out;
}

ClosedPointTable closed_points(const FiniteField& field, int deg_max) {
  if (deg_max < 1) throw DomainError("closed point table needs depth at least 1");
  const int q = field.size();
  ClosedPointTable table{q, std::vector<std::vector<ClosedPoint>>(deg_max + 1)};
  table.by_degree[1].push_back({true, {}});
  for (int c = 0; c < q; ++c) table.by_degree[1].push_back({false, {c, 1}});
  for (int e = 2; e <= deg_max; ++e) {
    std::uint64_t total = 1;
    for (int i = 0; i < e; ++i) {
      total *= q;
      if (total > 50'000'000) throw BudgetExceeded("closed point table of degree " + std::to_string(e) + " is too large");
    }
    std::vector<bool> reducible(total, false);
    for (int a = 1; 2 * a <= e; ++a) {
      std::uint64_t cofactors = 1;
      for (int i = 0; i < e - a; ++i) cofactors *= q;
      for (const ClosedPoint& g : table.by_degree[a]) {
        if (g.infinity) continue;
        for (std::uint64_t h = 0; h < cofactors; ++h)
          reducible[index_of_monic(q, poly_mul(field, g.poly, monic_from_index(q, e - a, h)))] = true;
      }
    }
    for (std::uint64_t idx = 0; idx < total; ++idx)
      if (!reducible[idx]) table.by_degree[e].push_back({false, monic_from_index(q, e, idx)});
  }
  return table;
}

ClosedPointTable closed_points(long q, int deg_max) { return closed_points(FiniteField(q), deg_max); }

PointDivisor multiplicity_profile(const FiniteField& field, const BinaryForm& f, const ClosedPointTable& table) {
  if (f.is_zero()) throw DomainError("the zero form has no multiplicity profile");
  PointDivisor out;
  if (const int inf = f.infinity_multiplicity(); inf > 0) out.points.push_back({ClosedPoint{true, {}}, inf});
  Poly g = f.dehomogenised();
  for (int e = 1; e <= table.depth() && degree(g) > 0; ++e) {
    for (const ClosedPoint& p : table.by_degree[e]) {
      if (p.infinity) continue;
      if (degree(g) < e) break;
      int mult = 0;
      for (;;) {
        Poly quotient;
        if (!poly_rem(field, g, p.poly, &quotient).empty()) break;
        g = std::move(quotient);
        ++mult;
      }
      if (mult) out.points.push_back({p, mult});
    }
  }
  if (degree(g) > 0) throw DomainError("closed point table too shallow to factor a form of degree " + std::to_string(f.degree));
  return out;
}

bool campana_admissible(const PointDivisor& d, int m) {
  if (m < 1) throw DomainError("multiplicity must be positive");
  return std::all_of(d.points.begin(), d.points.end(), [m](const auto& p) { return p.second >= m; });
}

std::vector<BinaryForm> all_forms(const FiniteField& field, int d) {
  const int q = field.size();
  std::uint64_t total = 1;
  for (int i = 0; i <= d; ++i) {
    total *= q;
    if (total > 50'000'000) throw BudgetExceeded("too many forms of degree " + std::to_string(d));
  }
  std::vector<BinaryForm> out;
  out.reserve(total - 1);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    BinaryForm f{d, std::vector<int>(d + 1)};
    std::uint64_t rest = idx;
    for (int k = d; k >= 0; --k) {
      f.coeffs[k] = static_cast<int>(rest % q);
      rest /= q;
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

void check_inputs(const Fan& fan, long q, std::span<const int> d, std::span<const int> m) {
  if (!prime_of_prime_power(q)) throw DomainError(std::to_string(q) + " is not a prime power");
  if (d.size() != fan.num_rays() || m.size() != fan.num_rays())
    throw DomainError("degree and multiplicity tuples must have one entry per ray");
  for (int x : d)
    if (x < 0) throw DomainError("degrees must be nonnegative");
  for (int x : m)
    if (x < 1) throw DomainError("multiplicities must be positive");
}

// Collections grouped by their largest member, so each is tested as soon as
// the enumeration has assigned all of its members.
std::vector<std::vector<std::vector<int>>> collections_by_last(const Fan& fan) {
  std::vector<std::vector<std::vector<int>>> out(fan.num_rays());
  for (const auto& c : primitive_collections(fan).minimal_collections) out[c.back()].push_back(c);
  return out;
}

// Depth-first enumeration over per-coordinate candidate lists, partitioned
// across workers by the candidate index in coordinate 0.
template <class Candidate, class Accept>
Integer enumerate_tuples(const std::vector<std::vector<Candidate>>& lists, const Accept& accept,
                         const CountOptions& options) {
  const std::size_t n = lists.size();
  Integer space = 1;
  for (const auto& l : lists) space *= static_cast<unsigned long>(l.size());
  if (space > Integer(std::to_string(options.max_tuples)))
    throw BudgetExceeded("tuple space " + space.get_str() + " exceeds the budget of " + std::to_string(options.max_tuples));
  if (space == 0) return 0;

  const auto deadline = options.time_limit
                            ? std::optional(std::chrono::steady_clock::now() + *options.time_limit)
                            : std::nullopt;
  std::atomic<bool> expired{false};
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, lists[0].size()));
  std::vector<std::uint64_t> partial(workers, 0);

  auto run = [&](unsigned w) {
    std::vector<const Candidate*> chosen(n, nullptr);
    std::uint64_t count = 0;
    std::uint64_t steps = 0;
    std::function<void(std::size_t)> descend = [&](std::size_t i) {
      if (expired.load(std::memory_order_relaxed)) return;
      if (i == n) {
        ++count;
        return;
      }
      const auto& list = lists[i];
      for (std::size_t c = (i == 0 ? w : 0); c < list.size(); c += (i == 0 ? workers : 1)) {
        chosen[i] = &list[c];
        if (deadline && (++steps & 0xfff) == 0 && std::chrono::steady_clock::now() > *deadline) {
          expired = true;
          return;
        }
        if (accept(i, chosen)) descend(i + 1);
      }
    };
    descend(0);
    partial[w] = count;
  };

  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(run, w);
  run(0);
  for (auto& t : threads) t.join();
  if (expired) throw BudgetExceeded("wall-clock budget exhausted");
  Integer total = 0;
  for (std::uint64_t c : partial) total += static_cast<unsigned long>(c);
  return total;
}

struct FormCandidate {
  Poly affine;
  bool zero_at_infinity;
};

}  // namespace

CountResult count_hom_forms(const Fan& fan, long q, std::span<const int> d, std::span<const int> m,
                            const CountOptions& options) {
  check_inputs(fan, q, d, m);
  if (!degree_admissible(fan, d)) return {0, 0};
  const FiniteField field(q);
  const int max_d = *std::max_element(d.begin(), d.end());
  const ClosedPointTable table = closed_points(field, std::max(1, max_d));

  std::vector<std::vector<FormCandidate>> lists(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    for (const BinaryForm& f : all_forms(field, d[i])) {
      if (m[i] > 1 && !campana_admissible(multiplicity_profile(field, f, table), m[i])) continue;
      lists[i].push_back({f.dehomogenised(), f.infinity_multiplicity() > 0});
    }
  }

  const auto by_last = collections_by_last(fan);
  auto accept = [&](std::size_t i, const std::vector<const FormCandidate*>& chosen) {
    for (const auto& collection : by_last[i]) {
      bool all_at_infinity = true;
      Poly g;
      for (int j : collection) {
        all_at_infinity = all_at_infinity && chosen[j]->zero_at_infinity;
        g = poly_gcd(field, g, chosen[j]->affine);
        if (degree(g) == 0 && !all_at_infinity) break;
      }
      if (all_at_infinity || degree(g) > 0) return false;
    }
    return true;
  };

  CountResult out;
  out.raw = enumerate_tuples(lists, accept, options);
  const Integer torus = pow(Integer(q - 1), static_cast<unsigned long>(fan.num_rays() - fan.dim()));
  if (out.raw % torus != 0)
    throw OracleMismatch("raw count " + out.raw.get_str() + " is not divisible by the torus order " + torus.get_str());
  out.count = out.raw / torus;
  return out;
}

namespace {

void divisors_from(const std::vector<ClosedPoint>& points, std::size_t index, int remaining, int m,
                   PointDivisor& current, std::vector<PointDivisor>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  if (index == points.size()) return;
  const int e = points[index].degree();
  if (e > remaining) return;  // points are sorted by degree
  divisors_from(points, index + 1, remaining, m, current, out);
  for (int mult = m; mult * e <= remaining; ++mult) {
    current.points.push_back({points[index], mult});
    divisors_from(points, index + 1, remaining - mult * e, m, current, out);
    current.points.pop_back();
  }
}

constexpr std::size_t kMaxPoints = 1024;
using PointSet = std::bitset<kMaxPoints>;

struct DivisorCandidate {
  PointSet support;
};

}  // namespace

std::vector<PointDivisor> effective_divisors(const ClosedPointTable& table, int d, int m) {
  if (d < 0) throw DomainError("negative divisor degree");
  if (d > table.depth()) throw DomainError("closed point table is too shallow");
  std::vector<ClosedPoint> points;
  for (int e = 1; e <= d; ++e) points.insert(points.end(), table.by_degree[e].begin(), table.by_degree[e].end());
  std::vector<PointDivisor> out;
  PointDivisor current;
  divisors_from(points, 0, d, m, current, out);
  return out;
}

CountResult count_hom_divisors(const Fan& fan, long q, std::span<const int> d, std::span<const int> m,
                               const CountOptions& options) {
  check_inputs(fan, q, d, m);
  if (!degree_admissible(fan, d)) return {0, 0};
  const int max_d = std::max(1, *std::max_element(d.begin(), d.end()));
  const ClosedPointTable table = closed_points(q, max_d);

  std::vector<ClosedPoint> all_points;
  for (int e = 1; e <= max_d; ++e)
    all_points.insert(all_points.end(), table.by_degree[e].begin(), table.by_degree[e].end());
  if (all_points.size() > kMaxPoints) throw BudgetExceeded("too many closed points for the divisor oracle");
  auto point_index = [&](const ClosedPoint& p) {
    return static_cast<std::size_t>(std::find(all_points.begin(), all_points.end(), p) - all_points.begin());
  };

  std::vector<std::vector<DivisorCandidate>> lists(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    for (const PointDivisor& div : effective_divisors(table, d[i], m[i])) {
      DivisorCandidate c;
      for (const auto& [p, mult] : div.points) c.support.set(point_index(p));
      lists[i].push_back(c);
    }
  }

  const auto by_last = collections_by_last(fan);
  auto accept = [&](std::size_t i, const std::vector<const DivisorCandidate*>& chosen) {
    for (const auto& collection : by_last[i]) {
      PointSet common = chosen[collection[0]]->support;
      for (std::size_t k = 1; k < collection.size() && common.any(); ++k) common &= chosen[collection[k]]->support;
      if (common.any()) return false;
    }
    return true;
  };

  CountResult out;
  out.raw = enumerate_tuples(lists, accept, options);
  out.count = out.raw * pow(Integer(q - 1), static_cast<unsigned long>(fan.dim()));
  return out;
}

Integer orbit_point_count(const Fan& fan, long q) {
  if (!prime_of_prime_power(q)) throw DomainError(std::to_string(q) + " is not a prime power");
  const std::size_t n = fan.num_rays();
  double space = 1;
  for (std::size_t i = 0; i < n; ++i) space *= static_cast<double>(q);
  if (space > 5e7) throw BudgetExceeded("Cox coordinate space is too large to enumerate");
  std::vector<long> x(n, 0);
  Integer supported = 0;
  for (;;) {
    RayMask zeros = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] == 0) zeros |= RayMask{1} << i;
    if (fan.cone_supported(zeros)) ++supported;
    std::size_t i = 0;
    while (i < n && ++x[i] == q) x[i++] = 0;
    if (i == n) break;
  }
  const Integer torus = pow(Integer(q - 1), static_cast<unsigned long>(n - fan.dim()));
  if (supported % torus != 0) throw OracleMismatch("Cox point count is not divisible by the torus order");
  return supported / torus;
}

}  // namespace toricount
