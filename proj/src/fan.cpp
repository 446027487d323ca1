#include "toricount/fan.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "toricount/error.hpp"

namespace toricount {

RayMask mask_of(std::span<const int> indices) {
  RayMask m = 0;
  for (int i : indices) m |= RayMask{1} << i;
  return m;
}

std::vector<int> indices_of(RayMask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i);
  }
  return out;
}

Fan::Fan(int dim, IntMatrix rays, std::vector<std::vector<int>> max_cones, std::string label)
    : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)), label_(std::move(label)) {
  if (dim_ < 1) throw ParseError("fan dimension must be at least 1");
  if (rays_.empty()) throw ParseError("fan has no rays");
  if (rays_.size() > 62) throw ParseError("too many rays");
  std::set<IntVector> seen;
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const auto& ray = rays_[i];
    if (static_cast<int>(ray.size()) != dim_)
      throw ParseError("ray " + std::to_string(i) + " has wrong length");
    long g = 0;
    for (long c : ray) g = std::gcd(g, std::labs(c));
    if (g == 0) throw ParseError("ray " + std::to_string(i) + " is zero");
    if (g != 1) throw ParseError("ray " + std::to_string(i) + " is not primitive");
    if (!seen.insert(ray).second) throw ParseError("duplicate ray " + std::to_string(i));
  }
  std::set<std::vector<int>> seen_cones;
  for (auto& cone : max_cones_) {
    if (static_cast<int>(cone.size()) != dim_)
      throw ParseError("maximal cone of wrong size (expected " + std::to_string(dim_) + " rays)");
    for (int idx : cone) {
      if (idx < 0 || idx >= static_cast<int>(rays_.size()))
        throw ParseError("cone references ray index out of range");
    }
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
      throw ParseError("cone repeats a ray");
    if (!seen_cones.insert(cone).second) throw ParseError("duplicate maximal cone");
    cone_masks_.push_back(mask_of(cone));
  }
  if (max_cones_.empty()) throw ParseError("fan has no maximal cones");
}

bool Fan::cone_supported(RayMask s) const {
  return std::any_of(cone_masks_.begin(), cone_masks_.end(),
                     [s](RayMask c) { return (s & ~c) == 0; });
}

bool Fan::operator==(const Fan& other) const {
  return dim_ == other.dim_ && rays_ == other.rays_ && max_cones_ == other.max_cones_ &&
         label_ == other.label_;
}

Fan parse_fan(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("fan document must be an object");
    const nlohmann::json* dim = doc.contains("dim") ? &doc.at("dim") : nullptr;
    if (!dim && doc.contains("n")) dim = &doc.at("n");
    const nlohmann::json* cones = doc.contains("max_cones") ? &doc.at("max_cones") : nullptr;
    if (!cones && doc.contains("cones")) cones = &doc.at("cones");
    if (!dim || !doc.contains("rays") || !cones)
      throw ParseError("fan document needs dim, rays and max_cones");
    std::string label = doc.contains("label") ? doc.at("label").get<std::string>() : std::string{};
    return Fan(dim->get<int>(), doc.at("rays").get<IntMatrix>(),
               cones->get<std::vector<std::vector<int>>>(), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed fan document: ") + e.what());
  }
}

Fan parse_fan_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fan file is not valid JSON: ") + e.what());
  }
  return parse_fan(doc);
}

nlohmann::json fan_to_json(const Fan& fan) {
  return nlohmann::json{{"dim", fan.dim()},
                        {"rays", fan.rays()},
                        {"max_cones", fan.max_cones()},
                        {"label", fan.label()}};
}

Fan builtin_fan(std::string_view name) {
  if (name == "p1") return Fan(1, {{1}, {-1}}, {{0}, {1}}, "P1");
  if (name == "p2") return Fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}, "P2");
  if (name == "p1xp1")
    return Fan(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {1, 2}, {1, 3}, {0, 3}}, "P1xP1");
  if (name == "dp6")
    return Fan(2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
               {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}, "dP6");
  constexpr std::string_view hirz = "hirzebruch:";
  if (name.substr(0, hirz.size()) == hirz) {
    std::string arg(name.substr(hirz.size()));
    char* end = nullptr;
    long a = std::strtol(arg.c_str(), &end, 10);
    if (arg.empty() || *end != '\0' || a < 0) throw ParseError("bad Hirzebruch parameter");
    return Fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
               "F" + std::to_string(a));
  }
  throw ParseError("unknown builtin fan: " + std::string(name));
}

std::vector<std::string> builtin_fan_names() {
  return {"p1", "p2", "p1xp1", "hirzebruch:0", "hirzebruch:1", "hirzebruch:2", "hirzebruch:3",
          "dp6"};
}

Fan resolve_fan(std::string_view name_or_path) {
  try {
    return builtin_fan(name_or_path);
  } catch (const ParseError&) {
    if (name_or_path.rfind("hirzebruch:", 0) == 0) throw;
  }
  std::ifstream in{std::string(name_or_path)};
  if (!in) throw ParseError("no builtin fan or readable file named " + std::string(name_or_path));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fan_text(buf.str());
}

long determinant(IntMatrix m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  long sign = 1;
  long prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

IntMatrix rows_of(const Fan& fan, std::span<const int> idx) {
  IntMatrix out;
  for (int i : idx) out.push_back(fan.rays()[i]);
  return out;
}

// det of [facet rays; v]
long side_of(const Fan& fan, std::span<const int> facet, const IntVector& v) {
  IntMatrix m = rows_of(fan, facet);
  m.push_back(v);
  return determinant(m);
}

}  // namespace

ValidationReport validate(const Fan& fan) {
  ValidationReport report;
  const int n = fan.dim();
  const auto& cones = fan.max_cones();

  for (std::size_t c = 0; c < cones.size(); ++c) {
    long det = determinant(rows_of(fan, cones[c]));
    if (det != 1 && det != -1) {
      report.smooth = false;
      report.details.push_back("cone " + std::to_string(c) + " has determinant " +
                               std::to_string(det));
    }
  }

  RayMask used = 0;
  for (RayMask m : fan.cone_masks()) used |= m;
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    if (!(used >> i & 1)) {
      report.complete = false;
      report.details.push_back("ray " + std::to_string(i) + " lies in no maximal cone");
    }
  }

  // facet -> cones containing it
  std::map<std::vector<int>, std::vector<std::size_t>> facets;
  for (std::size_t c = 0; c < cones.size(); ++c) {
    for (int drop = 0; drop < n; ++drop) {
      std::vector<int> facet;
      for (int k = 0; k < n; ++k)
        if (k != drop) facet.push_back(cones[c][k]);
      facets[facet].push_back(c);
    }
  }
  std::vector<std::vector<std::size_t>> adjacency(cones.size());
  for (const auto& [facet, owners] : facets) {
    if (owners.size() != 2) {
      report.complete = false;
      std::ostringstream os;
      os << "facet {";
      for (std::size_t k = 0; k < facet.size(); ++k) os << (k ? "," : "") << facet[k];
      os << "} borders " << owners.size() << " maximal cone(s)";
      report.details.push_back(os.str());
      continue;
    }
    auto apex = [&](std::size_t c) {
      for (int idx : cones[c])
        if (std::find(facet.begin(), facet.end(), idx) == facet.end()) return idx;
      return -1;
    };
    long s0 = side_of(fan, facet, fan.rays()[apex(owners[0])]);
    long s1 = side_of(fan, facet, fan.rays()[apex(owners[1])]);
    if (!((s0 > 0 && s1 < 0) || (s0 < 0 && s1 > 0))) {
      report.complete = false;
      report.details.push_back("cones " + std::to_string(owners[0]) + " and " +
                               std::to_string(owners[1]) + " lie on the same side of a shared facet");
    }
    adjacency[owners[0]].push_back(owners[1]);
    adjacency[owners[1]].push_back(owners[0]);
  }

  std::vector<bool> reached(cones.size(), false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    for (std::size_t d : adjacency[c]) {
      if (!reached[d]) {
        reached[d] = true;
        stack.push_back(d);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
    report.complete = false;
    report.details.push_back("facet-adjacency graph of maximal cones is disconnected");
  }

  // Covering degree: a generic vector must lie in the interior of exactly one cone.
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<long> dist(-1000003, 1000003);
  IntVector w(n);
  bool generic = false;
  for (int attempt = 0; attempt < 64 && !generic; ++attempt) {
    for (auto& x : w) x = dist(rng);
    generic = true;
    for (const auto& [facet, owners] : facets) {
      if (side_of(fan, facet, w) == 0) {
        generic = false;
        break;
      }
    }
  }
  if (generic) {
    int covering = 0;
    for (const auto& cone : cones) {
      IntMatrix b = rows_of(fan, cone);
      long det = determinant(b);
      if (det == 0) continue;
      bool inside = true;
      for (int k = 0; k < n && inside; ++k) {
        IntMatrix replaced = b;
        replaced[k] = w;
        long num = determinant(replaced);
        // coefficient of ray k in w is num / det
        inside = (num > 0) == (det > 0) && num != 0;
      }
      if (inside) ++covering;
    }
    if (covering != 1) {
      report.complete = false;
      report.details.push_back("a generic vector lies in " + std::to_string(covering) +
                               " maximal cones (expected 1)");
    }
  }
  return report;
}

namespace {

struct Smith {
  IntMatrix d, u, u_inv;
};

// U * A * V = D with D diagonal; U and its inverse are tracked.
Smith smith_normal_form(IntMatrix a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  IntMatrix u(m, IntVector(m, 0)), ui(m, IntVector(m, 0));
  for (std::size_t i = 0; i < m; ++i) u[i][i] = ui[i][i] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
    for (auto& row : ui) std::swap(row[i], row[j]);
  };
  // row_i += c * row_j
  auto add_row = [&](std::size_t i, std::size_t j, long c) {
    for (std::size_t k = 0; k < n; ++k) a[i][k] += c * a[j][k];
    for (std::size_t k = 0; k < m; ++k) u[i][k] += c * u[j][k];
    for (auto& row : ui) row[j] -= c * row[i];
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  auto add_col = [&](std::size_t i, std::size_t j, long c) {
    for (auto& row : a) row[i] += c * row[j];
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      long best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (best == 0 || std::labs(a[i][j]) < best)) {
            best = std::labs(a[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) break;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] != 0) {
          add_row(i, t, -(a[i][t] / a[t][t]));
          if (a[i][t] != 0) clean = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] != 0) {
          add_col(j, t, -(a[t][j] / a[t][t]));
          if (a[t][j] != 0) clean = false;
        }
      }
      if (clean) break;
    }
  }
  return {a, u, ui};
}

}  // namespace

PicData picard_lattice(const Fan& fan) {
  const int n = fan.dim();
  const std::size_t rays = fan.num_rays();
  PicData pic;
  pic.rank = static_cast<int>(rays) - n;
  if (pic.rank < 0) throw DomainError("fewer rays than the dimension");
  pic.ray_pairing.assign(n, IntVector(rays, 0));
  for (std::size_t i = 0; i < rays; ++i)
    for (int j = 0; j < n; ++j) pic.ray_pairing[j][i] = fan.rays()[i][j];

  Smith s = smith_normal_form(fan.rays());
  for (int t = 0; t < n; ++t) {
    if (std::labs(s.d[t][t]) != 1)
      throw DomainError("Picard group has torsion or the rays do not span (invariant factor " +
                        std::to_string(s.d[t][t]) + ")");
  }
  for (std::size_t i = n; i < rays; ++i) pic.quotient.push_back(s.u[i]);
  pic.section_matrix.assign(pic.rank, IntVector(rays, 0));
  for (int j = 0; j < pic.rank; ++j)
    for (std::size_t i = 0; i < rays; ++i) pic.section_matrix[j][i] = s.u_inv[i][n + j];
  return pic;
}

IntVector PicData::degree_class(std::span<const int> d) const {
  IntVector out(rank, 0);
  for (int j = 0; j < rank; ++j)
    for (std::size_t i = 0; i < d.size(); ++i) out[j] += section_matrix[j][i] * d[i];
  return out;
}

std::vector<RayMask> PrimitiveCollections::masks() const {
  std::vector<RayMask> out;
  for (const auto& c : minimal_collections) out.push_back(mask_of(c));
  return out;
}

bool PrimitiveCollections::cone_supported(RayMask s) const {
  for (const auto& c : minimal_collections) {
    RayMask m = mask_of(c);
    if ((m & s) == m) return false;
  }
  return true;
}

PrimitiveCollections primitive_collections(const Fan& fan) {
  const std::size_t rays = fan.num_rays();
  if (rays > 24) throw DomainError("too many rays for exhaustive primitive collection search");
  std::vector<RayMask> found;
  for (RayMask s = 1; s < (RayMask{1} << rays); ++s) {
    if (fan.cone_supported(s)) continue;
    bool minimal = true;
    for (RayMask bits = s; bits && minimal; bits &= bits - 1) {
      RayMask low = bits & (~bits + 1);
      if (!fan.cone_supported(s & ~low)) minimal = false;
    }
    if (minimal) found.push_back(s);
  }
  PrimitiveCollections pc;
  for (RayMask m : found) pc.minimal_collections.push_back(indices_of(m));
  std::sort(pc.minimal_collections.begin(), pc.minimal_collections.end(),
            [](const auto& a, const auto& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  return pc;
}

bool cone_supported(const Fan& fan, std::span<const int> s) {
  for (int i : s)
    if (i < 0 || i >= static_cast<int>(fan.num_rays()))
      throw DomainError("ray index out of range");
  return fan.cone_supported(s);
}

bool degree_admissible(const Fan& fan, std::span<const int> d) {
  if (d.size() != fan.num_rays()) throw DomainError("multidegree length differs from ray count");
  for (int j = 0; j < fan.dim(); ++j) {
    long sum = 0;
    for (std::size_t i = 0; i < d.size(); ++i) sum += static_cast<long>(d[i]) * fan.rays()[i][j];
    if (sum != 0) return false;
  }
  return true;
}

Rational log_anticanonical_degree(const Fan& fan, std::span<const int> m, std::span<const int> d) {
  if (m.size() != fan.num_rays() || d.size() != fan.num_rays())
    throw DomainError("tuple length differs from ray count");
  Rational sum = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (m[i] < 1) throw DomainError("multiplicities must be positive");
    sum += Rational(d[i], m[i]);
  }
  sum.canonicalize();
  return sum;
}

std::vector<RayMask> all_cones(const Fan& fan) {
  std::set<RayMask> faces;
  for (RayMask c : fan.cone_masks()) {
    // every subset of c
    for (RayMask s = c;; s = (s - 1) & c) {
      faces.insert(s);
      if (s == 0) break;
    }
  }
  return {faces.begin(), faces.end()};
}

}  // namespace toricount
