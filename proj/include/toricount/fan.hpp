#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "toricount/rational.hpp"

namespace toricount {

using IntVector = std::vector<long>;
using IntMatrix = std::vector<IntVector>;

/// Exponent tuple indexed by the rays of a fan (or any fixed variable list).
using Multidegree = std::vector<int>;

/// Bitmask over ray indices.
using RayMask = std::uint64_t;

RayMask mask_of(std::span<const int> indices);
std::vector<int> indices_of(RayMask mask);

/// A fan given by primitive ray generators and maximal cones.
///
/// Construction checks the structural invariants only (shape, primitivity,
/// distinctness, cone sizes); smoothness and completeness are properties
/// reported by `validate`. Ray order is the canonical variable order used by
/// every series, multidegree and multiplicity tuple downstream.
class Fan {
 public:
  Fan(int dim, IntMatrix rays, std::vector<std::vector<int>> max_cones, std::string label = {});

  int dim() const { return dim_; }
  std::size_t num_rays() const { return rays_.size(); }
  const IntMatrix& rays() const { return rays_; }
  const std::vector<std::vector<int>>& max_cones() const { return max_cones_; }
  const std::string& label() const { return label_; }
  std::span<const RayMask> cone_masks() const { return cone_masks_; }

  /// True iff the ray set is contained in some maximal cone.
  bool cone_supported(RayMask s) const;
  bool cone_supported(std::span<const int> s) const { return cone_supported(mask_of(s)); }

  bool operator==(const Fan& other) const;

 private:
  int dim_;
  IntMatrix rays_;
  std::vector<std::vector<int>> max_cones_;
  std::string label_;
  std::vector<RayMask> cone_masks_;
};

Fan parse_fan(const nlohmann::json& document);
Fan parse_fan_text(std::string_view text);
nlohmann::json fan_to_json(const Fan& fan);

/// `p1`, `p2`, `p1xp1`, `hirzebruch:a`, `dp6`.
Fan builtin_fan(std::string_view name);
std::vector<std::string> builtin_fan_names();

/// A builtin name, or else a path to a fan file.
Fan resolve_fan(std::string_view name_or_path);

struct ValidationReport {
  bool smooth = true;
  bool complete = true;
  std::vector<std::string> details;

  bool ok() const { return smooth && complete; }
};

/// Smoothness is unimodularity of each maximal cone. Completeness is
/// certified by: every ray used, every facet of a maximal cone shared by
/// exactly two maximal cones lying on opposite sides of it, a connected
/// facet-adjacency graph, and a generic vector lying in exactly one cone.
ValidationReport validate(const Fan& fan);

struct PicData {
  int rank = 0;
  IntMatrix ray_pairing;     // dim x |rays|, entry (j, i) = <e_j, rho_i>
  IntMatrix quotient;        // rank x |rays|, the degree map Z^rays -> Pic = Z^rank
  IntMatrix section_matrix;  // rank x |rays|, rows map to the standard basis under `quotient`

  /// Coordinates in Hom(Pic, Z) of the functional D_i -> d_i.
  IntVector degree_class(std::span<const int> d) const;
};

/// Throws DomainError if the cokernel of the pairing has torsion or the rays
/// do not span.
PicData picard_lattice(const Fan& fan);

struct PrimitiveCollections {
  std::vector<std::vector<int>> minimal_collections;

  std::vector<RayMask> masks() const;
  /// S is cone-supported iff it contains no primitive collection.
  bool cone_supported(RayMask s) const;
};

PrimitiveCollections primitive_collections(const Fan& fan);

bool cone_supported(const Fan& fan, std::span<const int> s);

/// True iff sum_i d_i rho_i = 0.
bool degree_admissible(const Fan& fan, std::span<const int> d);

/// sum_i d_i / m_i.
Rational log_anticanonical_degree(const Fan& fan, std::span<const int> m, std::span<const int> d);

/// Every cone of the fan (faces of maximal cones, the zero cone included), each once.
std::vector<RayMask> all_cones(const Fan& fan);

long determinant(IntMatrix m);

}  // namespace toricount
