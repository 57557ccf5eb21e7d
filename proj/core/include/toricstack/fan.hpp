#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "toricstack/integer_matrix.hpp"

namespace toricstack {

/// Sorted list of ray indices.
using Cone = std::vector<std::size_t>;
/// Ray indices whose homogeneous coordinate vanishes.
using ZeroPattern = std::vector<std::size_t>;

/// A simplicial fan in Q^d given by explicit lattice points a_rho on its rays
/// and an explicit list of cones (including faces and the zero cone).
struct SimplicialFan {
  std::size_t lattice_rank = 0;
  std::vector<IntegerVector> rays;
  std::vector<Cone> cones;

  std::size_t ray_count() const noexcept { return rays.size(); }
  /// d x n matrix whose columns are the ray vectors.
  IntegerMatrix ray_matrix() const;
  bool contains(std::span<const std::size_t> cone) const;

  bool operator==(const SimplicialFan&) const = default;
};

struct Violation {
  std::string code;
  std::string message;
  std::vector<Cone> cones;
  std::vector<std::size_t> rays;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string code, std::string message, std::vector<Cone> cones = {},
           std::vector<std::size_t> rays = {});
  void append(const ValidationReport& other);
};

Cone normalize_cone(Cone cone);

/// Adds every face of every listed cone (and the zero cone); sorts the list
/// by size, then lexicographically.
SimplicialFan close_under_faces(SimplicialFan fan);

ValidationReport validate_fan(const SimplicialFan& fan);

std::vector<Cone> maximal_cones(const SimplicialFan& fan);

/// Support equals Q^d, decided by purity, facet pairing and facet connectivity.
bool is_complete(const SimplicialFan& fan);

struct RaySpan {
  bool spans = false;
  std::size_t rank = 0;
  /// d x rank; its columns form a basis of the saturation Span(rays) ∩ Z^d.
  IntegerMatrix basis;
  /// rank x d; maps a vector of the saturation to its coordinates in `basis`.
  IntegerMatrix coordinates;
};

RaySpan rays_span(const SimplicialFan& fan);

/// Some maximal cone contains every ray in the pattern.
bool is_admissible_zero_pattern(const SimplicialFan& fan, std::span<const std::size_t> pattern);

/// True iff cone(first) ∩ cone(second) == cone(first ∩ second).
bool cones_meet_in_common_face(const SimplicialFan& fan, const Cone& first, const Cone& second);

}  // namespace toricstack
