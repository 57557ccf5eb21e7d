#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "toricstack/fan.hpp"
#include "toricstack/integer_matrix.hpp"
#include "toricstack/lattice.hpp"

namespace toricstack {

/// Combinatorial presentation of a toric Deligne-Mumford stack: a simplicial
/// fan with chosen lattice points a_rho on its rays, cyclic orders
/// r_1..r_R and an R x n integer matrix b.
struct StackyData {
  SimplicialFan fan;
  std::vector<Integer> r;
  IntegerMatrix b;

  std::size_t lattice_rank() const noexcept { return fan.lattice_rank; }
  std::size_t ray_count() const noexcept { return fan.rays.size(); }
  std::size_t gerbe_count() const noexcept { return r.size(); }

  bool operator==(const StackyData&) const = default;
};

/// Data with no gerbe part (R = 0) over the given fan.
StackyData make_rigid(SimplicialFan fan);

ValidationReport validate_data(const StackyData& data);

/// Throws Error(InvalidData) carrying the first violation.
void require_valid(const StackyData& data);

struct PresentationMatrices {
  IntegerMatrix B;  // (d+R) x n
  IntegerMatrix Q;  // (d+R) x R
};

PresentationMatrices build_matrices(const StackyData& data);

/// The (d+R) x (n+R) exponent matrix [B Q] of psi.
IntegerMatrix psi_exponents(const StackyData& data);

struct QuotientGroupDesc {
  std::size_t torus_rank = 0;
  FgAbelianGroup finite_part;
  /// Class of the k-th standard basis vector of Z^{n+R} in
  /// coker([BQ]^T) ≅ (+)Z/f_j (+) Z^torus_rank, written in those coordinates
  /// (torsion coordinates reduced into [0, f_j)).
  std::vector<IntegerVector> character_classes;
};

QuotientGroupDesc quotient_group(const StackyData& data);

struct LiftedRay {
  IntegerVector lattice;
  std::vector<Integer> torsion;  // b_{i,rho} mod r_i, in [0, r_i)
};

struct StackyFan {
  FgAbelianGroup extended_group;  // N (+) Z/r_1 (+) ... (+) Z/r_R
  SimplicialFan fan;
  std::vector<LiftedRay> lifted_rays;
};

/// Requires spanning rays; throws Error(NonSpanningRays) otherwise.
StackyFan stacky_fan(const StackyData& data);

/// (+)_i Z/r_i in invariant-factor form.
FgAbelianGroup generic_stabilizer(const StackyData& data);

/// Isotropy group of a point whose coordinates vanish exactly on cone(1).
/// Throws Error(ConeNotInFan) when the cone is not listed.
FgAbelianGroup point_stabilizer(const StackyData& data, std::span<const std::size_t> cone);

StackyData rigidify(const StackyData& data);

struct NonSpanningSplit {
  StackyData data;            // re-expressed over the saturation N'
  std::size_t torus_rank = 0; // d - rank N'
  IntegerMatrix basis;        // d x rank N'
};

NonSpanningSplit split_nonspanning(const StackyData& data);

struct RayDecomposition {
  IntegerVector primitive;
  Integer multiplicity;
};

/// a_rho = multiplicity * primitive generator of rho ∩ N.
std::vector<RayDecomposition> canonical_ray_decomposition(const StackyData& data);

struct DmTorus {
  std::size_t dimension = 0;
  FgAbelianGroup gerbe_part;
};

DmTorus dm_torus(const StackyData& data);

}  // namespace toricstack
