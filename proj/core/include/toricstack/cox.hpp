#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "toricstack/fan.hpp"
#include "toricstack/gerbe.hpp"
#include "toricstack/polynomial.hpp"
#include "toricstack/stacky.hpp"

namespace toricstack {

/// A candidate morphism from a stack without gerbe part (the source) to a
/// toric stack (the target), given by one homogeneous polynomial in the
/// source's homogeneous coordinates per target ray, plus one source Picard
/// class per target gerbe index.
struct MorphismData {
  StackyData source;
  StackyData target;
  std::vector<SparsePolynomial> polys;
  std::vector<PicClass> chi;
};

/// Throws SourceHasGerbe, SourceNotComplete, TargetRaysNotSpanning,
/// NotHomogeneous or DimensionMismatch.
void require_morphism_preconditions(const MorphismData& md);

/// Pic-degree of a nonzero homogeneous polynomial in the source's Cox ring.
PicClass degree(const SparsePolynomial& p, const StackyData& source);

struct ConditionAReport {
  bool holds = false;
  /// degree(P_rho); for zero polynomials, a degree making the relations hold
  /// when one exists.
  std::vector<std::optional<PicClass>> ray_degrees;
  /// Per-row outcome when no polynomial is zero (d lattice rows, then R gerbe rows).
  std::vector<bool> lattice_rows;
  std::vector<bool> gerbe_rows;
};

ConditionAReport evaluate_condition_a(const MorphismData& md);
bool check_condition_a(const MorphismData& md);

enum class BVerdict { Proven, Refuted, Unknown };

struct ConditionBVerdict {
  BVerdict verdict = BVerdict::Unknown;
  /// Refuted: zero pattern of the offending source point.
  ZeroPattern source_pattern;
  /// Refuted: zero pattern of its image, not admissible on the target.
  ZeroPattern image_pattern;
  /// Refuted by sampling: the offending source point.
  std::optional<std::vector<Rational>> point;
  /// Refuted by the exact monomial test: index of the maximal source cone.
  std::optional<std::size_t> source_cone;
};

struct SamplingOptions {
  std::size_t budget = 64;  // random points per admissible source pattern
  std::uint64_t seed = 0;
  std::vector<Rational> sample_values = {Rational(1), Rational(-1), Rational(2), Rational(-2),
                                         Rational(3), Rational(-3), Rational(1, 2), Rational(-1, 2)};
};

ConditionBVerdict check_condition_b(const MorphismData& md, const SamplingOptions& options = {});

/// Zero pattern of (P_rho(z)) for a source point with zero pattern `source`,
/// valid when every P_rho is a monomial or zero.
ZeroPattern monomial_image_pattern(const std::vector<SparsePolynomial>& polys,
                                   const ZeroPattern& source);

enum class IsoVerdict { Yes, No, Unknown };

struct TwoIsoResult {
  IsoVerdict verdict = IsoVerdict::Unknown;
  /// lambda_rho with P'_rho = lambda_rho P_rho; nullopt where both are zero
  /// (the ratio is unconstrained).
  std::vector<std::optional<Rational>> ratios;
  std::string reason;
};

TwoIsoResult check_two_isomorphic(const MorphismData& first, const MorphismData& second);

/// The ray sets sigma(1) of the maximal cones.
std::vector<ZeroPattern> irrelevant_patterns(const SimplicialFan& fan);

}  // namespace toricstack
