#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toricstack/integer_matrix.hpp"

namespace toricstack {

/// A = U * D * V with U, V unimodular and D diagonal in divisor-chain form.
/// The inverses of U and V are carried along since most callers need them.
struct SnfDecomposition {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;
  IntegerMatrix U_inv;
  IntegerMatrix V_inv;

  /// Number of nonzero diagonal entries.
  std::size_t rank() const;
  std::vector<Integer> diagonal() const;
};

/// Finitely generated abelian group Z^free_rank + Z/f_1 + ... + Z/f_k with
/// f_i >= 2 and f_i | f_{i+1}. Equality is isomorphism.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::size_t free_rank, std::vector<Integer> invariant_factors,
                 std::optional<IntegerMatrix> presentation = std::nullopt);

  static FgAbelianGroup trivial() { return {}; }
  static FgAbelianGroup cyclic(const Integer& order);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  const std::optional<IntegerMatrix>& presentation() const noexcept { return presentation_; }

  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && factors_.empty(); }
  /// Order of a finite group; 0 for infinite groups.
  Integer order() const;
  /// The torsion subgroup, as an abstract group.
  FgAbelianGroup torsion() const { return FgAbelianGroup(0, factors_); }

  bool operator==(const FgAbelianGroup& other) const {
    return free_rank_ == other.free_rank_ && factors_ == other.factors_;
  }

  /// e.g. "Z^1 + Z/2 + Z/6", "0" for the trivial group.
  std::string to_string() const;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> factors_;
  std::optional<IntegerMatrix> presentation_;
};

SnfDecomposition smith_normal_form(const IntegerMatrix& a);

std::size_t matrix_rank(const IntegerMatrix& a);

/// Z^n / (column span of relations), n = relations.rows().
FgAbelianGroup cokernel(const IntegerMatrix& relations);

/// Same as cokernel(), for an ambient Z^n given explicitly (handy when the
/// relation matrix has no columns and hence no reliable shape).
FgAbelianGroup cokernel(std::size_t ambient, const IntegerMatrix& relations);

struct LinearSolution {
  IntegerVector particular;
  /// Basis of the integer kernel of A (columns listed as vectors).
  std::vector<IntegerVector> kernel_basis;
};

/// Integer solutions of A x = b; nullopt when none exists.
std::optional<LinearSolution> solve_linear(const IntegerMatrix& a, std::span<const Integer> b);

/// Basis of the integer kernel {x : A x = 0}.
std::vector<IntegerVector> integer_kernel(const IntegerMatrix& a);

/// True iff v lies in r*Z^n + span(relations columns).
bool divisible_in_quotient(std::span<const Integer> v, const Integer& r,
                           const IntegerMatrix& relations);

/// True iff v lies in the column span of relations.
bool in_column_span(std::span<const Integer> v, const IntegerMatrix& relations);

/// Invariant factors of Z/r_1 + ... + Z/r_R, with 1s dropped.
std::vector<Integer> invariant_factor_chain(std::span<const Integer> r);

/// r_1 | r_2 | ... | r_R.
bool is_divisor_chain(std::span<const Integer> r);

}  // namespace toricstack
