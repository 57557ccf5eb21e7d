#pragma once

#include <cstddef>
#include <vector>

#include "toricstack/integer_matrix.hpp"
#include "toricstack/lattice.hpp"
#include "toricstack/stacky.hpp"

namespace toricstack {

/// Element of (Z^{Delta(1)})^* taken modulo the image of M.
struct PicClass {
  IntegerVector representative;
};

/// Pic of the rigidified stack: Z^n modulo the columns (<m_l, a_rho>)_rho.
class PicardPresentation {
 public:
  PicardPresentation() = default;
  explicit PicardPresentation(const SimplicialFan& fan);

  std::size_t ray_count() const noexcept { return relation_matrix_.rows(); }
  /// n x d; column l is the l-th coordinate function evaluated on the rays.
  const IntegerMatrix& relation_matrix() const noexcept { return relation_matrix_; }
  const FgAbelianGroup& group() const noexcept { return group_; }

  /// Class of the dual basis vector e_rho^*.
  PicClass basis_class(std::size_t ray) const;
  PicClass zero() const;

  bool equal(const PicClass& a, const PicClass& b) const;
  bool is_zero(const PicClass& a) const;
  /// a = r * x for some class x.
  bool is_divisible(const PicClass& a, const Integer& r) const;

 private:
  IntegerMatrix relation_matrix_;
  FgAbelianGroup group_;
};

PicClass operator+(const PicClass& a, const PicClass& b);
PicClass operator-(const PicClass& a, const PicClass& b);
PicClass operator*(const Integer& k, const PicClass& a);

/// Requires R = 0 (rigidify first).
PicardPresentation picard_group(const StackyData& rigid);

/// Class of the line bundle attached to gerbe index i (0-based):
/// sum_rho b_{i,rho} e_rho^*.
PicClass gerbe_class(const StackyData& data, std::size_t index);

struct BandedComparison {
  bool same_chain = false;
  /// One entry per gerbe index when the chains agree.
  std::vector<bool> divisible;
  bool isomorphic = false;
};

/// Both inputs must share lattice, rays and cones exactly and have r-lists in
/// divisor-chain form; throws MismatchedUnderlyingData / NotInChainForm.
BandedComparison compare_banded(const StackyData& first, const StackyData& second);

bool is_isomorphic_banded(const StackyData& first, const StackyData& second);

/// True when the underlying (N, fan, a_rho) of the two data agree.
bool same_underlying_data(const StackyData& first, const StackyData& second);

struct CanonicalForm {
  StackyData data;
  /// R' x R transport matrix T with b' = T b (mod s).
  IntegerMatrix certificate;
};

CanonicalForm canonicalize(const StackyData& data);

}  // namespace toricstack
