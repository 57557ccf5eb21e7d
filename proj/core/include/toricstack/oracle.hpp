#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "toricstack/integer_matrix.hpp"
#include "toricstack/lattice.hpp"
#include "toricstack/stacky.hpp"

/// Slow, independent cross-checks. Nothing in here calls the Smith normal
/// form or any other main-path routine; only the matrix and integer types
/// are shared.
namespace toricstack::oracle {

inline constexpr std::size_t kEnumerationBound = 10000;
inline constexpr std::size_t kBandEnumerationBound = 100000;

Integer cofactor_determinant(const IntegerMatrix& a);

/// Re-multiplies U*D*V, checks unimodularity by cofactor expansion and the
/// divisor chain on D.
bool verify_snf(const IntegerMatrix& a, const SnfDecomposition& dec);

/// Explicit finite abelian group Z^n / L with canonical coset representatives.
class FiniteGroupTable {
 public:
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<IntegerVector>& elements() const noexcept { return elements_; }
  std::size_t identity() const noexcept { return 0; }
  std::size_t compose(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  std::size_t element_order(std::size_t a) const;
  /// Index of the class of an arbitrary vector of Z^n.
  std::size_t index_of(std::span<const Integer> v) const;
  /// element order -> number of elements of that order
  std::map<Integer, std::size_t> order_census() const;
  /// Invariant factors reconstructed from the census.
  std::vector<Integer> invariant_factors() const;

 private:
  friend FiniteGroupTable quotient_enumerate(const IntegerMatrix&, std::size_t);
  IntegerVector reduce(IntegerVector v) const;

  std::size_t ambient_ = 0;
  std::vector<IntegerVector> hermite_;  // lower-triangular basis columns
  std::vector<IntegerVector> elements_;
  std::map<IntegerVector, std::size_t> index_;
};

/// Enumerates Z^n / span(columns) by breadth-first closure over the unit
/// vectors. Throws Error(TooLarge) for infinite quotients or order > bound.
FiniteGroupTable quotient_enumerate(const IntegerMatrix& relations,
                                    std::size_t bound = kEnumerationBound);

/// Is the class of v trivial in Z^n / (r Z^n + span(relations))?
bool divisibility(std::span<const Integer> v, const Integer& r, const IntegerMatrix& relations,
                  std::size_t bound = kEnumerationBound);

/// Stabilizer order: |det a_sigma| * prod r_i for full-dimensional cones,
/// explicit enumeration otherwise.
Integer stabilizer_order(const StackyData& data, std::span<const std::size_t> cone,
                         std::size_t bound = kEnumerationBound);

/// Invariant factors from kill counts #{x : k x = 0}, for a finite abelian
/// group of the given order.
std::vector<Integer> invariant_factors_from_kill_counts(
    const Integer& order, const std::function<Integer(const Integer&)>& kill_count);

/// Invariant factors of Z/r_1 + ... + Z/r_R by per-factor element census.
std::vector<Integer> cyclic_product_invariant_factors(std::span<const Integer> r);

/// Does x -> T x define an isomorphism (+)Z/r_i -> (+)Z/s_j? Checked on every element.
bool is_band_isomorphism(std::span<const Integer> r, std::span<const Integer> s,
                         const IntegerMatrix& transport,
                         std::size_t bound = kBandEnumerationBound);

}  // namespace toricstack::oracle
