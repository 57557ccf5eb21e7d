#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "toricstack/integer_matrix.hpp"

namespace toricstack {

using Exponent = std::vector<unsigned long>;

/// Sparse polynomial with exact rational coefficients in a fixed number of
/// variables. Terms are kept canonical: no zero coefficients, one entry per
/// exponent vector.
class SparsePolynomial {
 public:
  explicit SparsePolynomial(std::size_t variables = 0) : variables_(variables) {}

  static SparsePolynomial monomial(std::size_t variables, Exponent exponent,
                                   const Rational& coefficient = 1);
  static SparsePolynomial constant(std::size_t variables, const Rational& value);

  void add_term(const Rational& coefficient, Exponent exponent);

  std::size_t variables() const noexcept { return variables_; }
  const std::map<Exponent, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// Variables with a positive exponent in some term.
  std::vector<std::size_t> support() const;

  Rational evaluate(std::span<const Rational> point) const;
  SparsePolynomial scaled(const Rational& factor) const;

  SparsePolynomial operator+(const SparsePolynomial& other) const;
  SparsePolynomial operator*(const SparsePolynomial& other) const;
  bool operator==(const SparsePolynomial& other) const = default;

  std::string to_string() const;

 private:
  std::size_t variables_ = 0;
  std::map<Exponent, Rational> terms_;
};

Rational power(const Rational& base, const Integer& exponent);

}  // namespace toricstack
