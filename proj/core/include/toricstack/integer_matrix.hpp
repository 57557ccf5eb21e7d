#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "toricstack/error.hpp"

namespace toricstack {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Zero-row and zero-column matrices are legal and stand for "no relations"
/// or "zero ambient" wherever a matrix is consumed.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix diagonal(std::span<const Integer> entries);
  static IntegerMatrix from_rows(const std::vector<IntegerVector>& rows, std::size_t cols);
  static IntegerMatrix from_columns(const std::vector<IntegerVector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntegerVector row(std::size_t r) const;
  IntegerVector column(std::size_t c) const;

  IntegerMatrix transpose() const;
  IntegerMatrix select_columns(std::span<const std::size_t> indices) const;
  IntegerMatrix select_rows(std::span<const std::size_t> indices) const;
  /// [this | other]; row counts must agree.
  IntegerMatrix hconcat(const IntegerMatrix& other) const;
  /// [this ; other]; column counts must agree.
  IntegerMatrix vconcat(const IntegerMatrix& other) const;

  IntegerVector operator*(std::span<const Integer> v) const;
  IntegerMatrix operator*(const IntegerMatrix& other) const;

  bool operator==(const IntegerMatrix& other) const = default;

  std::vector<std::vector<Integer>> to_rows() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

/// gcd of all entries (0 for the zero vector).
Integer content(std::span<const Integer> v);
IntegerVector to_integer_vector(std::initializer_list<long> values);

}  // namespace toricstack
