#include "toricstack/gerbe.hpp"

#include <algorithm>
#include <set>

#include "toricstack/error.hpp"

namespace toricstack {

PicardPresentation::PicardPresentation(const SimplicialFan& fan)
    : relation_matrix_(fan.ray_matrix().transpose()),
      group_(cokernel(fan.rays.size(), relation_matrix_)) {}

PicClass PicardPresentation::basis_class(std::size_t ray) const {
  if (ray >= ray_count()) throw Error(ErrorCode::IndexOutOfRange, "ray index out of range");
  PicClass c{IntegerVector(ray_count())};
  c.representative[ray] = 1;
  return c;
}

PicClass PicardPresentation::zero() const { return PicClass{IntegerVector(ray_count())}; }

bool PicardPresentation::equal(const PicClass& a, const PicClass& b) const {
  return is_zero(a - b);
}

bool PicardPresentation::is_zero(const PicClass& a) const {
  if (a.representative.size() != ray_count()) {
    throw Error(ErrorCode::DimensionMismatch, "class has the wrong number of coordinates");
  }
  return in_column_span(a.representative, relation_matrix_);
}

bool PicardPresentation::is_divisible(const PicClass& a, const Integer& r) const {
  return divisible_in_quotient(a.representative, r, relation_matrix_);
}

PicClass operator+(const PicClass& a, const PicClass& b) {
  if (a.representative.size() != b.representative.size()) {
    throw Error(ErrorCode::DimensionMismatch, "classes live in different groups");
  }
  PicClass c = a;
  for (std::size_t i = 0; i < c.representative.size(); ++i) c.representative[i] += b.representative[i];
  return c;
}

PicClass operator-(const PicClass& a, const PicClass& b) { return a + Integer(-1) * b; }

PicClass operator*(const Integer& k, const PicClass& a) {
  PicClass c = a;
  for (auto& x : c.representative) x *= k;
  return c;
}

PicardPresentation picard_group(const StackyData& rigid) {
  if (rigid.gerbe_count() != 0) {
    throw Error(ErrorCode::InvalidArgument, "picard_group expects rigidified data (R = 0)");
  }
  return PicardPresentation(rigid.fan);
}

PicClass gerbe_class(const StackyData& data, std::size_t index) {
  if (index >= data.gerbe_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "gerbe index " + std::to_string(index) +
                                                " out of range for R = " +
                                                std::to_string(data.gerbe_count()));
  }
  return PicClass{data.b.row(index)};
}

bool same_underlying_data(const StackyData& first, const StackyData& second) {
  if (first.fan.lattice_rank != second.fan.lattice_rank) return false;
  if (first.fan.rays != second.fan.rays) return false;
  const std::set<Cone> a(first.fan.cones.begin(), first.fan.cones.end());
  const std::set<Cone> b(second.fan.cones.begin(), second.fan.cones.end());
  return a == b;
}

BandedComparison compare_banded(const StackyData& first, const StackyData& second) {
  if (!same_underlying_data(first, second)) {
    throw Error(ErrorCode::MismatchedUnderlyingData,
                "banded comparison needs identical lattice, fan and ray points");
  }
  if (!is_divisor_chain(first.r) || !is_divisor_chain(second.r)) {
    throw Error(ErrorCode::NotInChainForm, "r must satisfy r_1 | r_2 | ... | r_R; canonicalize first");
  }
  BandedComparison out;
  out.same_chain = first.r == second.r;
  if (!out.same_chain) return out;

  const PicardPresentation pic(first.fan);
  out.isomorphic = true;
  for (std::size_t i = 0; i < first.gerbe_count(); ++i) {
    const bool ok = pic.is_divisible(gerbe_class(first, i) - gerbe_class(second, i), first.r[i]);
    out.divisible.push_back(ok);
    out.isomorphic = out.isomorphic && ok;
  }
  return out;
}

bool is_isomorphic_banded(const StackyData& first, const StackyData& second) {
  return compare_banded(first, second).isomorphic;
}

CanonicalForm canonicalize(const StackyData& data) {
  require_valid(data);
  const std::size_t R = data.gerbe_count();
  const bool already = is_divisor_chain(data.r) &&
                       std::all_of(data.r.begin(), data.r.end(), [](const Integer& x) { return x >= 2; });
  if (already) return {data, IntegerMatrix::identity(R)};

  // diag(r) = U D V, so x -> U^{-1} x carries (+)Z/r_i onto (+)Z/d_j;
  // the rows with d_j = 1 land in the trivial group and are dropped.
  const auto snf = smith_normal_form(IntegerMatrix::diagonal(data.r));
  const auto diag = snf.diagonal();
  std::vector<std::size_t> kept;
  std::vector<Integer> chain;
  for (std::size_t j = 0; j < diag.size(); ++j) {
    if (diag[j] > 1) {
      kept.push_back(j);
      chain.push_back(diag[j]);
    }
  }
  IntegerMatrix transport = snf.U_inv.select_rows(kept);
  IntegerMatrix b = transport * data.b;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    for (std::size_t c = 0; c < transport.cols(); ++c) {
      Integer& t = transport(j, c);
      t %= chain[j];
      if (t < 0) t += chain[j];
    }
    for (std::size_t k = 0; k < b.cols(); ++k) {
      Integer& x = b(j, k);
      x %= chain[j];
      if (x < 0) x += chain[j];
    }
  }
  return {StackyData{data.fan, std::move(chain), std::move(b)}, std::move(transport)};
}

}  // namespace toricstack
