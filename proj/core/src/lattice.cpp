#include "toricstack/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "toricstack/error.hpp"

namespace toricstack {

namespace {

// Working state for the elimination. Invariant: A = U * D * V and
// D = U_inv * A * V_inv throughout.
struct SnfWork {
  IntegerMatrix D, U, V, U_inv, V_inv;

  // row_i(D) += q * row_j(D)
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) += q * D(j, c);
    for (std::size_t c = 0; c < U_inv.cols(); ++c) U_inv(i, c) += q * U_inv(j, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, j) -= q * U(r, i);
  }
  // col_i(D) += q * col_j(D)
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < D.rows(); ++r) D(r, i) += q * D(r, j);
    for (std::size_t r = 0; r < V_inv.rows(); ++r) V_inv(r, i) += q * V_inv(r, j);
    for (std::size_t c = 0; c < V.cols(); ++c) V(j, c) -= q * V(i, c);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D(i, c), D(j, c));
    for (std::size_t c = 0; c < U_inv.cols(); ++c) std::swap(U_inv(i, c), U_inv(j, c));
    for (std::size_t r = 0; r < U.rows(); ++r) std::swap(U(r, i), U(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D(r, i), D(r, j));
    for (std::size_t r = 0; r < V_inv.rows(); ++r) std::swap(V_inv(r, i), V_inv(r, j));
    for (std::size_t c = 0; c < V.cols(); ++c) std::swap(V(i, c), V(j, c));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) = -D(i, c);
    for (std::size_t c = 0; c < U_inv.cols(); ++c) U_inv(i, c) = -U_inv(i, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
  }

  bool find_min_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Integer best;
    for (std::size_t r = t; r < D.rows(); ++r)
      for (std::size_t c = t; c < D.cols(); ++c) {
        const Integer& x = D(r, c);
        if (x == 0) continue;
        if (!found || abs(x) < best) {
          best = abs(x);
          pr = r;
          pc = c;
          found = true;
          if (best == 1) return true;
        }
      }
    return found;
  }
};

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer nearest_quotient(const Integer& a, const Integer& b) {
  // round(a / b); the remainder lands in [-|b|/2, |b|/2]
  if (b < 0) return nearest_quotient(-a, -b);
  return floor_div(2 * a + b, 2 * b);
}

}  // namespace

std::size_t SnfDecomposition::rank() const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++k;
  return k;
}

std::vector<Integer> SnfDecomposition::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

SnfDecomposition smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfWork w{a, IntegerMatrix::identity(m), IntegerMatrix::identity(n), IntegerMatrix::identity(m),
            IntegerMatrix::identity(n)};

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pr = t, pc = t;
    if (!w.find_min_pivot(t, pr, pc)) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (w.D(r, t) == 0) continue;
        w.add_row(r, t, -nearest_quotient(w.D(r, t), w.D(t, t)));
        if (w.D(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (w.D(t, c) == 0) continue;
        w.add_col(c, t, -nearest_quotient(w.D(t, c), w.D(t, t)));
        if (w.D(t, c) != 0) dirty = true;
      }
      if (dirty) {
        // a smaller remainder survived in row/column t: bring it to the pivot
        std::size_t br = t, bc = t;
        Integer best = abs(w.D(t, t));
        for (std::size_t r = t + 1; r < m; ++r)
          if (w.D(r, t) != 0 && abs(w.D(r, t)) < best) best = abs(w.D(r, t)), br = r, bc = t;
        for (std::size_t c = t + 1; c < n; ++c)
          if (w.D(t, c) != 0 && abs(w.D(t, c)) < best) best = abs(w.D(t, c)), br = t, bc = c;
        w.swap_rows(t, br);
        w.swap_cols(t, bc);
        continue;
      }
      // row and column cleared; enforce divisibility of the remaining block
      bool fixed = false;
      for (std::size_t r = t + 1; r < m && !fixed; ++r)
        for (std::size_t c = t + 1; c < n && !fixed; ++c) {
          if (w.D(r, c) % w.D(t, t) != 0) {
            w.add_row(t, r, Integer(1));
            fixed = true;
          }
        }
      if (!fixed) break;
    }
    if (w.D(t, t) < 0) w.negate_row(t);
  }
  return SnfDecomposition{std::move(w.U), std::move(w.D), std::move(w.V), std::move(w.U_inv),
                          std::move(w.V_inv)};
}

std::size_t matrix_rank(const IntegerMatrix& a) { return smith_normal_form(a).rank(); }

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Integer> invariant_factors,
                               std::optional<IntegerMatrix> presentation)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)),
      presentation_(std::move(presentation)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw Error(ErrorCode::InvalidArgument, "invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0) {
      throw Error(ErrorCode::InvalidArgument, "invariant factors must form a divisor chain");
    }
  }
}

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& order) {
  if (order == 0) return FgAbelianGroup(1, {});
  if (abs(order) == 1) return trivial();
  return FgAbelianGroup(0, {Integer(abs(order))});
}

Integer FgAbelianGroup::order() const {
  if (free_rank_ > 0) return 0;
  Integer o = 1;
  for (const auto& f : factors_) o *= f;
  return o;
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z^" << free_rank_;
    first = false;
  }
  for (const auto& f : factors_) {
    if (!first) os << " + ";
    os << "Z/" << f;
    first = false;
  }
  return os.str();
}

FgAbelianGroup cokernel(std::size_t ambient, const IntegerMatrix& relations) {
  if (relations.cols() > 0 && relations.rows() != ambient) {
    throw Error(ErrorCode::DimensionMismatch, "relation matrix does not match ambient rank");
  }
  if (relations.cols() == 0) return FgAbelianGroup(ambient, {}, IntegerMatrix(ambient, 0));
  const auto snf = smith_normal_form(relations);
  std::vector<Integer> factors;
  std::size_t rank = 0;
  for (const auto& d : snf.diagonal()) {
    if (d == 0) continue;
    ++rank;
    if (d > 1) factors.push_back(d);
  }
  return FgAbelianGroup(ambient - rank, std::move(factors), relations);
}

FgAbelianGroup cokernel(const IntegerMatrix& relations) {
  return cokernel(relations.rows(), relations);
}

std::optional<LinearSolution> solve_linear(const IntegerMatrix& a, std::span<const Integer> b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "solve_linear: rhs size");
  const auto snf = smith_normal_form(a);
  const auto c = snf.U_inv * b;
  const std::size_t k = snf.rank();
  IntegerVector y(a.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < k) {
      if (c[i] % snf.D(i, i) != 0) return std::nullopt;
      y[i] = c[i] / snf.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  LinearSolution sol;
  sol.particular = snf.V_inv * y;
  for (std::size_t j = k; j < a.cols(); ++j) sol.kernel_basis.push_back(snf.V_inv.column(j));
  return sol;
}

std::vector<IntegerVector> integer_kernel(const IntegerMatrix& a) {
  const auto snf = smith_normal_form(a);
  std::vector<IntegerVector> out;
  for (std::size_t j = snf.rank(); j < a.cols(); ++j) out.push_back(snf.V_inv.column(j));
  return out;
}

bool in_column_span(std::span<const Integer> v, const IntegerMatrix& relations) {
  if (relations.cols() == 0) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
  }
  return solve_linear(relations, v).has_value();
}

bool divisible_in_quotient(std::span<const Integer> v, const Integer& r,
                           const IntegerMatrix& relations) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "divisor must be >= 1");
  const std::size_t n = v.size();
  if (relations.cols() > 0 && relations.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "relations must have one row per coordinate");
  }
  IntegerMatrix gens(n, n);
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = r;
  if (relations.cols() > 0) gens = gens.hconcat(relations);
  return in_column_span(v, gens);
}

std::vector<Integer> invariant_factor_chain(std::span<const Integer> r) {
  for (const auto& x : r) {
    if (x < 1) throw Error(ErrorCode::InvalidArgument, "cyclic orders must be positive non zero integers");
  }
  std::vector<Integer> out;
  for (const auto& d : smith_normal_form(IntegerMatrix::diagonal(r)).diagonal()) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

bool is_divisor_chain(std::span<const Integer> r) {
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i - 1] == 0 || r[i] % r[i - 1] != 0) return false;
  }
  return true;
}

}  // namespace toricstack
