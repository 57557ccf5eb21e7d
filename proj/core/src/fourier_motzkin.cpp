#include "toricstack/fourier_motzkin.hpp"

#include <algorithm>
#include <set>

#include "toricstack/error.hpp"

namespace toricstack {

void LinearSystem::add_equality(std::vector<Rational> coefficients, Rational rhs) {
  if (coefficients.size() != variables) throw Error(ErrorCode::DimensionMismatch, "constraint width");
  equalities.push_back({std::move(coefficients), std::move(rhs)});
}

void LinearSystem::add_inequality(std::vector<Rational> coefficients, Rational rhs) {
  if (coefficients.size() != variables) throw Error(ErrorCode::DimensionMismatch, "constraint width");
  inequalities.push_back({std::move(coefficients), std::move(rhs)});
}

void LinearSystem::add_nonnegativity() {
  for (std::size_t j = 0; j < variables; ++j) {
    std::vector<Rational> e(variables);
    e[j] = 1;
    add_inequality(std::move(e), 0);
  }
}

namespace {

using Row = std::vector<Rational>;  // coefficients followed by rhs

// Scale so the first nonzero coefficient has absolute value 1 (positive
// scaling only; the direction of the inequality must not flip).
void normalize(Row& row) {
  for (std::size_t j = 0; j + 1 < row.size(); ++j) {
    if (row[j] != 0) {
      Rational s = abs(row[j]);
      for (auto& x : row) x /= s;
      return;
    }
  }
}

bool is_constant(const Row& row) {
  return std::all_of(row.begin(), row.end() - 1, [](const Rational& x) { return x == 0; });
}

}  // namespace

bool is_feasible(const LinearSystem& system) {
  const std::size_t n = system.variables;

  // Reduced row echelon form of the equalities.
  std::vector<Row> eq;
  for (const auto& c : system.equalities) {
    Row r = c.coefficients;
    r.push_back(c.rhs);
    eq.push_back(std::move(r));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < eq.size(); ++col) {
    std::size_t p = rank;
    while (p < eq.size() && eq[p][col] == 0) ++p;
    if (p == eq.size()) continue;
    std::swap(eq[rank], eq[p]);
    Rational inv = 1 / eq[rank][col];
    for (auto& x : eq[rank]) x *= inv;
    for (std::size_t i = 0; i < eq.size(); ++i) {
      if (i == rank || eq[i][col] == 0) continue;
      Rational f = eq[i][col];
      for (std::size_t j = 0; j <= n; ++j) eq[i][j] -= f * eq[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < eq.size(); ++i) {
    if (eq[i][n] != 0) return false;
  }

  // Substitute x_p = rhs_p - sum_{free j} c_pj x_j into every inequality.
  std::set<Row> ineq;
  for (const auto& c : system.inequalities) {
    Row r = c.coefficients;
    r.push_back(c.rhs);
    for (std::size_t k = 0; k < rank; ++k) {
      const std::size_t p = pivot_col[k];
      if (r[p] == 0) continue;
      Rational f = r[p];
      for (std::size_t j = 0; j <= n; ++j) r[j] -= f * eq[k][j];
    }
    if (is_constant(r)) {
      if (r[n] > 0) return false;
      continue;
    }
    normalize(r);
    ineq.insert(std::move(r));
  }

  std::vector<bool> eliminated(n, false);
  for (std::size_t k = 0; k < rank; ++k) eliminated[pivot_col[k]] = true;

  for (;;) {
    // Pick the variable with the smallest pos*neg product.
    std::size_t best = n;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (eliminated[j]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : ineq) {
        if (r[j] > 0) ++pos;
        else if (r[j] < 0) ++neg;
      }
      if (pos + neg == 0) {
        eliminated[j] = true;
        continue;
      }
      const std::size_t cost = pos * neg;
      if (best == n || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    if (best == n) break;
    eliminated[best] = true;

    std::vector<const Row*> pos, neg;
    std::set<Row> next;
    for (const auto& r : ineq) {
      if (r[best] > 0) pos.push_back(&r);
      else if (r[best] < 0) neg.push_back(&r);
      else next.insert(r);
    }
    // One-sided variables can always be satisfied: their rows drop out.
    for (const Row* p : pos) {
      for (const Row* q : neg) {
        Row combined(n + 1);
        const Rational fp = -(*q)[best];
        const Rational fq = (*p)[best];
        for (std::size_t j = 0; j <= n; ++j) combined[j] = fp * (*p)[j] + fq * (*q)[j];
        combined[best] = 0;
        if (is_constant(combined)) {
          if (combined[n] > 0) return false;
          continue;
        }
        normalize(combined);
        next.insert(std::move(combined));
      }
    }
    ineq = std::move(next);
  }
  return true;
}

}  // namespace toricstack
