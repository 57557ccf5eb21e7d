#pragma once

#include <cstddef>
#include <vector>

#include "toricstack/integer_matrix.hpp"

namespace toricstack {

/// A linear constraint  coefficients . x  (== or >=)  rhs  over Q^n.
struct LinearConstraint {
  std::vector<Rational> coefficients;
  Rational rhs;
};

/// Conjunction of equalities and inequalities (>=) in `variables` unknowns.
struct LinearSystem {
  std::size_t variables = 0;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;

  void add_equality(std::vector<Rational> coefficients, Rational rhs);
  void add_inequality(std::vector<Rational> coefficients, Rational rhs);
  void add_nonnegativity();
};

/// Exact rational feasibility by Gaussian elimination of the equalities
/// followed by Fourier-Motzkin elimination of the remaining unknowns.
bool is_feasible(const LinearSystem& system);

}  // namespace toricstack
