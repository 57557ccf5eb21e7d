#include "toricstack/polynomial.hpp"

#include <sstream>

#include "toricstack/error.hpp"

namespace toricstack {

SparsePolynomial SparsePolynomial::monomial(std::size_t variables, Exponent exponent,
                                            const Rational& coefficient) {
  SparsePolynomial p(variables);
  p.add_term(coefficient, std::move(exponent));
  return p;
}

SparsePolynomial SparsePolynomial::constant(std::size_t variables, const Rational& value) {
  return monomial(variables, Exponent(variables, 0), value);
}

void SparsePolynomial::add_term(const Rational& coefficient, Exponent exponent) {
  if (exponent.size() != variables_) {
    throw Error(ErrorCode::DimensionMismatch, "exponent vector has " +
                                                  std::to_string(exponent.size()) +
                                                  " entries, expected " + std::to_string(variables_));
  }
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(std::move(exponent), coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<std::size_t> SparsePolynomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < variables_; ++v) {
    for (const auto& [e, c] : terms_) {
      if (e[v] > 0) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

Rational power(const Rational& base, const Integer& exponent) {
  if (exponent < 0) {
    if (base == 0) throw Error(ErrorCode::InvalidArgument, "zero to a negative power");
    return power(Rational(1) / base, -exponent);
  }
  if (!exponent.fits_ulong_p()) throw Error(ErrorCode::TooLarge, "exponent too large");
  const unsigned long e = exponent.get_ui();
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

Rational SparsePolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != variables_) throw Error(ErrorCode::DimensionMismatch, "evaluation point size");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < variables_ && t != 0; ++v) {
      if (e[v] > 0) t *= power(point[v], Integer(e[v]));
    }
    sum += t;
  }
  return sum;
}

SparsePolynomial SparsePolynomial::scaled(const Rational& factor) const {
  SparsePolynomial out(variables_);
  if (factor == 0) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * factor);
  return out;
}

SparsePolynomial SparsePolynomial::operator+(const SparsePolynomial& other) const {
  if (other.variables_ != variables_) throw Error(ErrorCode::DimensionMismatch, "variable count");
  SparsePolynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(c, e);
  return out;
}

SparsePolynomial SparsePolynomial::operator*(const SparsePolynomial& other) const {
  if (other.variables_ != variables_) throw Error(ErrorCode::DimensionMismatch, "variable count");
  SparsePolynomial out(variables_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : other.terms_) {
      Exponent e(variables_);
      for (std::size_t v = 0; v < variables_; ++v) e[v] = e1[v] + e2[v];
      out.add_term(c1 * c2, std::move(e));
    }
  return out;
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (std::size_t v = 0; v < variables_; ++v) {
      if (e[v] == 0) continue;
      os << "*z" << v;
      if (e[v] > 1) os << '^' << e[v];
    }
  }
  return os.str();
}

}  // namespace toricstack
