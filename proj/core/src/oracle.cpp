#include "toricstack/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "toricstack/error.hpp"

namespace toricstack::oracle {

namespace {

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "oracle multiply");
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod(const Integer& a, const Integer& m) { return a - m * floor_div(a, m); }

std::vector<Integer> prime_divisors(Integer n) {
  std::vector<Integer> out;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Integer cofactor_determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n > 9) throw Error(ErrorCode::TooLarge, "cofactor expansion limited to 9x9");
  if (n == 1) return a(0, 0);
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    IntegerMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = a(i, j);
      }
    const Integer term = a(0, c) * cofactor_determinant(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

bool verify_snf(const IntegerMatrix& a, const SnfDecomposition& dec) {
  const std::size_t m = a.rows(), n = a.cols();
  if (dec.U.rows() != m || dec.U.cols() != m || dec.D.rows() != m || dec.D.cols() != n ||
      dec.V.rows() != n || dec.V.cols() != n) {
    return false;
  }
  if (!(multiply(multiply(dec.U, dec.D), dec.V) == a)) return false;
  if (abs(cofactor_determinant(dec.U)) != 1 || abs(cofactor_determinant(dec.V)) != 1) return false;
  bool seen_zero = false;
  Integer prev = 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Integer& x = dec.D(i, j);
      if (i != j) {
        if (x != 0) return false;
        continue;
      }
      if (x < 0) return false;
      if (x == 0) {
        seen_zero = true;
        continue;
      }
      if (seen_zero) return false;
      if (x % prev != 0) return false;
      prev = x;
    }
  return true;
}

IntegerVector FiniteGroupTable::reduce(IntegerVector v) const {
  for (std::size_t i = 0; i < ambient_; ++i) {
    const IntegerVector& h = hermite_[i];
    const Integer q = floor_div(v[i], h[i]);
    if (q == 0) continue;
    for (std::size_t k = i; k < ambient_; ++k) v[k] -= q * h[k];
  }
  return v;
}

std::size_t FiniteGroupTable::index_of(std::span<const Integer> v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length");
  return index_.at(reduce(IntegerVector(v.begin(), v.end())));
}

std::size_t FiniteGroupTable::compose(std::size_t a, std::size_t b) const {
  IntegerVector s(ambient_);
  for (std::size_t k = 0; k < ambient_; ++k) s[k] = elements_[a][k] + elements_[b][k];
  return index_.at(reduce(std::move(s)));
}

std::size_t FiniteGroupTable::inverse(std::size_t a) const {
  IntegerVector s(ambient_);
  for (std::size_t k = 0; k < ambient_; ++k) s[k] = -elements_[a][k];
  return index_.at(reduce(std::move(s)));
}

std::size_t FiniteGroupTable::element_order(std::size_t a) const {
  // Lagrange: the order divides |G|, so only divisors need testing.
  const std::size_t n = order();
  for (std::size_t k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    IntegerVector s(ambient_);
    for (std::size_t i = 0; i < ambient_; ++i) s[i] = elements_[a][i] * static_cast<unsigned long>(k);
    if (index_.at(reduce(std::move(s))) == identity()) return k;
  }
  throw Error(ErrorCode::InvalidData, "element order does not divide the group order");
}

std::map<Integer, std::size_t> FiniteGroupTable::order_census() const {
  std::map<Integer, std::size_t> census;
  for (std::size_t i = 0; i < order(); ++i) ++census[Integer(element_order(i))];
  return census;
}

std::vector<Integer> FiniteGroupTable::invariant_factors() const {
  const auto census = order_census();
  return invariant_factors_from_kill_counts(Integer(order()), [&census](const Integer& k) {
    Integer count = 0;
    for (const auto& [ord, c] : census)
      if (k % ord == 0) count += c;
    return count;
  });
}

FiniteGroupTable quotient_enumerate(const IntegerMatrix& relations, std::size_t bound) {
  const std::size_t n = relations.rows();
  FiniteGroupTable table;
  table.ambient_ = n;

  // Lower-triangular lattice basis by Euclid on one row at a time.
  std::vector<IntegerVector> active;
  for (std::size_t c = 0; c < relations.cols(); ++c) active.push_back(relations.column(c));
  Integer order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      std::size_t best = active.size();
      for (std::size_t g = 0; g < active.size(); ++g) {
        if (active[g][i] == 0) continue;
        if (best == active.size() || abs(active[g][i]) < abs(active[best][i])) best = g;
      }
      if (best == active.size()) {
        throw Error(ErrorCode::TooLarge, "quotient is infinite");
      }
      bool reduced = false;
      for (std::size_t g = 0; g < active.size(); ++g) {
        if (g == best || active[g][i] == 0) continue;
        const Integer q = floor_div(active[g][i], active[best][i]);
        for (std::size_t k = i; k < n; ++k) active[g][k] -= q * active[best][k];
        reduced = true;
      }
      bool alone = true;
      for (std::size_t g = 0; g < active.size(); ++g)
        if (g != best && active[g][i] != 0) alone = false;
      if (alone) {
        IntegerVector h = active[best];
        if (h[i] < 0)
          for (auto& x : h) x = -x;
        order *= h[i];
        table.hermite_.push_back(std::move(h));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        break;
      }
      if (!reduced) break;
    }
    if (order > bound) throw Error(ErrorCode::TooLarge, "quotient order exceeds enumeration bound");
  }

  std::deque<std::size_t> queue;
  IntegerVector zero(n);
  table.elements_.push_back(zero);
  table.index_.emplace(zero, 0);
  queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j) {
      IntegerVector next = table.elements_[cur];
      next[j] += 1;
      next = table.reduce(std::move(next));
      if (table.index_.contains(next)) continue;
      table.index_.emplace(next, table.elements_.size());
      queue.push_back(table.elements_.size());
      table.elements_.push_back(std::move(next));
    }
  }

  if (Integer(table.order()) != order) throw Error(ErrorCode::InvalidData, "enumeration mismatch");
  for (std::size_t a = 0; a < table.order(); ++a) {
    if (table.compose(a, table.inverse(a)) != table.identity()) {
      throw Error(ErrorCode::InvalidData, "inverse check failed");
    }
  }
  if (table.order() <= 24) {
    for (std::size_t a = 0; a < table.order(); ++a)
      for (std::size_t b = 0; b < table.order(); ++b)
        for (std::size_t c = 0; c < table.order(); ++c)
          if (table.compose(table.compose(a, b), c) != table.compose(a, table.compose(b, c))) {
            throw Error(ErrorCode::InvalidData, "associativity check failed");
          }
  }
  return table;
}

bool divisibility(std::span<const Integer> v, const Integer& r, const IntegerMatrix& relations,
                  std::size_t bound) {
  const std::size_t n = v.size();
  IntegerMatrix gens(n, n + relations.cols());
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = r;
  for (std::size_t c = 0; c < relations.cols(); ++c)
    for (std::size_t i = 0; i < n; ++i) gens(i, n + c) = relations(i, c);
  const auto table = quotient_enumerate(gens, bound);
  return table.index_of(v) == table.identity();
}

Integer stabilizer_order(const StackyData& data, std::span<const std::size_t> cone,
                         std::size_t bound) {
  const std::size_t d = data.fan.lattice_rank;
  const std::size_t R = data.r.size();
  const std::size_t s = cone.size();
  if (s == d) {
    IntegerMatrix a(d, d);
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t l = 0; l < d; ++l) a(l, j) = data.fan.rays[cone[j]][l];
    Integer order = abs(cofactor_determinant(a));
    for (const auto& r : data.r) order *= r;
    return order;
  }
  // Z^{s+R} modulo the rows (a_l|sigma, 0) and (b_i|sigma, r_i e_i).
  IntegerMatrix rel(s + R, d + R);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t j = 0; j < s; ++j) rel(j, l) = data.fan.rays[cone[j]][l];
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < s; ++j) rel(j, d + i) = data.b(i, cone[j]);
    rel(s + i, d + i) = data.r[i];
  }
  return Integer(quotient_enumerate(rel, bound).order());
}

std::vector<Integer> invariant_factors_from_kill_counts(
    const Integer& order, const std::function<Integer(const Integer&)>& kill_count) {
  // For each prime p: (number of cyclic p-factors of order >= p^e) =
  // log_p(kill(p^e) / kill(p^{e-1})).
  std::vector<std::vector<Integer>> columns;  // per prime: exponents' prime powers, descending
  for (const auto& p : prime_divisors(order)) {
    std::vector<std::size_t> at_least;  // at_least[e-1] = #factors with exponent >= e
    Integer prev = 1;
    Integer pe = 1;
    for (;;) {
      pe *= p;
      const Integer cur = kill_count(pe);
      Integer ratio = cur / prev;
      std::size_t count = 0;
      while (ratio > 1) {
        ratio /= p;
        ++count;
      }
      if (count == 0) break;
      at_least.push_back(count);
      prev = cur;
    }
    std::vector<Integer> powers;  // one entry per cyclic factor, descending
    for (std::size_t f = 0; !at_least.empty() && f < at_least[0]; ++f) {
      Integer q = 1;
      for (std::size_t e = 0; e < at_least.size() && at_least[e] > f; ++e) q *= p;
      powers.push_back(q);
    }
    columns.push_back(std::move(powers));
  }
  std::size_t width = 0;
  for (const auto& c : columns) width = std::max(width, c.size());
  std::vector<Integer> factors(width, Integer(1));
  for (const auto& c : columns)
    for (std::size_t f = 0; f < c.size(); ++f) factors[f] *= c[f];
  std::reverse(factors.begin(), factors.end());
  return factors;
}

std::vector<Integer> cyclic_product_invariant_factors(std::span<const Integer> r) {
  Integer order = 1;
  for (const auto& x : r) order *= x;
  return invariant_factors_from_kill_counts(order, [&r](const Integer& k) {
    Integer total = 1;
    for (const auto& m : r) {
      Integer count = 0;
      for (Integer x = 0; x < m; ++x)
        if ((k * x) % m == 0) ++count;
      total *= count;
    }
    return total;
  });
}

bool is_band_isomorphism(std::span<const Integer> r, std::span<const Integer> s,
                         const IntegerMatrix& transport, std::size_t bound) {
  if (transport.rows() != s.size() || transport.cols() != r.size()) return false;
  Integer src = 1, dst = 1;
  for (const auto& x : r) src *= x;
  for (const auto& x : s) dst *= x;
  if (src != dst) return false;
  if (src > bound) throw Error(ErrorCode::TooLarge, "band too large to enumerate");
  // Well defined: T (r_i e_i) = 0 in (+)Z/s_j.
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (mod(transport(j, i) * r[i], s[j]) != 0) return false;

  std::set<std::vector<Integer>> images;
  std::vector<Integer> x(r.size());
  for (;;) {
    std::vector<Integer> y(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      Integer acc = 0;
      for (std::size_t i = 0; i < r.size(); ++i) acc += transport(j, i) * x[i];
      y[j] = mod(acc, s[j]);
    }
    images.insert(std::move(y));
    std::size_t pos = 0;
    while (pos < r.size()) {
      if (++x[pos] < r[pos]) break;
      x[pos] = 0;
      ++pos;
    }
    if (pos == r.size()) break;
  }
  return Integer(images.size()) == src;
}

}  // namespace toricstack::oracle
