#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "toricstack/fan.hpp"
#include "toricstack/polynomial.hpp"
#include "toricstack/stacky.hpp"

namespace toricstack::testing {

inline IntegerVector vec(std::initializer_list<long> v) { return to_integer_vector(v); }

inline SimplicialFan make_fan(std::size_t d, std::vector<IntegerVector> rays,
                              std::vector<Cone> maximal) {
  return close_under_faces(SimplicialFan{d, std::move(rays), std::move(maximal)});
}

/// Rays e_1..e_n, -(e_1+...+e_n); maximal cones all n-subsets.
inline SimplicialFan projective_space_fan(std::size_t n) {
  std::vector<IntegerVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntegerVector e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntegerVector(n, Integer(-1)));
  std::vector<Cone> maxes;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    Cone c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    maxes.push_back(c);
  }
  return make_fan(n, rays, maxes);
}

/// Rays e_1..e_n with one maximal cone.
inline SimplicialFan affine_space_fan(std::size_t n) {
  std::vector<IntegerVector> rays;
  Cone all;
  for (std::size_t i = 0; i < n; ++i) {
    IntegerVector e(n);
    e[i] = 1;
    rays.push_back(e);
    all.push_back(i);
  }
  return make_fan(n, rays, {all});
}

inline SimplicialFan product_fan(const SimplicialFan& a, const SimplicialFan& b) {
  SimplicialFan out;
  out.lattice_rank = a.lattice_rank + b.lattice_rank;
  for (const auto& r : a.rays) {
    IntegerVector v = r;
    v.resize(out.lattice_rank);
    out.rays.push_back(v);
  }
  for (const auto& r : b.rays) {
    IntegerVector v(a.lattice_rank);
    v.insert(v.end(), r.begin(), r.end());
    out.rays.push_back(v);
  }
  for (const auto& ca : maximal_cones(a))
    for (const auto& cb : maximal_cones(b)) {
      Cone c = ca;
      for (auto i : cb) c.push_back(i + a.rays.size());
      out.cones.push_back(c);
    }
  return close_under_faces(out);
}

/// P^1 fan with a = (-1, 1): ray 0 is the negative one.
inline SimplicialFan p1_fan() { return make_fan(1, {vec({-1}), vec({1})}, {{0}, {1}}); }

/// The weighted projective line root-gerbe example: a = (-3, 2), r = (2), b = (0, 1).
inline StackyData p32_root() {
  return StackyData{make_fan(1, {vec({-3}), vec({2})}, {{0}, {1}}), {Integer(2)},
                    IntegerMatrix{{0, 1}}};
}

/// [A^1 / mu_a]: one ray with a_rho = a, R = 0.
inline StackyData a1_mod(long a) { return make_rigid(make_fan(1, {vec({a})}, {{0}})); }

/// P^1 with a = (-1, 1), R = 1, r = (2), b = (0, k).
inline StackyData p1_gerbe(long k, long r = 2) {
  return StackyData{p1_fan(), {Integer(r)}, IntegerMatrix{{0, k}}};
}

inline SparsePolynomial mono(std::size_t vars, Exponent e, Rational c = 1) {
  return SparsePolynomial::monomial(vars, std::move(e), c);
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

/// Random valid simplicial fan whose rays span Q^d. Cones are accepted
/// greedily when they meet every accepted cone in a common face.
inline SimplicialFan random_spanning_fan(std::mt19937_64& rng, std::size_t d, std::size_t max_rays,
                                         long max_entry) {
  std::uniform_int_distribution<long> entry(-max_entry, max_entry);
  for (;;) {
    // Z^1 has only two ray directions
    const std::size_t cap = d == 1 ? std::min<std::size_t>(max_rays, 2) : max_rays;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(d, std::max(d, cap))(rng);
    SimplicialFan fan;
    fan.lattice_rank = d;
    std::vector<IntegerVector> dirs;
    while (fan.rays.size() < n) {
      IntegerVector v(d);
      for (auto& x : v) x = entry(rng);
      const Integer g = content(v);
      if (g == 0) continue;
      IntegerVector p = v;
      for (auto& x : p) x /= g;
      if (std::find(dirs.begin(), dirs.end(), p) != dirs.end()) continue;
      dirs.push_back(p);
      fan.rays.push_back(v);
    }
    // Candidate cones of size d, then smaller ones, in random order.
    std::vector<Cone> candidates;
    const std::size_t subsets = std::size_t{1} << n;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      Cone c;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) c.push_back(i);
      if (c.size() > d) continue;
      candidates.push_back(c);
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Cone& a, const Cone& b) { return a.size() > b.size(); });
    std::vector<Cone> accepted;
    SimplicialFan probe = fan;
    for (const auto& c : candidates) {
      probe.cones = {c};
      if (!validate_fan(close_under_faces(probe)).ok()) continue;  // dependent rays
      bool compatible = std::none_of(accepted.begin(), accepted.end(), [&](const Cone& other) {
        return std::includes(other.begin(), other.end(), c.begin(), c.end());
      });
      for (const auto& other : accepted) {
        if (!compatible) break;
        compatible = cones_meet_in_common_face(fan, c, other) && cones_meet_in_common_face(fan, other, c);
      }
      if (compatible) accepted.push_back(c);
    }
    // Keep only rays that appear in some accepted cone, reindexing.
    std::vector<long> remap(n, -1);
    SimplicialFan out;
    out.lattice_rank = d;
    for (const auto& c : accepted)
      for (auto i : c)
        if (remap[i] < 0) {
          remap[i] = static_cast<long>(out.rays.size());
          out.rays.push_back(fan.rays[i]);
        }
    for (const auto& c : accepted) {
      Cone m;
      for (auto i : c) m.push_back(static_cast<std::size_t>(remap[i]));
      out.cones.push_back(normalize_cone(m));
    }
    out = close_under_faces(out);
    if (!rays_span(out).spans) continue;
    if (!validate_fan(out).ok()) continue;
    return out;
  }
}

inline StackyData random_spanning_data(std::mt19937_64& rng, std::size_t max_d, std::size_t max_rays,
                                       long max_entry, std::size_t max_R, long max_r) {
  const std::size_t d = std::uniform_int_distribution<std::size_t>(1, max_d)(rng);
  StackyData data;
  data.fan = random_spanning_fan(rng, d, max_rays, max_entry);
  const std::size_t R = std::uniform_int_distribution<std::size_t>(0, max_R)(rng);
  std::uniform_int_distribution<long> rdist(1, max_r);
  std::uniform_int_distribution<long> bdist(-6, 6);
  for (std::size_t i = 0; i < R; ++i) data.r.emplace_back(rdist(rng));
  data.b = IntegerMatrix(R, data.ray_count());
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t k = 0; k < data.ray_count(); ++k) data.b(i, k) = bdist(rng);
  return data;
}

inline IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, long max_entry) {
  std::uniform_int_distribution<std::size_t> dim(0, max_dim);
  std::uniform_int_distribution<long> entry(-max_entry, max_entry);
  IntegerMatrix m(dim(rng), dim(rng));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
  return m;
}

}  // namespace toricstack::testing
