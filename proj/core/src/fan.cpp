#include "toricstack/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toricstack/error.hpp"
#include "toricstack/fourier_motzkin.hpp"
#include "toricstack/lattice.hpp"

namespace toricstack {

namespace {

std::string cone_string(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "}";
}

bool is_subset(const Cone& small, const Cone& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

IntegerVector primitive(const IntegerVector& v) {
  Integer g = content(v);
  IntegerVector out = v;
  if (g != 0)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace

void ValidationReport::add(std::string code, std::string message, std::vector<Cone> cones,
                           std::vector<std::size_t> rays) {
  violations.push_back({std::move(code), std::move(message), std::move(cones), std::move(rays)});
}

void ValidationReport::append(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

IntegerMatrix SimplicialFan::ray_matrix() const {
  return IntegerMatrix::from_columns(rays, lattice_rank);
}

bool SimplicialFan::contains(std::span<const std::size_t> cone) const {
  Cone c(cone.begin(), cone.end());
  std::sort(c.begin(), c.end());
  return std::find(cones.begin(), cones.end(), c) != cones.end();
}

Cone normalize_cone(Cone cone) {
  std::sort(cone.begin(), cone.end());
  cone.erase(std::unique(cone.begin(), cone.end()), cone.end());
  return cone;
}

SimplicialFan close_under_faces(SimplicialFan fan) {
  std::set<Cone> all;
  all.insert(Cone{});
  for (const auto& raw : fan.cones) {
    const Cone c = normalize_cone(raw);
    if (c.size() >= 8 * sizeof(unsigned long) - 1) {
      throw Error(ErrorCode::InvalidArgument, "cone too large to enumerate faces");
    }
    const unsigned long subsets = 1UL << c.size();
    for (unsigned long mask = 0; mask < subsets; ++mask) {
      Cone face;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (mask & (1UL << i)) face.push_back(c[i]);
      all.insert(std::move(face));
    }
  }
  fan.cones.assign(all.begin(), all.end());
  std::stable_sort(fan.cones.begin(), fan.cones.end(),
                   [](const Cone& a, const Cone& b) { return a.size() < b.size(); });
  return fan;
}

bool cones_meet_in_common_face(const SimplicialFan& fan, const Cone& first, const Cone& second) {
  // Look for lambda, mu >= 0 with sum lambda_s a_s = sum mu_t a_t and
  // weight 1 on the rays of `first` outside `second`. Such a point lies in
  // both cones but not in cone(first ∩ second).
  Cone outside;
  std::set_difference(first.begin(), first.end(), second.begin(), second.end(),
                      std::back_inserter(outside));
  if (outside.empty()) return true;

  const std::size_t d = fan.lattice_rank;
  const std::size_t m = first.size() + second.size();
  LinearSystem sys;
  sys.variables = m;
  for (std::size_t l = 0; l < d; ++l) {
    std::vector<Rational> row(m);
    for (std::size_t s = 0; s < first.size(); ++s) row[s] = Rational(fan.rays[first[s]][l]);
    for (std::size_t t = 0; t < second.size(); ++t)
      row[first.size() + t] = Rational(-fan.rays[second[t]][l]);
    sys.add_equality(std::move(row), 0);
  }
  std::vector<Rational> weight(m);
  for (std::size_t s = 0; s < first.size(); ++s)
    if (std::binary_search(outside.begin(), outside.end(), first[s])) weight[s] = 1;
  sys.add_equality(std::move(weight), 1);
  sys.add_nonnegativity();
  return !is_feasible(sys);
}

ValidationReport validate_fan(const SimplicialFan& fan) {
  ValidationReport report;
  const std::size_t d = fan.lattice_rank;
  const std::size_t n = fan.rays.size();

  bool rays_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (fan.rays[i].size() != d) {
      report.add("RayDimension", "ray " + std::to_string(i) + " has " +
                                     std::to_string(fan.rays[i].size()) + " coordinates, expected " +
                                     std::to_string(d),
                 {}, {i});
      rays_ok = false;
    } else if (content(fan.rays[i]) == 0) {
      report.add("ZeroRay", "ray " + std::to_string(i) + " is the zero vector", {}, {i});
      rays_ok = false;
    }
  }
  if (!rays_ok) return report;

  std::map<IntegerVector, std::size_t> directions;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = directions.emplace(primitive(fan.rays[i]), i);
    if (!inserted) {
      report.add("DuplicateRayDirection",
                 "rays " + std::to_string(it->second) + " and " + std::to_string(i) +
                     " span the same ray",
                 {}, {it->second, i});
    }
  }

  bool cones_ok = true;
  std::set<Cone> seen;
  for (const auto& c : fan.cones) {
    const std::string name = cone_string(c);
    if (!std::is_sorted(c.begin(), c.end()) ||
        std::adjacent_find(c.begin(), c.end()) != c.end()) {
      report.add("ConeNotSorted", "cone " + name + " must list distinct ray indices in increasing order", {c});
      cones_ok = false;
      continue;
    }
    if (std::any_of(c.begin(), c.end(), [n](std::size_t i) { return i >= n; })) {
      report.add("ConeIndexOutOfRange", "cone " + name + " refers to a missing ray", {c});
      cones_ok = false;
      continue;
    }
    if (!seen.insert(c).second) {
      report.add("DuplicateCone", "cone " + name + " is listed twice", {c});
    }
    if (matrix_rank(fan.ray_matrix().select_columns(c)) != c.size()) {
      report.add("ConeNotSimplicial", "rays of cone " + name + " are linearly dependent", {c});
      cones_ok = false;
    }
  }
  if (!cones_ok) return report;

  if (!seen.contains(Cone{})) report.add("MissingZeroCone", "the zero cone is not listed");
  for (const auto& c : seen) {
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      Cone face = c;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      if (!seen.contains(face)) {
        report.add("NotClosedUnderFaces",
                   "face " + cone_string(face) + " of cone " + cone_string(c) + " is not listed",
                   {c, face});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.contains(Cone{i})) {
      report.add("RayNotInFan", "ray " + std::to_string(i) + " is not a cone of the fan", {}, {i});
    }
  }

  const auto maxes = maximal_cones(fan);
  for (std::size_t i = 0; i < maxes.size(); ++i)
    for (std::size_t j = i + 1; j < maxes.size(); ++j) {
      if (!cones_meet_in_common_face(fan, maxes[i], maxes[j]) ||
          !cones_meet_in_common_face(fan, maxes[j], maxes[i])) {
        report.add("ConeIntersection",
                   "cones " + cone_string(maxes[i]) + " and " + cone_string(maxes[j]) +
                       " overlap outside their common face",
                   {maxes[i], maxes[j]});
      }
    }
  return report;
}

std::vector<Cone> maximal_cones(const SimplicialFan& fan) {
  std::vector<Cone> out;
  for (const auto& c : fan.cones) {
    const bool dominated = std::any_of(fan.cones.begin(), fan.cones.end(), [&](const Cone& other) {
      return other.size() > c.size() && is_subset(c, other);
    });
    if (!dominated && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

bool is_complete(const SimplicialFan& fan) {
  const std::size_t d = fan.lattice_rank;
  const auto maxes = maximal_cones(fan);
  if (d == 0) return true;
  if (maxes.empty()) return false;
  for (const auto& c : maxes)
    if (c.size() != d) return false;

  std::map<Cone, std::vector<std::size_t>> facets;
  for (std::size_t k = 0; k < maxes.size(); ++k)
    for (std::size_t drop = 0; drop < d; ++drop) {
      Cone f = maxes[k];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
      facets[f].push_back(k);
    }
  for (const auto& [facet, owners] : facets)
    if (owners.size() != 2) return false;

  std::vector<bool> reached(maxes.size(), false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const std::size_t k = stack.back();
    stack.pop_back();
    for (const auto& [facet, owners] : facets) {
      if (std::find(owners.begin(), owners.end(), k) == owners.end()) continue;
      for (std::size_t o : owners)
        if (!reached[o]) {
          reached[o] = true;
          stack.push_back(o);
        }
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

RaySpan rays_span(const SimplicialFan& fan) {
  const std::size_t d = fan.lattice_rank;
  RaySpan out;
  if (fan.rays.empty()) {
    out.spans = d == 0;
    out.basis = IntegerMatrix(d, 0);
    out.coordinates = IntegerMatrix(0, d);
    return out;
  }
  const auto snf = smith_normal_form(fan.ray_matrix());
  out.rank = snf.rank();
  out.spans = out.rank == d;
  std::vector<std::size_t> first(out.rank);
  for (std::size_t i = 0; i < out.rank; ++i) first[i] = i;
  out.basis = snf.U.select_columns(first);
  out.coordinates = snf.U_inv.select_rows(first);
  return out;
}

bool is_admissible_zero_pattern(const SimplicialFan& fan, std::span<const std::size_t> pattern) {
  Cone w(pattern.begin(), pattern.end());
  w = normalize_cone(std::move(w));
  for (const auto& c : maximal_cones(fan))
    if (is_subset(w, c)) return true;
  return false;
}

}  // namespace toricstack
