#include "toricstack/stacky.hpp"

#include <algorithm>

#include "toricstack/error.hpp"

namespace toricstack {

StackyData make_rigid(SimplicialFan fan) {
  const std::size_t n = fan.rays.size();
  return StackyData{std::move(fan), {}, IntegerMatrix(0, n)};
}

ValidationReport validate_data(const StackyData& data) {
  ValidationReport report = validate_fan(data.fan);
  for (std::size_t i = 0; i < data.r.size(); ++i) {
    if (data.r[i] < 1) {
      report.add("NonPositiveOrder",
                 "r[" + std::to_string(i) + "] = " + data.r[i].get_str() +
                     " violates: the r_i must be positive non zero integers");
    }
  }
  if (data.b.rows() != data.r.size()) {
    report.add("BRowCount", "b has " + std::to_string(data.b.rows()) + " rows but R = " +
                                std::to_string(data.r.size()));
  }
  if (data.b.rows() > 0 && data.b.cols() != data.ray_count()) {
    report.add("BColumnCount", "b has " + std::to_string(data.b.cols()) +
                                   " columns but there are " + std::to_string(data.ray_count()) +
                                   " rays");
  }
  return report;
}

void require_valid(const StackyData& data) {
  const auto report = validate_data(data);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::InvalidData, v.code + ": " + v.message);
  }
}

PresentationMatrices build_matrices(const StackyData& data) {
  const std::size_t d = data.lattice_rank();
  const std::size_t n = data.ray_count();
  const std::size_t R = data.gerbe_count();
  PresentationMatrices m{IntegerMatrix(d + R, n), IntegerMatrix(d + R, R)};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < d; ++l) m.B(l, k) = data.fan.rays[k][l];
    for (std::size_t i = 0; i < R; ++i) m.B(d + i, k) = data.b(i, k);
  }
  for (std::size_t i = 0; i < R; ++i) m.Q(d + i, i) = data.r[i];
  return m;
}

IntegerMatrix psi_exponents(const StackyData& data) {
  auto m = build_matrices(data);
  return m.B.hconcat(m.Q);
}

QuotientGroupDesc quotient_group(const StackyData& data) {
  const IntegerMatrix bq = psi_exponents(data);
  const std::size_t ambient = bq.cols();
  // coker([BQ]^*): Z^{n+R} modulo the rows of [BQ].
  const IntegerMatrix relations = bq.transpose();
  QuotientGroupDesc out;
  const FgAbelianGroup coker = cokernel(ambient, relations);
  out.torus_rank = coker.free_rank();
  out.finite_part = coker.torsion();

  if (relations.cols() == 0) {
    for (std::size_t k = 0; k < ambient; ++k) {
      IntegerVector e(ambient);
      e[k] = 1;
      out.character_classes.push_back(std::move(e));
    }
    return out;
  }
  const auto snf = smith_normal_form(relations);
  const auto diag = snf.diagonal();
  for (std::size_t k = 0; k < ambient; ++k) {
    IntegerVector cls;
    for (std::size_t j = 0; j < diag.size(); ++j) {
      if (diag[j] > 1) {
        Integer c = snf.U_inv(j, k) % diag[j];
        if (c < 0) c += diag[j];
        cls.push_back(c);
      }
    }
    for (std::size_t j = snf.rank(); j < ambient; ++j) cls.push_back(snf.U_inv(j, k));
    out.character_classes.push_back(std::move(cls));
  }
  return out;
}

StackyFan stacky_fan(const StackyData& data) {
  if (!rays_span(data.fan).spans) {
    throw Error(ErrorCode::NonSpanningRays,
                "rays do not span N_Q; split off the torus factor first");
  }
  StackyFan out;
  out.fan = data.fan;
  out.extended_group = FgAbelianGroup(data.lattice_rank(), invariant_factor_chain(data.r));
  for (std::size_t k = 0; k < data.ray_count(); ++k) {
    LiftedRay lr{data.fan.rays[k], {}};
    for (std::size_t i = 0; i < data.gerbe_count(); ++i) {
      Integer t = data.b(i, k) % data.r[i];
      if (t < 0) t += data.r[i];
      lr.torsion.push_back(t);
    }
    out.lifted_rays.push_back(std::move(lr));
  }
  return out;
}

FgAbelianGroup generic_stabilizer(const StackyData& data) {
  return FgAbelianGroup(0, invariant_factor_chain(data.r));
}

FgAbelianGroup point_stabilizer(const StackyData& data, std::span<const std::size_t> cone) {
  if (!data.fan.contains(cone)) {
    throw Error(ErrorCode::ConeNotInFan, "cone is not a cone of the fan");
  }
  Cone sigma(cone.begin(), cone.end());
  std::sort(sigma.begin(), sigma.end());
  // Characters e_k with rho_k outside sigma act nontrivially on a generic
  // coordinate, so the stabilizer is dual to C / <e_k : k not in sigma>,
  // i.e. Z^{|sigma|+R} modulo the rows of [B_sigma Q].
  const auto m = build_matrices(data);
  const IntegerMatrix restricted = m.B.select_columns(sigma).hconcat(m.Q);
  const FgAbelianGroup g = cokernel(restricted.cols(), restricted.transpose());
  return FgAbelianGroup(g.free_rank(), g.invariant_factors());
}

StackyData rigidify(const StackyData& data) { return make_rigid(data.fan); }

NonSpanningSplit split_nonspanning(const StackyData& data) {
  const auto span = rays_span(data.fan);
  if (span.spans) {
    return {data, 0, IntegerMatrix::identity(data.lattice_rank())};
  }
  NonSpanningSplit out;
  out.torus_rank = data.lattice_rank() - span.rank;
  out.basis = span.basis;
  SimplicialFan fan;
  fan.lattice_rank = span.rank;
  fan.cones = data.fan.cones;
  for (const auto& a : data.fan.rays) fan.rays.push_back(span.coordinates * a);

  // Sign convention: the first ray with a nonzero j-th coordinate has it positive.
  for (std::size_t j = 0; j < span.rank; ++j) {
    auto it = std::find_if(fan.rays.begin(), fan.rays.end(),
                           [j](const IntegerVector& v) { return v[j] != 0; });
    if (it != fan.rays.end() && (*it)[j] < 0) {
      for (auto& v : fan.rays) v[j] = -v[j];
      for (std::size_t l = 0; l < out.basis.rows(); ++l) out.basis(l, j) = -out.basis(l, j);
    }
  }
  out.data = StackyData{std::move(fan), data.r, data.b};
  return out;
}

std::vector<RayDecomposition> canonical_ray_decomposition(const StackyData& data) {
  std::vector<RayDecomposition> out;
  for (const auto& a : data.fan.rays) {
    const Integer g = content(a);
    if (g == 0) throw Error(ErrorCode::InvalidData, "zero ray has no primitive generator");
    IntegerVector prim = a;
    for (auto& x : prim) x /= g;
    out.push_back({std::move(prim), g});
  }
  return out;
}

DmTorus dm_torus(const StackyData& data) {
  if (!is_admissible_zero_pattern(data.fan, ZeroPattern{})) {
    throw Error(ErrorCode::InvalidData, "fan has no maximal cone; the torus is not in the stack");
  }
  return {data.lattice_rank(), generic_stabilizer(data)};
}

}  // namespace toricstack
