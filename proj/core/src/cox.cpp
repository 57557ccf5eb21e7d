#include "toricstack/cox.hpp"

#include <algorithm>
#include <random>

#include "toricstack/error.hpp"

namespace toricstack {

namespace {

PicClass exponent_class(const Exponent& e) {
  PicClass c;
  for (unsigned long x : e) c.representative.emplace_back(x);
  return c;
}

}  // namespace

void require_morphism_preconditions(const MorphismData& md) {
  if (md.source.gerbe_count() != 0) {
    throw Error(ErrorCode::SourceHasGerbe, "source data must have R = 0");
  }
  require_valid(md.source);
  require_valid(md.target);
  if (!is_complete(md.source.fan)) {
    throw Error(ErrorCode::SourceNotComplete, "source fan must be complete");
  }
  if (!rays_span(md.target.fan).spans) {
    throw Error(ErrorCode::TargetRaysNotSpanning, "target rays must span N_Q");
  }
  if (md.polys.size() != md.target.ray_count()) {
    throw Error(ErrorCode::DimensionMismatch, "need one polynomial per target ray");
  }
  for (const auto& p : md.polys) {
    if (p.variables() != md.source.ray_count()) {
      throw Error(ErrorCode::DimensionMismatch, "polynomials must use one variable per source ray");
    }
  }
  if (md.chi.size() != md.target.gerbe_count()) {
    throw Error(ErrorCode::DimensionMismatch, "need one chi per target gerbe index");
  }
  for (const auto& c : md.chi) {
    if (c.representative.size() != md.source.ray_count()) {
      throw Error(ErrorCode::DimensionMismatch, "chi classes must have one entry per source ray");
    }
  }
}

PicClass degree(const SparsePolynomial& p, const StackyData& source) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "the zero polynomial has no degree");
  const PicardPresentation pic(source.fan);
  const PicClass first = exponent_class(p.terms().begin()->first);
  for (const auto& [e, c] : p.terms()) {
    if (!pic.equal(first, exponent_class(e))) {
      throw Error(ErrorCode::NotHomogeneous, "polynomial " + p.to_string() + " is not homogeneous");
    }
  }
  return first;
}

ConditionAReport evaluate_condition_a(const MorphismData& md) {
  require_morphism_preconditions(md);
  const PicardPresentation pic(md.source.fan);
  const std::size_t src_n = md.source.ray_count();
  const std::size_t src_d = md.source.lattice_rank();
  const std::size_t d = md.target.lattice_rank();
  const std::size_t R = md.target.gerbe_count();
  const std::size_t n = md.target.ray_count();

  ConditionAReport report;
  std::vector<std::size_t> free_rays;
  for (std::size_t k = 0; k < n; ++k) {
    if (md.polys[k].is_zero()) {
      free_rays.push_back(k);
      report.ray_degrees.emplace_back(std::nullopt);
    } else {
      report.ray_degrees.emplace_back(degree(md.polys[k], md.source));
    }
  }

  // Row e of the system: coefficient of ray k, plus r_i chi_i on gerbe rows.
  auto coefficient = [&](std::size_t e, std::size_t k) -> const Integer& {
    return e < d ? md.target.fan.rays[k][e] : md.target.b(e - d, k);
  };
  std::vector<PicClass> known;
  for (std::size_t e = 0; e < d + R; ++e) {
    PicClass acc = pic.zero();
    for (std::size_t k = 0; k < n; ++k) {
      if (report.ray_degrees[k]) acc = acc + coefficient(e, k) * *report.ray_degrees[k];
    }
    if (e >= d) acc = acc + md.target.r[e - d] * md.chi[e - d];
    known.push_back(std::move(acc));
  }

  if (free_rays.empty()) {
    report.holds = true;
    for (std::size_t e = 0; e < d + R; ++e) {
      const bool ok = pic.is_zero(known[e]);
      (e < d ? report.lattice_rows : report.gerbe_rows).push_back(ok);
      report.holds = report.holds && ok;
    }
    return report;
  }

  // Zero polynomials lie in every graded piece: search for degrees y_k
  // (k free) and multipliers m_e with
  //   sum_{k free} coef(e,k) y_k - Rel m_e = -known_e   for every row e.
  const std::size_t rows = (d + R) * src_n;
  const std::size_t y_cols = free_rays.size() * src_n;
  const std::size_t cols = y_cols + (d + R) * src_d;
  IntegerMatrix system(rows, cols);
  IntegerVector rhs(rows);
  const IntegerMatrix& rel = pic.relation_matrix();
  for (std::size_t e = 0; e < d + R; ++e) {
    for (std::size_t s = 0; s < src_n; ++s) {
      const std::size_t row = e * src_n + s;
      for (std::size_t f = 0; f < free_rays.size(); ++f)
        system(row, f * src_n + s) = coefficient(e, free_rays[f]);
      for (std::size_t l = 0; l < src_d; ++l) system(row, y_cols + e * src_d + l) = -rel(s, l);
      rhs[row] = -known[e].representative[s];
    }
  }
  const auto sol = solve_linear(system, rhs);
  report.holds = sol.has_value();
  if (sol) {
    for (std::size_t f = 0; f < free_rays.size(); ++f) {
      PicClass y;
      for (std::size_t s = 0; s < src_n; ++s) y.representative.push_back(sol->particular[f * src_n + s]);
      report.ray_degrees[free_rays[f]] = std::move(y);
    }
  }
  return report;
}

bool check_condition_a(const MorphismData& md) { return evaluate_condition_a(md).holds; }

std::vector<ZeroPattern> irrelevant_patterns(const SimplicialFan& fan) { return maximal_cones(fan); }

ZeroPattern monomial_image_pattern(const std::vector<SparsePolynomial>& polys,
                                   const ZeroPattern& source) {
  ZeroPattern image;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const auto& p = polys[k];
    bool vanishes = p.is_zero();
    if (!vanishes) {
      const auto supp = p.support();
      vanishes = std::any_of(supp.begin(), supp.end(), [&](std::size_t v) {
        return std::binary_search(source.begin(), source.end(), v);
      });
    }
    if (vanishes) image.push_back(k);
  }
  return image;
}

ConditionBVerdict check_condition_b(const MorphismData& md, const SamplingOptions& options) {
  require_morphism_preconditions(md);
  ConditionBVerdict out;
  const bool exact = std::all_of(md.polys.begin(), md.polys.end(), [](const SparsePolynomial& p) {
    return p.is_zero() || p.is_monomial();
  });

  if (exact) {
    // The image pattern grows with the source pattern, so sigma'(1) for
    // maximal sigma' are the only patterns that need checking.
    const auto maxes = maximal_cones(md.source.fan);
    for (std::size_t c = 0; c < maxes.size(); ++c) {
      const auto image = monomial_image_pattern(md.polys, maxes[c]);
      if (!is_admissible_zero_pattern(md.target.fan, image)) {
        out.verdict = BVerdict::Refuted;
        out.source_pattern = maxes[c];
        out.image_pattern = image;
        out.source_cone = c;
        return out;
      }
    }
    out.verdict = BVerdict::Proven;
    return out;
  }

  if (options.sample_values.empty() || options.budget == 0) return out;
  for (const auto& v : options.sample_values) {
    if (v == 0) throw Error(ErrorCode::InvalidArgument, "sample values must be nonzero");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, options.sample_values.size() - 1);
  const std::size_t src_n = md.source.ray_count();
  for (const auto& pattern : md.source.fan.cones) {
    for (std::size_t s = 0; s < options.budget; ++s) {
      std::vector<Rational> z(src_n);
      for (std::size_t v = 0; v < src_n; ++v) {
        if (!std::binary_search(pattern.begin(), pattern.end(), v)) z[v] = options.sample_values[pick(rng)];
      }
      ZeroPattern image;
      for (std::size_t k = 0; k < md.polys.size(); ++k)
        if (md.polys[k].evaluate(z) == 0) image.push_back(k);
      if (!is_admissible_zero_pattern(md.target.fan, image)) {
        out.verdict = BVerdict::Refuted;
        out.source_pattern = pattern;
        out.image_pattern = std::move(image);
        out.point = std::move(z);
        return out;
      }
    }
  }
  return out;
}

TwoIsoResult check_two_isomorphic(const MorphismData& first, const MorphismData& second) {
  require_morphism_preconditions(first);
  require_morphism_preconditions(second);
  if (!(first.source == second.source) || !(first.target == second.target)) {
    throw Error(ErrorCode::MismatchedSourceTarget, "morphisms must share source and target data");
  }
  const PicardPresentation pic(first.source.fan);
  for (std::size_t i = 0; i < first.chi.size(); ++i) {
    if (!pic.equal(first.chi[i], second.chi[i])) {
      throw Error(ErrorCode::MismatchedSourceTarget, "morphisms must share the chi classes");
    }
  }

  TwoIsoResult out;
  const std::size_t n = first.target.ray_count();
  const std::size_t d = first.target.lattice_rank();
  std::vector<std::size_t> free_rays;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = first.polys[k];
    const auto& q = second.polys[k];
    if (p.is_zero() && q.is_zero()) {
      free_rays.push_back(k);
      out.ratios.emplace_back(std::nullopt);
      continue;
    }
    if (p.terms().size() != q.terms().size()) {
      out.verdict = IsoVerdict::No;
      out.reason = "supports of P_" + std::to_string(k) + " differ";
      return out;
    }
    std::optional<Rational> ratio;
    for (auto it = p.terms().begin(), jt = q.terms().begin(); it != p.terms().end(); ++it, ++jt) {
      if (it->first != jt->first) {
        out.verdict = IsoVerdict::No;
        out.reason = "supports of P_" + std::to_string(k) + " differ";
        return out;
      }
      const Rational r = jt->second / it->second;
      if (ratio && *ratio != r) {
        out.verdict = IsoVerdict::No;
        out.reason = "P_" + std::to_string(k) + " are not proportional";
        return out;
      }
      ratio = r;
    }
    out.ratios.push_back(ratio);
  }

  // Need (lambda_k) in ker of the torus part of psi: prod_k lambda_k^{a_lk} = 1.
  // Fixed ratios contribute t_l; free coordinates can absorb t_l exactly
  // when every integer relation u with u^T A_free = 0 satisfies prod t_l^{u_l} = 1.
  std::vector<Rational> t(d, Rational(1));
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < n; ++k)
      if (out.ratios[k]) t[l] *= power(*out.ratios[k], first.target.fan.rays[k][l]);
  IntegerMatrix free_transpose(free_rays.size(), d);
  for (std::size_t f = 0; f < free_rays.size(); ++f)
    for (std::size_t l = 0; l < d; ++l) free_transpose(f, l) = first.target.fan.rays[free_rays[f]][l];
  for (const auto& u : integer_kernel(free_transpose)) {
    Rational value = 1;
    for (std::size_t l = 0; l < d; ++l) value *= power(t[l], u[l]);
    if (value != 1) {
      out.verdict = IsoVerdict::No;
      out.reason = "ratios do not lie in the image of G";
      return out;
    }
  }
  out.verdict = IsoVerdict::Yes;
  return out;
}

}  // namespace toricstack
