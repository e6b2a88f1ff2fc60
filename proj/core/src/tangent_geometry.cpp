// Copyright 2026 The mpecstat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <utility>

#include "geom_internal.hpp"
#include "mpecstat/error.hpp"
#include "mpecstat/linear_system.hpp"
#include "mpecstat/mpec_geom.hpp"

namespace mpecstat {

using internal::VectorExpr;

namespace {

// Moves from v along u by the largest β in {1/64, 1/128, ...} keeping the
// point in K̄.
RVector step_inside(const HCone& k, const RVector& v, const RVector& u) {
  Rational beta(1, 64);
  for (int i = 0; i < 64; ++i, beta /= 2) {
    RVector x = v;
    axpy(x, beta, u);
    if (k.contains(x)) return x;
  }
  throw Error(ErrorCode::kNotTangent, "direction leaves the critical cone");
}

// Rays and both signs of the lineality basis.
std::vector<RVector> cone_generators(const HCone& k) {
  const VCone g = h_to_v(k);
  std::vector<RVector> out;
  for (const auto& l : g.lineality) {
    out.push_back(l);
    out.push_back(neg(l));
  }
  out.insert(out.end(), g.rays.begin(), g.rays.end());
  return out;
}

std::vector<RVector> sigma_for(const ProblemData& data,
                               const PointGeometry& geom, const RVector& vbar,
                               const RVector& vstar, const SigmaChoice& choice,
                               const DirectionalData& dir) {
  if (!choice.points.empty()) {
    std::vector<RVector> restricted;
    for (const auto& s : choice.points)
      if (std::find(dir.vertices.begin(), dir.vertices.end(), s) !=
          dir.vertices.end())
        restricted.push_back(s);
    if (!restricted.empty() &&
        validate_sigma(data, geom, vbar, vstar, restricted))
      return restricted;
  }
  return dir.vertices;
}

}  // namespace

bool validate_sigma(const ProblemData& data, const PointGeometry& geom,
                    const RVector& vbar, const RVector& vbarStar,
                    const std::vector<RVector>& sigma) {
  if (sigma.empty()) return false;
  const DirectionalData dir = directional(data, geom, vbar);
  for (const auto& s : sigma)
    if (std::find(dir.vertices.begin(), dir.vertices.end(), s) ==
        dir.vertices.end())
      return false;
  const HCone crit = critical_cone(geom.criticalCone, vbar, vbarStar);
  for (const auto& u : cone_generators(crit)) {
    const RVector x = step_inside(geom.criticalCone, vbar, u);
    const DirectionalData near = directional(data, geom, x);
    const bool hit = std::any_of(sigma.begin(), sigma.end(), [&](const auto& s) {
      return near.dirMultipliers.contains(s);
    });
    if (!hit) return false;
  }
  return true;
}

std::optional<RVector> normal_membership(const ProblemData& data,
                                         const RVector& vbar,
                                         const RVector& lambdabar,
                                         const TildeCone& k,
                                         const RVector& wstar,
                                         const RVector& w) {
  if (!k.vPart.contains(w)) return std::nullopt;
  if (!in_polar(k.lambdaPart, data.curvature(vbar, w))) return std::nullopt;
  // η ∈ lambdaPart and w* + ∇²(λ̄ᵀg)w - 2∇²(ηᵀg)v̄ ∈ vPart°.
  LinearSystem sys;
  const VarBlock eta = sys.add_block(data.q);
  internal::constrain_cone(sys, eta, k.lambdaPart);
  VectorExpr expr(data.m);
  for (std::size_t i = 0; i < data.q; ++i)
    expr.add(eta[i], data.hessG[i] * vbar, 2);
  internal::add_polar_element(sys, expr, k.vPart.eqRows, k.vPart.ineqRows);
  expr.equal(sys, add(wstar, data.hess_times(lambdabar, w)));
  const auto out = internal::feasibility(sys);
  const auto* opt = internal::feasible(out);
  if (!opt) return std::nullopt;
  return block_values(opt->point, eta);
}

TangentTangent tangent_membership(const ProblemData& data, const RVector& vbar,
                                  const RVector& lambdabar, const TildeCone& k,
                                  const RVector& u, const RVector& ustar) {
  TangentTangent res;
  const auto tight = membership(k.vPart, u);
  if (!tight) return res;
  std::vector<RVector> tightRows;
  for (std::size_t i : *tight) tightRows.push_back(k.vPart.ineqRows[i]);
  const RVector c2 = scale(data.curvature(vbar, u), 2);
  const RVector rhs = sub(ustar, data.hess_times(lambdabar, u));
  const HCone& lam = k.lambdaPart;

  for (const auto& face : faces(lam)) {
    std::vector<RVector> faceRows;
    for (std::size_t i : face.tightSet) faceRows.push_back(lam.ineqRows[i]);
    if (!cone_combination(lam.eqRows, faceRows, c2)) continue;
    // μ ∈ face, rhs - ∇²(μᵀg)v̄ ∈ N_vPart(u).
    LinearSystem sys;
    const VarBlock mu = sys.add_block(data.q);
    internal::constrain_cone(sys, mu, face_cone(lam, face));
    VectorExpr expr(data.m);
    for (std::size_t i = 0; i < data.q; ++i)
      expr.add(mu[i], data.hessG[i] * vbar);
    internal::add_polar_element(sys, expr, k.vPart.eqRows, tightRows);
    expr.equal(sys, rhs);
    const auto out = internal::feasibility(sys);
    if (const auto* opt = internal::feasible(out)) {
      res.member = true;
      res.mu = block_values(opt->point, mu);
      res.zetaStar = sub(rhs, data.hess_times(res.mu, vbar));
      return res;
    }
  }
  return res;
}

NormalMembership normal_to_tangent_member(
    const ProblemData& data, const PointGeometry& geom, const RVector& vbar,
    const RVector& vbarStar, const RVector& wstar, const RVector& w,
    const SigmaChoice& sigma) {
  NormalMembership res;
  if (!check_2_nondegenerate(data, geom, vbar).nondegenerate) {
    if (!is_zero(vbar)) {
      throw Error(ErrorCode::kNotNondegenerate,
                  "g is not 2-nondegenerate in direction " + to_string(vbar));
    }
    const ZeroDirectionResult z =
        zero_dir_filter(data, geom, vbarStar, wstar, w, sigma);
    res.kind = z.passes ? NormalMembership::Kind::kNecessaryPassed
                        : NormalMembership::Kind::kRefuted;
    res.refutedAt = z.refutedAt;
    return res;
  }
  const TangentContext ctx = tangent_context(data, geom, vbar, vbarStar);
  if (auto eta =
          normal_membership(data, vbar, ctx.lambdabar, ctx.cone, wstar, w)) {
    res.kind = NormalMembership::Kind::kYes;
    res.eta = std::move(*eta);
  }
  return res;
}

TangentTangent tangent2_member(const ProblemData& data,
                               const PointGeometry& geom, const RVector& vbar,
                               const RVector& vbarStar, const RVector& u,
                               const RVector& ustar) {
  const TangentContext ctx = tangent_context(data, geom, vbar, vbarStar);
  return tangent_membership(data, vbar, ctx.lambdabar, ctx.cone, u, ustar);
}

ZeroDirectionResult zero_dir_filter(const ProblemData& data,
                                    const PointGeometry& geom,
                                    const RVector& vstar, const RVector& wstar,
                                    const RVector& w,
                                    const SigmaChoice& sigma) {
  if (!in_polar(geom.criticalCone, vstar)) {
    throw Error(ErrorCode::kNotPolarMember,
                to_string(vstar) + " is not in the polar of the critical cone");
  }
  const HCone k0 = critical_cone(geom.criticalCone, zeros(data.m), vstar);
  std::vector<RVector> catalog;
  for (const auto& l : geom.criticalLineality) catalog.push_back(l);
  for (const auto& l : geom.criticalLineality) catalog.push_back(neg(l));
  catalog.push_back(zeros(data.m));

  ZeroDirectionResult res;
  if (!k0.contains(w)) {
    res.passes = false;
    res.refutedAt = catalog.front();
    return res;
  }
  for (const auto& vbar : catalog) {
    const DirectionalData dir = directional(data, geom, vbar);
    const auto pts = sigma_for(data, geom, vbar, vstar, sigma, dir);
    // θ in the unit simplex with w* + ∇²((Σθσ)ᵀg)w ∈ k0°.
    LinearSystem sys;
    const VarBlock theta = sys.add_block(pts.size());
    std::vector<Term> total;
    for (std::size_t t = 0; t < pts.size(); ++t) {
      sys.nonnegative(theta[t]);
      total.push_back({theta[t], 1});
    }
    sys.add_equal(total, 1);
    VectorExpr expr(data.m);
    for (std::size_t t = 0; t < pts.size(); ++t)
      expr.add(theta[t], data.hess_times(pts[t], w), -1);
    internal::add_polar_element(sys, expr, k0.eqRows, k0.ineqRows);
    expr.equal(sys, wstar);
    if (!std::holds_alternative<LpOptimal>(internal::feasibility(sys))) {
      res.passes = false;
      res.refutedAt = vbar;
      return res;
    }
    if (is_zero(vbar) ||
        !check_2_nondegenerate(data, geom, vbar).nondegenerate)
      continue;
    for (const auto& lb : dir.vertices) {
      const TildeCone k = ktilde_parts(data, geom, vbar, lb, vstar);
      if (!normal_membership(data, vbar, lb, k, wstar, w)) {
        res.passes = false;
        res.refutedAt = vbar;
        return res;
      }
    }
  }
  return res;
}

SecondLevelContext second_level_context(const ProblemData& data,
                                        const PointGeometry& geom,
                                        const RVector& vbar,
                                        const RVector& vbarStar,
                                        const RVector& deltav,
                                        const RVector& deltavStar) {
  SecondLevelContext ctx;
  ctx.first = tangent_context(data, geom, vbar, vbarStar);
  const TangentTangent t = tangent_membership(
      data, vbar, ctx.first.lambdabar, ctx.first.cone, deltav, deltavStar);
  if (!t.member) {
    throw Error(ErrorCode::kNotTangent,
                "second-level pair is not tangent to the tangent cone");
  }
  // (μ̄, ζ̄*) is the unique preimage of δv̄* - ∇²(λ̄ᵀg)δv̄ under
  // (μ, ζ) ↦ ∇²(μᵀg)v̄ + ζ on (Λ̄(v̄))⁺ × (N_K̄(v̄))⁺.
  const NondegeneracyResult nd = check_2_nondegenerate(data, geom, vbar);
  std::vector<RVector> cols;
  for (const auto& mu : nd.multiplierSpan)
    cols.push_back(data.hess_times(mu, vbar));
  for (const auto& z : nd.normalSpan) cols.push_back(z);
  const RVector target =
      sub(deltavStar, data.hess_times(ctx.first.lambdabar, deltav));
  const auto coeffs = combination_coefficients(cols, target);
  RVector mu = zeros(data.q);
  if (coeffs) {
    for (std::size_t j = 0; j < nd.multiplierSpan.size(); ++j)
      axpy(mu, (*coeffs)[j], nd.multiplierSpan[j]);
  }
  if (!coeffs || mu != t.mu) {
    throw Error(ErrorCode::kAuditFailure,
                "second-level multiplier decomposition is not unique");
  }
  ctx.deltav = deltav;
  ctx.deltavStar = deltavStar;
  ctx.muBar = t.mu;
  ctx.zetaBar = t.zetaStar;
  ctx.cone = {critical_cone(ctx.first.cone.vPart, deltav, t.zetaStar),
              critical_cone(ctx.first.cone.lambdaPart, t.mu,
                            scale(data.curvature(vbar, deltav), 2))};
  return ctx;
}

TangentTangent tangent3_member(const ProblemData& data,
                               const PointGeometry& geom, const RVector& vbar,
                               const RVector& vbarStar, const RVector& deltav,
                               const RVector& deltavStar, const RVector& u,
                               const RVector& ustar) {
  const SecondLevelContext ctx =
      second_level_context(data, geom, vbar, vbarStar, deltav, deltavStar);
  return tangent_membership(data, vbar, ctx.first.lambdabar, ctx.cone, u,
                            ustar);
}

NormalMembership normal_to_tangent2_member(
    const ProblemData& data, const PointGeometry& geom, const RVector& vbar,
    const RVector& vbarStar, const RVector& deltav, const RVector& deltavStar,
    const RVector& wstar, const RVector& w) {
  const SecondLevelContext ctx =
      second_level_context(data, geom, vbar, vbarStar, deltav, deltavStar);
  NormalMembership res;
  if (auto eta = normal_membership(data, vbar, ctx.first.lambdabar, ctx.cone,
                                   wstar, w)) {
    res.kind = NormalMembership::Kind::kYes;
    res.eta = std::move(*eta);
  }
  return res;
}

PolyhedralityProbe polyhedrality_probe(const ProblemData& data,
                                       const PointGeometry& geom,
                                       const RVector& vbar,
                                       const RVector& /*vbarStar*/) {
  PolyhedralityProbe res;
  const DirectionalData base = directional(data, geom, vbar);
  if (internal::is_singleton(base.dirMultipliers)) {
    res.kind = PolyhedralityProbe::Kind::kLocallyPolyhedral;
    return res;
  }
  auto probe = [&](const RVector& d, const Rational& eps)
      -> std::optional<DirectionalData> {
    RVector v = vbar;
    axpy(v, eps, d);
    try {
      return directional(data, geom, v);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kUnboundedMultipliers) return std::nullopt;
      throw;
    }
  };
  for (const auto& d : cone_generators(geom.criticalCone)) {
    const auto coarse = probe(d, kProbeCoarse);
    const auto fine = probe(d, kProbeFine);
    if (!coarse || !fine) continue;
    if (same_polyhedron(coarse->dirMultipliers, base.dirMultipliers)) continue;
    if (same_polyhedron(fine->dirMultipliers, base.dirMultipliers)) continue;
    if (!same_polyhedron(coarse->dirMultipliers, fine->dirMultipliers))
      continue;
    res.kind = PolyhedralityProbe::Kind::kNotLocallyPolyhedral;
    res.witness = fine->v;
    return res;
  }
  return res;
}

}  // namespace mpecstat
