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


#include "mpecstat/mpec_geom.hpp"

#include <utility>

#include "geom_internal.hpp"
#include "mpecstat/error.hpp"
#include "mpecstat/linear_system.hpp"

namespace mpecstat {

using internal::VectorExpr;

namespace internal {

bool is_singleton(const HPolyhedron& p) {
  for (std::size_t i = 0; i < p.dim; ++i) {
    const RVector e = unit_vector(p.dim, i);
    const LpOutcome max = lp_solve(e, p, Sense::kMaximize);
    const LpOutcome min = lp_solve(e, p, Sense::kMinimize);
    const auto* hi = feasible(max);
    const auto* lo = feasible(min);
    if (!hi || !lo || hi->value != lo->value) return false;
  }
  return true;
}

}  // namespace internal

namespace {

void expect(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kShapeError, what);
}

void expect_shape(const RMatrix& a, std::size_t rows, std::size_t cols,
                  const char* what) {
  expect(a.rows() == rows && a.cols() == cols, what);
}

// Λ̄ ∩ {λ : c·λ = max} together with the optimum; c = 0 leaves Λ̄ as is.
std::pair<HPolyhedron, Rational> argmax_face(const HPolyhedron& lambda,
                                             const RVector& c) {
  auto out = lp_solve(c, lambda, Sense::kMaximize);
  if (std::holds_alternative<LpUnbounded>(out)) {
    throw Error(ErrorCode::kUnboundedMultipliers,
                "curvature functional unbounded on the multiplier set");
  }
  const auto* opt = internal::feasible(out);
  if (!opt) throw Error(ErrorCode::kEmptyMultiplierSet, "empty multiplier set");
  if (is_zero(c)) return {lambda, Rational(0)};
  return {with_equality(lambda, c, opt->value), opt->value};
}

// Indices i in candidates with λ_i > 0 somewhere on p.
IndexSet positive_support(const HPolyhedron& p, const IndexSet& candidates) {
  IndexSet out;
  for (std::size_t i : candidates) {
    auto r = lp_solve(unit_vector(p.dim, i), p, Sense::kMaximize);
    if (std::holds_alternative<LpUnbounded>(r)) {
      out.push_back(i);
    } else if (const auto* opt = internal::feasible(r); opt && opt->value > 0) {
      out.push_back(i);
    }
  }
  return out;
}

// λ ∈ Λ̄(v), ν free on eq rows and ρ >= 0 on tight rows of K̄ at v with
// ∇²(λᵀg)v + Σν b + Σρ a = v*. Returns the system and the λ block.
std::pair<LinearSystem, VarBlock> tangent_system(const ProblemData& data,
                                                 const PointGeometry& geom,
                                                 const DirectionalData& dir,
                                                 const RVector& vstar) {
  LinearSystem sys;
  const VarBlock lam = sys.add_block(data.q);
  internal::constrain_polyhedron(sys, lam, dir.dirMultipliers);
  VectorExpr expr(data.m);
  for (std::size_t i = 0; i < data.q; ++i)
    expr.add(lam[i], data.hessG[i] * dir.v);
  const VCone normal = normal_generators(geom.criticalCone, dir.v);
  internal::add_polar_element(sys, expr, normal.lineality, normal.rays);
  expr.equal(sys, vstar);
  return {std::move(sys), lam};
}

}  // namespace

void ProblemData::validate() const {
  expect(gradF.size() == n + m, "grad_F length must be n+m");
  expect(phiVal.size() == m, "phi length must be m");
  expect_shape(jacPhi, m, n + m, "jac_phi must be m x (n+m)");
  expect(gVal.size() == q, "g length must be q");
  expect_shape(jacG, q, m, "jac_g must be q x m");
  expect(hessG.size() == q, "hess_g must hold q matrices");
  for (const auto& h : hessG) {
    expect_shape(h, m, m, "hess_g entries must be m x m");
    expect(is_symmetric(h), "hess_g entries must be symmetric");
  }
  expect(GVal.size() == p, "G length must be p");
  expect_shape(jacGupper, p, n + m, "jac_G must be p x (n+m)");
  for (const auto& x : gVal)
    if (x > 0) throw Error(ErrorCode::kInfeasiblePoint, "g(y) > 0");
  for (const auto& x : GVal)
    if (x > 0) throw Error(ErrorCode::kInfeasiblePoint, "G(x,y) > 0");
}

RVector ProblemData::hess_times(const RVector& lambda,
                                const RVector& v) const {
  RVector out = zeros(m);
  for (std::size_t i = 0; i < q; ++i)
    if (lambda[i] != 0) axpy(out, lambda[i], hessG[i] * v);
  return out;
}

RVector ProblemData::curvature(const RVector& a, const RVector& b) const {
  RVector out(q);
  for (std::size_t i = 0; i < q; ++i) out[i] = dot(a, hessG[i] * b);
  return out;
}

RVector ProblemData::grad_g_times(const RVector& lambda) const {
  return transpose_times(jacG, lambda);
}

PointGeometry analyze_point(const ProblemData& data) {
  data.validate();
  PointGeometry geom;
  for (std::size_t i = 0; i < data.q; ++i)
    if (data.gVal[i] == 0) geom.activeLower.push_back(i);

  const RVector ystar = data.ystar();
  geom.criticalCone.dim = data.m;
  if (!is_zero(ystar)) geom.criticalCone.eqRows.push_back(ystar);
  for (std::size_t i : geom.activeLower)
    geom.criticalCone.ineqRows.push_back(data.grad_g(i));

  HPolyhedron& lam = geom.multiplierSet;
  lam.dim = data.q;
  for (std::size_t j = 0; j < data.m; ++j)
    lam.eq.push_back({data.jacG.col(j), ystar[j]});
  for (std::size_t i = 0; i < data.q; ++i)
    if (!contains(geom.activeLower, i))
      lam.eq.push_back({unit_vector(data.q, i), Rational(0)});
  for (std::size_t i = 0; i < data.q; ++i)
    lam.ineq.push_back({neg(unit_vector(data.q, i)), Rational(0)});

  if (!find_feasible_point(lam)) {
    throw Error(ErrorCode::kEmptyMultiplierSet,
                "no lower-level multiplier at the point");
  }
  geom.extremeMultipliers = vertices(lam);
  geom.jPlusAll = positive_support(lam, geom.activeLower);
  geom.criticalLineality = lineality(geom.criticalCone);
  return geom;
}

DirectionalData directional(const ProblemData& data, const PointGeometry& geom,
                            const RVector& v) {
  if (v.size() != data.m) {
    throw Error(ErrorCode::kDimensionMismatch, "direction length must be m");
  }
  if (!geom.criticalCone.contains(v)) {
    throw Error(ErrorCode::kNotCritical, "direction " + to_string(v) +
                                             " is not in the critical cone");
  }
  DirectionalData d;
  d.v = v;
  for (std::size_t i : geom.activeLower)
    if (dot(data.grad_g(i), v) == 0) d.activeAtV.push_back(i);
  d.quadObjective = data.curvature(v, v);
  auto [face, value] = argmax_face(geom.multiplierSet, d.quadObjective);
  d.dirMultipliers = std::move(face);
  d.maxValue = value;
  d.jPlusDir = positive_support(d.dirMultipliers, geom.activeLower);
  d.vertices = vertices(d.dirMultipliers);
  return d;
}

NondegeneracyResult check_2_nondegenerate(const ProblemData& data,
                                          const PointGeometry& geom,
                                          const RVector& v) {
  const DirectionalData dir = directional(data, geom, v);
  NondegeneracyResult res;

  // (Λ̄(v))⁺ = {μ : ∇gᵀμ = 0, quad·μ = 0, μ_i = 0 off J̄⁺(Λ̄(v))}.
  std::vector<RVector> rows;
  for (std::size_t j = 0; j < data.m; ++j) rows.push_back(data.jacG.col(j));
  rows.push_back(dir.quadObjective);
  for (std::size_t i = 0; i < data.q; ++i)
    if (!contains(dir.jPlusDir, i)) rows.push_back(unit_vector(data.q, i));
  res.multiplierSpan = kernel_basis(RMatrix::from_rows(rows, data.q));

  const VCone normal = normal_generators(geom.criticalCone, v);
  std::vector<RVector> gens = normal.lineality;
  gens.insert(gens.end(), normal.rays.begin(), normal.rays.end());
  res.normalSpan = span_basis(gens, data.m);

  std::vector<RVector> gradRows;
  for (std::size_t i : dir.jPlusDir) gradRows.push_back(data.grad_g(i));
  res.jHat = dir.jPlusDir;
  for (std::size_t i : dir.activeAtV) {
    if (contains(res.jHat, i)) continue;
    std::vector<RVector> trial = gradRows;
    trial.push_back(data.grad_g(i));
    if (rank(trial, data.m) > rank(gradRows, data.m)) {
      gradRows = std::move(trial);
      res.jHat = set_union(res.jHat, IndexSet{i});
    }
  }

  if (res.multiplierSpan.empty()) return res;
  std::vector<RVector> cols;
  for (const auto& mu : res.multiplierSpan)
    cols.push_back(data.hess_times(mu, v));
  for (const auto& nk : res.normalSpan) cols.push_back(neg(nk));
  const std::size_t k = res.multiplierSpan.size();
  for (const auto& x : kernel_basis(RMatrix::from_columns(cols, data.m))) {
    const RVector a = slice(x, 0, k);
    if (is_zero(a)) continue;
    RVector mu = zeros(data.q);
    for (std::size_t j = 0; j < k; ++j) axpy(mu, a[j], res.multiplierSpan[j]);
    res.nondegenerate = false;
    res.witness = primitive_signed(mu);
    break;
  }
  return res;
}

bool check_2_regular(const ProblemData& data, const IndexSet& j,
                     const RVector& v) {
  if (j.empty()) return true;
  const std::size_t k = j.size();
  // Unknowns (η_J, μ_J); rows Σ η_i∇g_i + μ_i∇²g_i v and Σ μ_i∇g_i.
  std::vector<RVector> cols(2 * k, zeros(2 * data.m));
  for (std::size_t t = 0; t < k; ++t) {
    const RVector grad = data.grad_g(j[t]);
    const RVector hv = data.hessG[j[t]] * v;
    for (std::size_t r = 0; r < data.m; ++r) {
      cols[t][r] = grad[r];
      cols[k + t][r] = hv[r];
      cols[k + t][data.m + r] = grad[r];
    }
  }
  for (const auto& x :
       kernel_basis(RMatrix::from_columns(cols, 2 * data.m)))
    if (!is_zero(slice(x, k, k))) return false;
  return true;
}

TangentMembership tangent_gph_member(const ProblemData& data,
                                     const PointGeometry& geom,
                                     const RVector& v, const RVector& vstar) {
  TangentMembership res;
  if (v.size() != data.m || vstar.size() != data.m) {
    throw Error(ErrorCode::kDimensionMismatch, "tangent pair length must be m");
  }
  if (!geom.criticalCone.contains(v)) return res;
  DirectionalData dir;
  try {
    dir = directional(data, geom, v);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnboundedMultipliers) return res;
    throw;
  }
  auto [sys, lam] = tangent_system(data, geom, dir, vstar);
  const LpOutcome out = internal::feasibility(sys);
  if (const auto* opt = internal::feasible(out)) {
    res.member = true;
    res.lambda = block_values(opt->point, lam);
    res.zstar = sub(vstar, data.hess_times(res.lambda, v));
  } else if (const auto* inf = std::get_if<LpInfeasible>(&out)) {
    res.farkas = inf->farkas;
  }
  return res;
}

Decomposition decompose_tangent_pair(const ProblemData& data,
                                     const PointGeometry& geom,
                                     const RVector& v, const RVector& vstar) {
  if (!check_2_nondegenerate(data, geom, v).nondegenerate) {
    throw Error(ErrorCode::kNotNondegenerate,
                "g is not 2-nondegenerate in direction " + to_string(v));
  }
  const TangentMembership t = tangent_gph_member(data, geom, v, vstar);
  if (!t.member) {
    throw Error(ErrorCode::kNotTangent,
                "(" + to_string(v) + ", " + to_string(vstar) +
                    ") is not a tangent pair");
  }
  const DirectionalData dir = directional(data, geom, v);
  auto [sys, lam] = tangent_system(data, geom, dir, vstar);
  for (std::size_t i = 0; i < data.q; ++i) {
    RVector c = zeros(sys.num_vars());
    c[lam[i]] = 1;
    const auto hi = sys.optimize(c, Sense::kMaximize);
    const auto lo = sys.optimize(c, Sense::kMinimize);
    const auto* a = internal::feasible(hi);
    const auto* b = internal::feasible(lo);
    if (!a || !b || a->value != t.lambda[i] || b->value != t.lambda[i]) {
      throw Error(ErrorCode::kAuditFailure,
                  "multiplier decomposition is not unique");
    }
  }
  return {t.lambda, t.zstar};
}

TildeCone ktilde_parts(const ProblemData& data, const PointGeometry& geom,
                       const RVector& v, const RVector& lambdabar,
                       const RVector& zbar) {
  return {critical_cone(geom.criticalCone, v, zbar),
          critical_cone(geom.multiplierSet, lambdabar, data.curvature(v, v))};
}

HCone ktilde(const ProblemData& data, const PointGeometry& geom,
             const RVector& v, const RVector& lambdabar, const RVector& zbar) {
  return ktilde_parts(data, geom, v, lambdabar, zbar).joined();
}

TangentContext tangent_context(const ProblemData& data,
                               const PointGeometry& geom, const RVector& vbar,
                               const RVector& vbarStar) {
  const Decomposition d = decompose_tangent_pair(data, geom, vbar, vbarStar);
  return {vbar, vbarStar, d.lambdabar, d.zbar,
          ktilde_parts(data, geom, vbar, d.lambdabar, d.zbar)};
}

}  // namespace mpecstat
