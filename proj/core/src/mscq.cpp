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


#include <string>

#include "mpecstat/stationarity.hpp"
#include "stationarity_internal.hpp"

namespace mpecstat {

using namespace internal;

namespace {

MscqResult inconclusive(std::string reason) {
  return {MscqResult::Kind::kInconclusive, std::move(reason), std::nullopt};
}

/// ∇ₓGᵀη = 0 with η ∈ N_{ℝᵖ₋}(G) forces ∇ᵧGᵀη = 0.
bool linear_condition(const ProblemData& d, const IndexSet& active) {
  if (d.p == 0) return true;
  HCone c{d.p, {}, {}};
  const RMatrix gx = d.jac_G_x();
  const RMatrix gy = d.jac_G_y();
  for (std::size_t k = 0; k < d.n; ++k) c.eqRows.push_back(gx.col(k));
  for (std::size_t i = 0; i < d.p; ++i) {
    if (contains(active, i)) {
      c.ineqRows.push_back(neg(unit_vector(d.p, i)));
    } else {
      c.eqRows.push_back(unit_vector(d.p, i));
    }
  }
  const VCone v = h_to_v(c);
  for (const auto* gens : {&v.lineality, &v.rays})
    for (const auto& g : *gens)
      if (!is_zero(transpose_times(gy, g))) return false;
  return true;
}

/// Nonzero x in the polyhedral cone described by sys over the block, if any.
std::optional<RVector> nonzero_point(const LinearSystem& base,
                                     const VarBlock& block) {
  for (std::size_t k = 0; k < block.size; ++k) {
    for (int s : {1, -1}) {
      LinearSystem sys = base;
      sys.add_greater_equal({{block[k], Rational(s)}}, 1);
      if (auto x = sys.solve()) return block_values(*x, block);
    }
  }
  return std::nullopt;
}

struct UV {
  RVector u, v;
};

/// Adds −∇ₓφu − ∇ᵧφv − ∇²(λᵀg)v − z = 0 with z from the given generators.
void tangent_rows(LinearSystem& sys, const ProblemData& d, const VarBlock& u,
                  const VarBlock& v, const RVector& lambda,
                  const std::vector<RVector>& freeGens,
                  const std::vector<RVector>& nonnegGens) {
  VectorExpr e(d.m);
  const RMatrix phiX = d.jac_phi_x();
  const RMatrix phiY = d.jac_phi_y();
  for (std::size_t k = 0; k < d.n; ++k) e.add(u[k], phiX.col(k), -1);
  for (std::size_t j = 0; j < d.m; ++j) {
    e.add(v[j], add(phiY.col(j), d.hess_times(lambda, unit_vector(d.m, j))),
          -1);
  }
  add_polar_element(sys, e, freeGens, nonnegGens, -1);
  e.equal(sys, zeros(d.m));
}

/// Singleton Λ̄: exact search over the faces of K̄.
std::optional<UV> uv_singleton(const ProblemData& d, const PointGeometry& geom,
                               const RVector& lambda) {
  const HCone& k = geom.criticalCone;
  for (const auto& f : faces(k)) {
    const FaceDescriptor fc = closure(k, f);
    LinearSystem sys;
    const VarBlock uv = sys.add_block(d.n + d.m);
    const VarBlock u{uv.offset, d.n};
    const VarBlock v{uv.offset + d.n, d.m};
    const HCone face = face_cone(k, fc);
    constrain_cone(sys, v, face);
    std::vector<RVector> active;
    for (std::size_t i : fc.tightSet) active.push_back(k.ineqRows[i]);
    tangent_rows(sys, d, u, v, lambda, k.eqRows, active);
    if (auto x = nonzero_point(sys, uv))
      return UV{slice(*x, 0, d.n), slice(*x, d.n, d.m)};
  }
  return std::nullopt;
}

/// General Λ̄: v from the direction catalog, λ' ∈ Λ̄(v) free.
std::optional<UV> uv_catalog(const ProblemData& d, const PointGeometry& geom,
                             const RVector& lambda) {
  for (const RVector& vv : direction_catalog(d, geom, {}, true)) {
    const DirectionalData dir = directional(d, geom, vv);
    if (!dir.dirMultipliers.contains(lambda)) continue;
    LinearSystem sys;
    const VarBlock u = sys.add_block(d.n);
    const VarBlock lp = sys.add_block(d.q);
    constrain_polyhedron(sys, lp, dir.dirMultipliers);
    VectorExpr e(d.m);
    const RMatrix phiX = d.jac_phi_x();
    for (std::size_t k = 0; k < d.n; ++k) e.add(u[k], phiX.col(k), -1);
    for (std::size_t i = 0; i < d.q; ++i)
      e.add(lp[i], d.hessG[i] * vv, -1);
    const VCone normals = normal_generators(geom.criticalCone, vv);
    add_polar_element(sys, e, normals.lineality, normals.rays, -1);
    e.equal(sys, d.jac_phi_y() * vv);
    if (is_zero(vv)) {
      if (auto x = nonzero_point(sys, u)) return UV{*x, vv};
    } else if (auto x = sys.solve()) {
      return UV{block_values(*x, u), vv};
    }
  }
  return std::nullopt;
}

}  // namespace

MscqResult mscq_sufficient_check(const ProblemData& data,
                                 const PointGeometry& geom) {
  const ProblemData& d = data;
  if (!d.lowerMscqAsserted) {
    return inconclusive("MSCQ for the lower-level constraints not asserted");
  }
  if (d.p > 0 && !d.upperMscqAsserted) {
    return inconclusive("MSCQ for the upper-level constraints not asserted");
  }
  const IndexSet active = active_upper(d);
  if (!linear_condition(d, active)) {
    return inconclusive(
        "linear condition on the upper-level Jacobians fails");
  }
  const RMatrix gy = d.jac_G_y();
  for (std::size_t i : active) {
    if (!is_zero(gy.row(i))) return inconclusive("coupled-branch");
  }
  const bool exact = active.empty();
  const RMatrix phiX = d.jac_phi_x();
  std::vector<RVector> xRows;
  if (exact) {
    for (std::size_t k = 0; k < d.n; ++k) xRows.push_back(phiX.col(k));
  } else {
    std::vector<RVector> gxRows;
    const RMatrix gx = d.jac_G_x();
    for (std::size_t i : active) gxRows.push_back(gx.row(i));
    for (const auto& c : orthogonal_complement(gxRows, d.n))
      xRows.push_back(phiX * c);
  }
  const bool singleton = is_singleton(geom.multiplierSet);

  std::string certified;
  for (const RVector& lambda : geom.extremeMultipliers) {
    std::vector<RVector> rows = xRows;
    for (std::size_t i : support(lambda)) rows.push_back(d.grad_g(i));
    RMatrix a = RMatrix::from_rows(rows, d.m);
    RMatrix q = d.jac_phi_y();
    for (std::size_t i = 0; i < d.q; ++i) {
      if (lambda[i] == 0) continue;
      for (std::size_t r = 0; r < d.m; ++r)
        for (std::size_t c = 0; c < d.m; ++c)
          q(r, c) += lambda[i] * d.hessG[i](r, c);
    }
    const PsdResult psd = psd_on_kernel(symmetrize(q), a);
    if (psd.kind == PsdResult::Kind::kPositiveDefinite) {
      certified += " " + to_string(lambda);
      continue;
    }
    if (!exact) {
      return inconclusive("relaxed branch at lambda " + to_string(lambda) +
                          " is not positive definite");
    }
    const auto uv = singleton ? uv_singleton(d, geom, lambda)
                              : uv_catalog(d, geom, lambda);
    if (uv) {
      MscqResult out{MscqResult::Kind::kViolated,
                     "witness found at lambda " + to_string(lambda),
                     MscqWitness{uv->u, uv->v, lambda, zeros(d.p),
                                 psd.witness}};
      return out;
    }
    if (!singleton) {
      return inconclusive("no (u, v) witness within the direction catalog at "
                          "lambda " +
                          to_string(lambda));
    }
    certified += " " + to_string(lambda) + "(no tangent pair)";
  }
  return {MscqResult::Kind::kSatisfied,
          "every extreme multiplier branch certified:" + certified,
          std::nullopt};
}

}  // namespace mpecstat
