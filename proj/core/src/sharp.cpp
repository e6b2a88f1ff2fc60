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
#include <map>
#include <optional>
#include <string>

#include "mpecstat/error.hpp"
#include "mpecstat/stationarity.hpp"
#include "stationarity_internal.hpp"

namespace mpecstat {

using namespace internal;

std::vector<IndexSet> internal::sets_between(const IndexSet& lo,
                                             const IndexSet& hi,
                                             bool fullFirst) {
  const IndexSet free = set_minus(hi, lo);
  std::vector<IndexSet> out;
  const std::size_t count = std::size_t{1} << free.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    IndexSet s;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (mask & (std::size_t{1} << k)) s.push_back(free[k]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [&](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size())
      return fullFirst ? a.size() > b.size() : a.size() < b.size();
    return a < b;
  });
  for (auto& s : out) s = set_union(lo, s);
  return out;
}

std::vector<RVector> internal::direction_catalog(
    const ProblemData& d, const PointGeometry& geom,
    const std::vector<RVector>& extra, bool withZero) {
  std::vector<RVector> out;
  auto push = [&](RVector v) {
    if (std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(std::move(v));
  };
  if (withZero) push(zeros(d.m));
  for (const auto& f : faces(geom.criticalCone))
    push(ri_representative(geom.criticalCone, f));
  for (const auto& v : extra) {
    require_size(v, d.m, "direction");
    if (!geom.criticalCone.contains(v)) {
      throw Error(ErrorCode::kNotCritical,
                  "direction " + to_string(v) + " is not in the critical cone");
    }
    push(v);
  }
  return out;
}

namespace {

IndexSet normalized(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void check_dims(const ProblemData& d, const SharpCertificate& c) {
  require_size(c.vbar, d.m, "vbar");
  require_size(c.lambdabar, d.q, "lambdabar");
  if (c.zbar) require_size(*c.zbar, d.m, "zbar");
  require_size(c.w, d.m, "w");
  require_size(c.eta, d.q, "eta");
  require_size(c.xi, d.q, "xi");
  require_size(c.sigma, d.p, "sigma");
  require_size(c.deltav, d.m, "deltav");
  require_size(c.sDeltav, d.m, "sDeltav");
  require_size(c.muBar, d.q, "muBar");
  require_size(c.sW, d.m, "sW");
  require_indices(c.I, d.q, "I");
  require_indices(c.Iplus, d.q, "Iplus");
  require_indices(c.J, d.q, "J");
  require_indices(c.Jplus, d.q, "Jplus");
  if (c.caseII) {
    require_size(c.caseII->deltax, d.n, "deltax");
    require_size(c.caseII->alphas, d.q, "alphas");
  }
}

std::string list_detail(const char* what, const IndexSet& s) {
  return std::string(what) + " at " + to_string(s);
}

/// Σ_{i ∈ I⁺ \ J̄⁺(Λ̄)} ∇g_i.
RVector default_zbar(const ProblemData& d, const PointGeometry& geom,
                     const IndexSet& iplus) {
  RVector z = zeros(d.m);
  for (std::size_t i : set_minus(iplus, geom.jPlusAll))
    z = add(z, d.grad_g(i));
  return z;
}

struct ZbarCheck {
  bool ok = false;
  RVector zbar;
  RVector alphas;
  std::string detail;
};

/// z̄* = Σ_{i∈I} α_i ∇g_i with α_i > 0 on I⁺ \ J̄⁺(Λ̄) and z̄* ∈ N_K̄(v̄).
ZbarCheck check_zbar(const ProblemData& d, const PointGeometry& geom,
                     const RVector& vbar, const IndexSet& I,
                     const IndexSet& iplus, const std::optional<RVector>& zbar,
                     const std::optional<RVector>& alphas) {
  ZbarCheck out;
  const IndexSet positive = set_minus(iplus, geom.jPlusAll);
  if (alphas) {
    out.alphas = *alphas;
  } else if (zbar) {
    LinearSystem sys;
    const VarBlock a = sys.add_block(d.q);
    VectorExpr e(d.m);
    for (std::size_t i = 0; i < d.q; ++i) {
      if (!contains(I, i)) sys.fix(a[i], 0);
      if (contains(positive, i)) sys.add_strict_greater({{a[i], 1}}, 0);
      e.add(a[i], d.grad_g(i));
    }
    e.equal(sys, *zbar);
    auto x = sys.solve();
    if (!x) {
      out.detail = "zbar has no representation with the required alphas";
      return out;
    }
    out.alphas = block_values(*x, a);
  } else {
    out.alphas = zeros(d.q);
    for (std::size_t i : positive) out.alphas[i] = 1;
  }
  for (std::size_t i = 0; i < d.q; ++i) {
    if (!contains(I, i) && out.alphas[i] != 0) {
      out.detail = "alpha nonzero outside I at " + std::to_string(i + 1);
      return out;
    }
    if (contains(positive, i) && out.alphas[i] <= 0) {
      out.detail = "alpha not positive at " + std::to_string(i + 1);
      return out;
    }
  }
  out.zbar = d.grad_g_times(out.alphas);
  if (zbar && *zbar != out.zbar) {
    out.detail = "zbar differs from the alpha combination";
    return out;
  }
  if (!in_normal_cone(geom.criticalCone, vbar, out.zbar)) {
    out.detail = "zbar is not normal to the critical cone at vbar";
    return out;
  }
  out.ok = true;
  out.detail = vec_detail("zbar", out.zbar) + ", " +
               vec_detail("alpha", out.alphas);
  return out;
}

/// Σ(0, z̄*): the validated user choice restricted to the vertices, or all
/// vertices of Λ̄.
std::vector<RVector> sigma_at_zero(const ProblemData& d,
                                   const PointGeometry& geom,
                                   const RVector& zbar,
                                   const SigmaChoice& sigma) {
  const std::vector<RVector>& ext = geom.extremeMultipliers;
  if (!sigma.points.empty()) {
    std::vector<RVector> pts;
    for (const auto& s : sigma.points)
      if (std::find(ext.begin(), ext.end(), s) != ext.end()) pts.push_back(s);
    if (!pts.empty() && validate_sigma(d, geom, zeros(d.m), zbar, pts))
      return pts;
  }
  return ext;
}

RVector phi_times(const ProblemData& d, const RVector& dx, const RVector& v) {
  return add(d.jac_phi_x() * dx, d.jac_phi_y() * v);
}

Rational upper_times(const ProblemData& d, std::size_t i, const RVector& dx,
                     const RVector& v) {
  return dot(d.jacGupper.row(i), concat(dx, v));
}

}  // namespace

AuditReport verify_sharp(const ProblemData& data, const PointGeometry& geom,
                         const SharpCertificate& cert,
                         const SigmaChoice& sigma) {
  if (!data.assumption1Asserted) {
    throw Error(ErrorCode::kAssumptionNotAsserted,
                "verify_sharp requires the calmness assumption flag");
  }
  check_dims(data, cert);
  const ProblemData& d = data;
  const RVector& vbar = cert.vbar;
  const RVector& lbar = cert.lambdabar;
  const IndexSet I = normalized(cert.I);
  const IndexSet Ip = normalized(cert.Iplus);
  const IndexSet J = normalized(cert.J);
  const IndexSet Jp = normalized(cert.Jplus);
  AuditReport r;

  if (!geom.criticalCone.contains(vbar)) {
    r.add("vbar", false, "vbar is not a critical direction");
    return r;
  }
  r.add("vbar", true, vec_detail("vbar", vbar));
  const DirectionalData dir = directional(d, geom, vbar);
  r.add("lambda", dir.dirMultipliers.contains(lbar),
        vec_detail("lambdabar", lbar));
  const IndexSet jl = support(lbar);

  const bool nonzero = !is_zero(vbar);
  if (nonzero) {
    const auto nd = check_2_nondegenerate(d, geom, vbar);
    r.add("nondegenerate", nd.nondegenerate ? Verdict::kPass
                                            : Verdict::kConditional,
          nd.nondegenerate ? "" : vec_detail("witness mu", nd.witness));
  }

  const bool chain = is_subset(jl, Jp) && is_subset(Jp, J) &&
                     is_subset(J, dir.jPlusDir) &&
                     is_subset(dir.jPlusDir, geom.jPlusAll) &&
                     is_subset(geom.jPlusAll, Ip) && is_subset(Ip, I) &&
                     is_subset(I, dir.activeAtV);
  r.add("chain", chain,
        "J+(lambda)=" + to_string(jl) + " J+=" + to_string(Jp) +
            " J=" + to_string(J) + " J+(Lambda(v))=" + to_string(dir.jPlusDir) +
            " J+(Lambda)=" + to_string(geom.jPlusAll) + " I+=" +
            to_string(Ip) + " I=" + to_string(I) +
            " I(v)=" + to_string(dir.activeAtV));
  r.add("sigma", sigma_ok(d, cert.sigma), vec_detail("sigma", cert.sigma));

  const RVector rx = x_residual(d, cert.w, cert.sigma);
  r.add("a", is_zero(rx), vec_detail("residual", rx));
  const RVector ry = add(y_residual(d, lbar, cert.w, cert.xi, cert.sigma),
                         scale(d.hess_times(cert.eta, vbar), 2));
  r.add("b", is_zero(ry), vec_detail("residual", ry));

  IndexSet bad;
  for (std::size_t i = 0; i < d.q; ++i)
    if (!contains(I, i) && cert.xi[i] != 0) bad.push_back(i);
  r.add("c", bad.empty(), bad.empty() ? "" : list_detail("xi nonzero", bad));

  bad.clear();
  for (std::size_t i : set_minus(I, Ip))
    if (cert.xi[i] < 0 || dot(d.grad_g(i), cert.w) > 0) bad.push_back(i);
  r.add("d", bad.empty(), bad.empty() ? "" : list_detail("sign fails", bad));

  bad.clear();
  for (std::size_t i : Ip)
    if (dot(d.grad_g(i), cert.w) != 0) bad.push_back(i);
  r.add("e", bad.empty(),
        bad.empty() ? "" : list_detail("grad g_i^T w nonzero", bad));

  {
    const RVector ge = d.grad_g_times(cert.eta);
    bool ok = is_zero(ge);
    for (std::size_t i = 0; i < d.q; ++i) {
      if (!contains(J, i) && cert.eta[i] != 0) ok = false;
      if (contains(J, i) && !contains(Jp, i) && cert.eta[i] < 0) ok = false;
    }
    r.add("f", ok, vec_detail("eta", cert.eta));
  }
  r.add("g", sigma_ok(d, cert.sigma), "");

  {
    bool ok = true;
    IndexSet zeroSet;
    for (std::size_t i : dir.activeAtV) {
      const Rational t = dot(d.grad_g(i), cert.deltav);
      if (contains(geom.jPlusAll, i) ? t != 0 : t > 0) ok = false;
      if (t == 0) zeroSet.push_back(i);
    }
    r.add("h", ok, vec_detail("deltav", cert.deltav));
    r.add("i", zeroSet == I, "tight set " + to_string(zeroSet));
  }
  {
    const RVector c = d.curvature(vbar, cert.deltav);
    bool ok = true;
    IndexSet zeroSet;
    for (std::size_t i : dir.jPlusDir) {
      const Rational t = dot(d.grad_g(i), cert.sDeltav) + c[i];
      if (contains(jl, i) ? t != 0 : t > 0) ok = false;
      if (t == 0) zeroSet.push_back(i);
    }
    r.add("j", ok, vec_detail("s_deltav", cert.sDeltav));
    r.add("k", zeroSet == J, "tight set " + to_string(zeroSet));
  }
  {
    bool ok = is_zero(d.grad_g_times(cert.muBar));
    IndexSet recovered = jl;
    for (std::size_t i = 0; i < d.q; ++i) {
      if (!contains(J, i) && cert.muBar[i] != 0) ok = false;
      if (contains(J, i) && !contains(jl, i)) {
        if (cert.muBar[i] < 0) ok = false;
        if (cert.muBar[i] > 0) recovered.push_back(i);
      }
    }
    recovered = normalized(recovered);
    r.add("l", ok, vec_detail("muBar", cert.muBar));
    r.add("m", recovered == Jp, "recovered " + to_string(recovered));
  }
  {
    const RVector c = d.curvature(vbar, cert.w);
    bool ok = true;
    for (std::size_t i : J) {
      const Rational t = dot(d.grad_g(i), cert.sW) + c[i];
      if (contains(Jp, i) ? t != 0 : t > 0) ok = false;
    }
    r.add("n", ok, vec_detail("s_w", cert.sW));
  }

  const bool full = I == dir.activeAtV && Jp == jl && J == dir.jPlusDir;
  if (full) {
    if (cert.zbar) {
      r.add("zbar", in_normal_cone(geom.criticalCone, vbar, *cert.zbar),
            vec_detail("zbar", *cert.zbar));
    }
    if (nonzero) {
      r.add("furthermore", true, "case (a): vbar is nonzero");
    } else {
      std::optional<RVector> alphas;
      if (cert.caseII) alphas = cert.caseII->alphas;
      const ZbarCheck z = check_zbar(d, geom, vbar, I, Ip, cert.zbar, alphas);
      const bool pointed = geom.criticalLineality.empty();
      bool inSigma = false;
      if (z.ok) {
        const auto pts = sigma_at_zero(d, geom, z.zbar, sigma);
        inSigma = std::find(pts.begin(), pts.end(), lbar) != pts.end();
      }
      std::string detail = "case (b): ";
      if (!pointed) detail += "critical cone has a nontrivial lineality space";
      else if (!z.ok) detail += z.detail;
      else if (!inSigma) detail += "lambdabar is not in Sigma(0, zbar)";
      else detail += z.detail;
      r.add("furthermore", pointed && z.ok && inSigma, detail);
    }
    return r;
  }

  if (!nonzero) {
    r.add("furthermore", false, "index sets not full and vbar is zero");
    return r;
  }
  if (!cert.caseII) {
    r.add("furthermore", false, "index sets not full and no case II data");
    return r;
  }
  const CaseIIData& c2 = *cert.caseII;
  const ZbarCheck z =
      check_zbar(d, geom, vbar, I, Ip, cert.zbar, c2.alphas);
  r.add("alpha", z.ok, z.detail);
  const Rational fa = dot(d.gradF, concat(c2.deltax, vbar));
  r.add("IIa", fa == 0, "grad F^T (dx, vbar) = " + to_string(fa));
  const RVector vstar = neg(phi_times(d, c2.deltax, vbar));
  const RVector rb = sub(add(d.hess_times(lbar, vbar), z.zbar), vstar);
  r.add("IIb", z.ok && is_zero(rb), vec_detail("residual", rb));
  {
    bool ok = true;
    for (std::size_t i : active_upper(d)) {
      const Rational t = upper_times(d, i, c2.deltax, vbar);
      if (t > 0 || cert.sigma[i] * t != 0) ok = false;
    }
    r.add("IIc", ok, "");
  }
  const PolyhedralityProbe pr = polyhedrality_probe(d, geom, vbar, vstar);
  switch (pr.kind) {
    case PolyhedralityProbe::Kind::kNotLocallyPolyhedral:
      r.add("furthermore", true,
            "not locally polyhedral, " + vec_detail("witness", pr.witness));
      break;
    case PolyhedralityProbe::Kind::kUnknown:
      r.add("furthermore", Verdict::kConditional,
            "local polyhedrality could not be decided");
      break;
    case PolyhedralityProbe::Kind::kLocallyPolyhedral:
      r.add("furthermore", false, "tangent cone is locally polyhedral");
      break;
  }
  return r;
}

FaceView sharp_face_view(const ProblemData& data, const PointGeometry& geom,
                         const SharpCertificate& cert) {
  check_dims(data, cert);
  const ProblemData& d = data;
  const RVector& vbar = cert.vbar;
  const DirectionalData dir = directional(d, geom, vbar);
  const IndexSet I = normalized(cert.I);
  const IndexSet Ip = normalized(cert.Iplus);
  const IndexSet J = normalized(cert.J);
  const IndexSet Jp = normalized(cert.Jplus);
  FaceView fv;
  AuditReport& r = fv.report;

  if (cert.zbar) {
    fv.zbar = *cert.zbar;
  } else if (cert.caseII) {
    fv.zbar = d.grad_g_times(cert.caseII->alphas);
  } else {
    fv.zbar = default_zbar(d, geom, Ip);
  }
  if (!in_normal_cone(geom.criticalCone, vbar, fv.zbar)) {
    r.add("zbar", false, "zbar is not normal to the critical cone at vbar");
    return fv;
  }
  fv.criticalV = critical_cone(geom.criticalCone, vbar, fv.zbar);
  // Inequality row r of the critical cone belongs to Ī(v̄)[r].
  auto rows_of = [&](const IndexSet& s) {
    IndexSet out;
    for (std::size_t k = 0; k < dir.activeAtV.size(); ++k)
      if (contains(s, dir.activeAtV[k])) out.push_back(k);
    return out;
  };

  if (!fv.criticalV.contains(cert.deltav)) {
    r.add("face-dv", false, "deltav is not in the critical cone");
    return fv;
  }
  if (!is_subset(Ip, I) || !is_subset(I, dir.activeAtV)) {
    r.add("face-nesting-v", false, "I+ and I are not nested in I(vbar)");
    return fv;
  }
  fv.f2v = face_of(fv.criticalV, cert.deltav);
  fv.f1v = closure(fv.criticalV, FaceDescriptor{rows_of(Ip)});
  const IndexSet c2 = closure(fv.criticalV, fv.f2v).tightSet;
  r.add("face-nesting-v", is_subset(fv.f1v.tightSet, c2), "");
  if (!is_subset(fv.f1v.tightSet, c2)) return fv;
  fv.diffV = face_difference(fv.criticalV, fv.f1v, fv.f2v);

  if (!dir.dirMultipliers.contains(cert.lambdabar)) {
    r.add("face-lambda", false, "lambdabar is not in Lambda(vbar)");
    return fv;
  }
  fv.tangentLambda = tangent_of_polyhedron(dir.dirMultipliers, cert.lambdabar);
  const RVector cdv = d.curvature(vbar, cert.deltav);
  const bool dOk = in_polar(fv.tangentLambda, cdv);
  r.add("face-d", dOk, vec_detail("curvature", cdv));
  if (!dOk) return fv;
  HCone f1cone = fv.tangentLambda;
  if (!is_zero(cdv)) f1cone.eqRows.push_back(cdv);
  fv.f1l = closure(fv.tangentLambda,
                   face_of(fv.tangentLambda, ri_representative(f1cone)));
  if (!fv.tangentLambda.contains(cert.muBar)) {
    r.add("face-mu", false, "muBar is not in the tangent cone of Lambda(vbar)");
    return fv;
  }
  fv.f2l = face_of(fv.tangentLambda, cert.muBar);
  const IndexSet l2 = closure(fv.tangentLambda, fv.f2l).tightSet;
  r.add("face-nesting-l", is_subset(fv.f1l.tightSet, l2), "");
  if (!is_subset(fv.f1l.tightSet, l2)) return fv;
  fv.diffL = face_difference(fv.tangentLambda, fv.f1l, fv.f2l);

  r.add("face-w", fv.diffV.contains(cert.w), vec_detail("w", cert.w));
  r.add("face-eta", fv.diffL.contains(cert.eta), vec_detail("eta", cert.eta));
  const RVector rb =
      add(y_residual(d, cert.lambdabar, cert.w, zeros(d.q), cert.sigma),
          scale(d.hess_times(cert.eta, vbar), 2));
  r.add("face-b", in_polar(fv.diffV, neg(rb)), vec_detail("residual", rb));
  const RVector cw = d.curvature(vbar, cert.w);
  r.add("face-c", in_polar(fv.diffL, cw), vec_detail("curvature", cw));

  HCone indexV{d.m, {}, {}};
  for (std::size_t i : Ip) indexV.eqRows.push_back(d.grad_g(i));
  for (std::size_t i : set_minus(I, Ip)) indexV.ineqRows.push_back(d.grad_g(i));
  HCone indexL{d.q, {}, {}};
  for (std::size_t j = 0; j < d.m; ++j) indexL.eqRows.push_back(d.jacG.col(j));
  for (std::size_t i = 0; i < d.q; ++i) {
    if (!contains(J, i)) indexL.eqRows.push_back(unit_vector(d.q, i));
    else if (!contains(Jp, i))
      indexL.ineqRows.push_back(neg(unit_vector(d.q, i)));
  }
  r.add("index-v", same_cone(fv.diffV, indexV), "");
  r.add("index-l", same_cone(fv.diffL, indexL), "");
  return fv;
}

namespace {

std::optional<std::pair<RVector, RVector>> solve_deltav(
    const ProblemData& d, const RVector& vbar, const DirectionalData& dir,
    const IndexSet& I, const IndexSet& J) {
  LinearSystem sys;
  const VarBlock dv = sys.add_block(d.m);
  const VarBlock s = sys.add_block(d.m);
  for (std::size_t i : dir.activeAtV) {
    if (contains(I, i)) {
      sys.add_equal(block_terms(dv, d.grad_g(i)), 0);
    } else {
      sys.add_strict_less(block_terms(dv, d.grad_g(i)), 0);
    }
  }
  for (std::size_t i : dir.jPlusDir) {
    auto t = join(block_terms(s, d.grad_g(i)),
                  block_terms(dv, d.hessG[i] * vbar));
    if (contains(J, i)) {
      sys.add_equal(t, 0);
    } else {
      sys.add_strict_less(t, 0);
    }
  }
  auto x = sys.solve();
  if (!x) return std::nullopt;
  return std::make_pair(block_values(*x, dv), block_values(*x, s));
}

/// μ̄ with J⁺ = J̄⁺(λ̄) ∪ {μ̄_i > 0}; entries outside J⁺ vanish.
std::optional<RVector> solve_mu(const ProblemData& d, const IndexSet& jl,
                                const IndexSet& Jp) {
  LinearSystem sys;
  const VarBlock mu = sys.add_block(d.q);
  VectorExpr e(d.m);
  e.add(mu, [&] {
    std::vector<RVector> g;
    for (std::size_t i = 0; i < d.q; ++i) g.push_back(d.grad_g(i));
    return g;
  }());
  e.equal(sys, zeros(d.m));
  for (std::size_t i = 0; i < d.q; ++i) {
    if (contains(jl, i)) continue;
    if (contains(Jp, i)) {
      sys.add_strict_greater({{mu[i], 1}}, 0);
    } else {
      sys.fix(mu[i], 0);
    }
  }
  auto x = sys.solve();
  if (!x) return std::nullopt;
  return block_values(*x, mu);
}

struct MainBlock {
  RVector w, xi, sigma, eta, sw;
};

/// Unknowns (w, ξ, σ, η, s_w). With zeroSigma, σ_i = 0 for those indices.
std::optional<MainBlock> solve_main(const ProblemData& d, const RVector& vbar,
                                    const RVector& lbar, const IndexSet& I,
                                    const IndexSet& Ip, const IndexSet& J,
                                    const IndexSet& Jp,
                                    const IndexSet& zeroSigma) {
  LinearSystem sys;
  StationaritySystem st = begin_stationarity(sys, d, lbar);
  const VarBlock eta = sys.add_block(d.q);
  const VarBlock sw = sys.add_block(d.m);
  for (std::size_t i = 0; i < d.q; ++i)
    st.yExpr.add(eta[i], scale(d.hessG[i] * vbar, 2));
  finish_stationarity(sys, d, st);
  for (std::size_t i : zeroSigma) sys.fix(st.sigma[i], 0);

  VectorExpr ge(d.m);
  for (std::size_t i = 0; i < d.q; ++i) {
    const RVector gi = d.grad_g(i);
    ge.add(eta[i], gi);
    if (!contains(I, i)) {
      sys.fix(st.xi[i], 0);
    } else if (contains(Ip, i)) {
      sys.add_equal(block_terms(st.w, gi), 0);
    } else {
      sys.nonnegative(st.xi[i]);
      sys.add_less_equal(block_terms(st.w, gi), 0);
    }
    if (!contains(J, i)) {
      sys.fix(eta[i], 0);
      continue;
    }
    if (!contains(Jp, i)) sys.nonnegative(eta[i]);
    auto t = join(block_terms(sw, gi), block_terms(st.w, d.hessG[i] * vbar));
    if (contains(Jp, i)) {
      sys.add_equal(t, 0);
    } else {
      sys.add_less_equal(t, 0);
    }
  }
  ge.equal(sys, zeros(d.m));
  auto x = sys.solve();
  if (!x) return std::nullopt;
  return MainBlock{block_values(*x, st.w), block_values(*x, st.xi),
                   block_values(*x, st.sigma), block_values(*x, eta),
                   block_values(*x, sw)};
}

/// Unknowns (δx, α) of the case II conditions; ∇G_i(δx, v̄) = 0 on tightG.
std::optional<CaseIIData> solve_case_two(const ProblemData& d,
                                         const PointGeometry& geom,
                                         const RVector& vbar,
                                         const RVector& lbar,
                                         const IndexSet& I, const IndexSet& Ip,
                                         const IndexSet& tightG) {
  LinearSystem sys;
  const VarBlock dx = sys.add_block(d.n);
  const VarBlock alpha = sys.add_block(d.q);
  const IndexSet positive = set_minus(Ip, geom.jPlusAll);
  VectorExpr z(d.m);
  VectorExpr phi(d.m);
  const RMatrix phiX = d.jac_phi_x();
  for (std::size_t k = 0; k < d.n; ++k) phi.add(dx[k], phiX.col(k));
  for (std::size_t i = 0; i < d.q; ++i) {
    if (!contains(I, i)) sys.fix(alpha[i], 0);
    if (contains(positive, i)) sys.add_strict_greater({{alpha[i], 1}}, 0);
    z.add(alpha[i], d.grad_g(i));
    phi.add(alpha[i], d.grad_g(i));
  }
  const VCone normals = normal_generators(geom.criticalCone, vbar);
  add_polar_element(sys, z, normals.lineality, normals.rays, -1);
  z.equal(sys, zeros(d.m));
  phi.equal(sys, neg(add(d.jac_phi_y() * vbar, d.hess_times(lbar, vbar))));

  sys.add_equal(block_terms(dx, slice(d.gradF, 0, d.n)),
                -dot(slice(d.gradF, d.n, d.m), vbar));
  for (std::size_t i : active_upper(d)) {
    const RVector row = d.jacGupper.row(i);
    const Rational rhs = -dot(slice(row, d.n, d.m), vbar);
    auto t = block_terms(dx, slice(row, 0, d.n));
    if (contains(tightG, i)) {
      sys.add_equal(t, rhs);
    } else {
      sys.add_less_equal(t, rhs);
    }
  }
  auto x = sys.solve();
  if (!x) return std::nullopt;
  return CaseIIData{block_values(*x, dx), block_values(*x, alpha)};
}

std::vector<RVector> lambda_candidates(const DirectionalData& dir) {
  std::vector<RVector> out = dir.vertices;
  if (out.size() > 1) {
    RVector b = zeros(out.front().size());
    for (const auto& v : out) b = add(b, v);
    out.push_back(scale(b, Rational(1, out.size())));
  }
  return out;
}

struct Chain {
  IndexSet I, Ip, J, Jp;
  bool full = false;
};

std::vector<Chain> chains(const PointGeometry& geom, const DirectionalData& dir,
                          const IndexSet& jl) {
  std::vector<Chain> out;
  if (!is_subset(geom.jPlusAll, dir.activeAtV) || !is_subset(jl, dir.jPlusDir))
    return out;
  for (const auto& J : sets_between(jl, dir.jPlusDir, true))
    for (const auto& Jp : sets_between(jl, J, false))
      for (const auto& I : sets_between(geom.jPlusAll, dir.activeAtV, true))
        for (const auto& Ip : sets_between(geom.jPlusAll, I, false)) {
          const bool full = I == dir.activeAtV && Jp == jl && J == dir.jPlusDir;
          out.push_back({I, Ip, J, Jp, full});
        }
  std::stable_partition(out.begin(), out.end(),
                        [](const Chain& c) { return c.full; });
  return out;
}

}  // namespace

SharpSearchResult search_sharp(const ProblemData& data,
                               const PointGeometry& geom,
                               const std::vector<RVector>& extraDirections,
                               const SigmaChoice& sigma) {
  if (!data.assumption1Asserted) {
    throw Error(ErrorCode::kAssumptionNotAsserted,
                "search_sharp requires the calmness assumption flag");
  }
  const ProblemData& d = data;
  const auto catalog = direction_catalog(d, geom, extraDirections, true);
  SharpSearchResult result;
  result.catalog = std::to_string(catalog.size()) +
                   " directions (zero, face representatives of the critical "
                   "cone, " +
                   std::to_string(extraDirections.size()) +
                   " extra); multipliers: vertices and barycenter of "
                   "Lambda(vbar); all nested index chains";
  std::optional<SharpSearchResult> fallback;
  const IndexSet activeG = active_upper(d);
  const auto sigmaSubsets = sets_between({}, activeG, false);

  for (const RVector& vbar : catalog) {
    const DirectionalData dir = directional(d, geom, vbar);
    const bool nonzero = !is_zero(vbar);
    std::optional<PolyhedralityProbe::Kind> probe;
    std::map<std::pair<IndexSet, IndexSet>,
             std::optional<std::pair<RVector, RVector>>>
        dvCache;

    for (const RVector& lbar : lambda_candidates(dir)) {
      const IndexSet jl = support(lbar);
      for (const Chain& ch : chains(geom, dir, jl)) {
        ++result.combinationsTried;
        if (ch.full && !nonzero) {
          if (!geom.criticalLineality.empty()) continue;
          const RVector z = default_zbar(d, geom, ch.Ip);
          const auto pts = sigma_at_zero(d, geom, z, sigma);
          if (std::find(pts.begin(), pts.end(), lbar) == pts.end()) continue;
        }
        if (!ch.full) {
          if (!nonzero) continue;
          if (!probe) {
            probe = polyhedrality_probe(d, geom, vbar, zeros(d.m)).kind;
          }
          if (*probe == PolyhedralityProbe::Kind::kLocallyPolyhedral) continue;
        }
        auto key = std::make_pair(ch.I, ch.J);
        auto it = dvCache.find(key);
        if (it == dvCache.end())
          it = dvCache.emplace(key, solve_deltav(d, vbar, dir, ch.I, ch.J)).first;
        if (!it->second) continue;
        const auto mu = solve_mu(d, jl, ch.Jp);
        if (!mu) continue;

        SharpCertificate cert;
        cert.vbar = vbar;
        cert.lambdabar = lbar;
        cert.I = ch.I;
        cert.Iplus = ch.Ip;
        cert.J = ch.J;
        cert.Jplus = ch.Jp;
        cert.deltav = it->second->first;
        cert.sDeltav = it->second->second;
        cert.muBar = *mu;

        std::vector<SharpCertificate> found;
        if (ch.full) {
          auto mb = solve_main(d, vbar, lbar, ch.I, ch.Ip, ch.J, ch.Jp, {});
          if (!mb) continue;
          cert.zbar = default_zbar(d, geom, ch.Ip);
          cert.w = mb->w;
          cert.xi = mb->xi;
          cert.sigma = mb->sigma;
          cert.eta = mb->eta;
          cert.sW = mb->sw;
          found.push_back(cert);
        } else {
          for (const IndexSet& tight : sigmaSubsets) {
            auto mb = solve_main(d, vbar, lbar, ch.I, ch.Ip, ch.J, ch.Jp,
                                 set_minus(activeG, tight));
            if (!mb) continue;
            auto c2 = solve_case_two(d, geom, vbar, lbar, ch.I, ch.Ip, tight);
            if (!c2) continue;
            cert.zbar = d.grad_g_times(c2->alphas);
            cert.w = mb->w;
            cert.xi = mb->xi;
            cert.sigma = mb->sigma;
            cert.eta = mb->eta;
            cert.sW = mb->sw;
            cert.caseII = *c2;
            found.push_back(cert);
            break;
          }
        }
        for (const auto& c : found) {
          const Verdict v = verify_sharp(d, geom, c, sigma).overall();
          if (v == Verdict::kPass) {
            result.found = true;
            result.cert = c;
            result.verdict = v;
            return result;
          }
          if (v == Verdict::kConditional && !fallback) {
            fallback = result;
            fallback->found = true;
            fallback->cert = c;
            fallback->verdict = v;
          }
        }
      }
    }
  }
  if (fallback) {
    fallback->combinationsTried = result.combinationsTried;
    return *fallback;
  }
  return result;
}

}  // namespace mpecstat
