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
#include <string>

#include "mpecstat/error.hpp"
#include "mpecstat/stationarity.hpp"
#include "stationarity_internal.hpp"

namespace mpecstat {

using namespace internal;

namespace {

std::optional<CorollaryCertificate> solve_corollary(const ProblemData& d,
                                                    const RVector& vbar,
                                                    const RVector& lbar,
                                                    const IndexSet& active,
                                                    const IndexSet& iplus) {
  LinearSystem sys;
  StationaritySystem st = begin_stationarity(sys, d, lbar);
  finish_stationarity(sys, d, st);
  for (std::size_t i = 0; i < d.q; ++i) {
    const RVector gi = d.grad_g(i);
    if (!contains(active, i)) {
      sys.fix(st.xi[i], 0);
    } else if (contains(iplus, i)) {
      sys.add_equal(block_terms(st.w, gi), 0);
    } else {
      sys.nonnegative(st.xi[i]);
      sys.add_less_equal(block_terms(st.w, gi), 0);
    }
  }
  auto x = sys.solve();
  if (!x) return std::nullopt;
  return CorollaryCertificate{vbar,
                              lbar,
                              iplus,
                              block_values(*x, st.w),
                              block_values(*x, st.xi),
                              block_values(*x, st.sigma)};
}

}  // namespace

CorollaryResult corollary_unique_check(
    const ProblemData& data, const PointGeometry& geom,
    const std::vector<RVector>& extraDirections) {
  CorollaryResult out;
  if (!is_singleton(geom.multiplierSet)) return out;
  const RVector lbar = geom.extremeMultipliers.front();
  const IndexSet jl = support(lbar);
  out.kind = CorollaryResult::Kind::kNone;
  for (const RVector& vbar :
       direction_catalog(data, geom, extraDirections, false)) {
    const IndexSet active = directional(data, geom, vbar).activeAtV;
    if (!is_subset(jl, active)) continue;
    for (const IndexSet& iplus : sets_between(jl, active, false)) {
      if (auto c = solve_corollary(data, vbar, lbar, active, iplus)) {
        out.kind = CorollaryResult::Kind::kFound;
        out.cert = std::move(*c);
        return out;
      }
    }
  }
  return out;
}

AuditReport verify_corollary(const ProblemData& data,
                             const PointGeometry& geom,
                             const CorollaryCertificate& cert) {
  const ProblemData& d = data;
  require_size(cert.vbar, d.m, "vbar");
  require_size(cert.lambdabar, d.q, "lambdabar");
  require_size(cert.w, d.m, "w");
  require_size(cert.xi, d.q, "xi");
  require_size(cert.sigma, d.p, "sigma");
  require_indices(cert.Iplus, d.q, "Iplus");
  AuditReport r;
  const bool single = is_singleton(geom.multiplierSet);
  r.add("singleton", single && geom.multiplierSet.contains(cert.lambdabar),
        vec_detail("lambdabar", cert.lambdabar));
  if (!geom.criticalCone.contains(cert.vbar)) {
    r.add("vbar", false, "vbar is not a critical direction");
    return r;
  }
  r.add("vbar", true, vec_detail("vbar", cert.vbar));
  const IndexSet active = directional(d, geom, cert.vbar).activeAtV;
  IndexSet ip = cert.Iplus;
  std::sort(ip.begin(), ip.end());
  ip.erase(std::unique(ip.begin(), ip.end()), ip.end());
  r.add("chain",
        is_subset(support(cert.lambdabar), ip) && is_subset(ip, active),
        "I+=" + to_string(ip) + " I(v)=" + to_string(active));

  const RVector rx = x_residual(d, cert.w, cert.sigma);
  r.add("a", is_zero(rx), vec_detail("residual", rx));
  const RVector ry =
      y_residual(d, cert.lambdabar, cert.w, cert.xi, cert.sigma);
  r.add("b", is_zero(ry), vec_detail("residual", ry));
  bool c = true, dd = true, e = true;
  for (std::size_t i = 0; i < d.q; ++i) {
    const Rational gw = dot(d.grad_g(i), cert.w);
    if (!contains(active, i)) {
      if (cert.xi[i] != 0) c = false;
    } else if (contains(ip, i)) {
      if (gw != 0) e = false;
    } else if (cert.xi[i] < 0 || gw > 0) {
      dd = false;
    }
  }
  r.add("c", c, "");
  r.add("d", dd, "");
  r.add("e", e, "");
  r.add("g", sigma_ok(d, cert.sigma), vec_detail("sigma", cert.sigma));
  return r;
}

SharpCertificate corollary_to_sharp(const ProblemData& data,
                                    const PointGeometry& geom,
                                    const CorollaryCertificate& cert) {
  const ProblemData& d = data;
  SharpCertificate s;
  s.vbar = cert.vbar;
  if (is_zero(s.vbar) && !geom.criticalLineality.empty())
    s.vbar = geom.criticalLineality.front();
  s.lambdabar = cert.lambdabar;
  const IndexSet jl = support(cert.lambdabar);
  s.I = directional(d, geom, s.vbar).activeAtV;
  s.Iplus = cert.Iplus;
  s.J = jl;
  s.Jplus = jl;
  s.w = cert.w;
  s.eta = zeros(d.q);
  s.xi = cert.xi;
  s.sigma = cert.sigma;
  s.deltav = zeros(d.m);
  s.sDeltav = zeros(d.m);
  s.muBar = zeros(d.q);
  s.sW = zeros(d.m);
  if (!jl.empty()) {
    RMatrix a(jl.size(), d.m);
    RVector b(jl.size());
    const RVector c = d.curvature(s.vbar, cert.w);
    for (std::size_t k = 0; k < jl.size(); ++k) {
      for (std::size_t j = 0; j < d.m; ++j) a(k, j) = d.jacG(jl[k], j);
      b[k] = -c[jl[k]];
    }
    auto sol = solve_affine(a, b);
    if (!sol) {
      throw Error(ErrorCode::kAuditFailure,
                  "no s_w for the corollary certificate");
    }
    s.sW = sol->particular;
  }
  return s;
}

namespace {

AuditReport implication_report(const ProblemData& d,
                               const AuditReport& premise,
                               const RVector& lbar, const RVector& w,
                               const RVector& xi, const RVector& sigma) {
  MStatCertificate m{lbar, w, xi, sigma, canonical_branches(d, lbar, w, xi)};
  const AuditReport ms = verify_mstat(d, m);
  AuditReport r;
  r.add("premise", premise.overall(), "input certificate verified");
  for (const auto& c : ms.conditions) {
    std::string detail = c.detail;
    if (c.id == "c") {
      detail = "xi_i = 0 if g_i < 0, since xi vanishes outside I(vbar)";
    } else if (c.id == "d") {
      detail = "grad g_i^T w = 0 if lambda_i > 0, since J+(lambda) is in I+";
    } else if (c.id == "f") {
      detail =
          "biactive i: I\\I+ gives xi_i >= 0 and grad g_i^T w <= 0, I+ gives "
          "grad g_i^T w = 0, otherwise xi_i = 0";
    }
    r.add("mstat-" + c.id, c.verdict, detail);
  }
  return r;
}

void require_singleton(const PointGeometry& geom) {
  if (!is_singleton(geom.multiplierSet)) {
    throw Error(ErrorCode::kNotApplicable,
                "the multiplier set is not a singleton");
  }
}

}  // namespace

AuditReport sharp_vs_mstat_audit(const ProblemData& data,
                                 const PointGeometry& geom,
                                 const SharpCertificate& cert) {
  require_singleton(geom);
  const AuditReport pre = verify_sharp(data, geom, cert);
  if (pre.overall() == Verdict::kFail) {
    throw Error(ErrorCode::kNotApplicable,
                "the sharp certificate does not pass verification");
  }
  return implication_report(data, pre, cert.lambdabar, cert.w, cert.xi,
                            cert.sigma);
}

AuditReport sharp_vs_mstat_audit(const ProblemData& data,
                                 const PointGeometry& geom,
                                 const CorollaryCertificate& cert) {
  require_singleton(geom);
  const AuditReport pre = verify_corollary(data, geom, cert);
  if (pre.overall() == Verdict::kFail) {
    throw Error(ErrorCode::kNotApplicable,
                "the corollary certificate does not pass verification");
  }
  return implication_report(data, pre, cert.lambdabar, cert.w, cert.xi,
                            cert.sigma);
}

}  // namespace mpecstat
