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
#include <string>

#include "mpecstat/error.hpp"
#include "mpecstat/stationarity.hpp"
#include "stationarity_internal.hpp"

namespace mpecstat {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kConditional:
      return "conditionally-pass";
  }
  return "unknown";
}

std::string_view branch_name(BranchTag t) {
  switch (t) {
    case BranchTag::kStrictBranch:
      return "StrictBranch";
    case BranchTag::kXiZero:
      return "XiZero";
    case BranchTag::kGradWZero:
      return "GradWZero";
  }
  return "unknown";
}

void AuditReport::add(std::string id, bool ok, std::string detail) {
  add(std::move(id), ok ? Verdict::kPass : Verdict::kFail, std::move(detail));
}

void AuditReport::add(std::string id, Verdict v, std::string detail) {
  conditions.push_back({std::move(id), v, std::move(detail)});
}

Verdict AuditReport::overall() const {
  Verdict out = Verdict::kPass;
  for (const auto& c : conditions) {
    if (c.verdict == Verdict::kFail) return Verdict::kFail;
    if (c.verdict == Verdict::kConditional) out = Verdict::kConditional;
  }
  return out;
}

const ConditionResult* AuditReport::find(std::string_view id) const {
  for (const auto& c : conditions)
    if (c.id == id) return &c;
  return nullptr;
}

namespace internal {

StationaritySystem begin_stationarity(LinearSystem& sys, const ProblemData& d,
                                      const RVector& lambda) {
  StationaritySystem st{sys.add_block(d.m), sys.add_block(d.q),
                        sys.add_block(d.p), VectorExpr(d.m)};
  const RMatrix phiX = d.jac_phi_x();
  const RMatrix phiY = d.jac_phi_y();
  const RMatrix gx = d.jac_G_x();
  const RMatrix gy = d.jac_G_y();

  VectorExpr xExpr(d.n);
  for (std::size_t j = 0; j < d.m; ++j) xExpr.add(st.w[j], phiX.row(j), -1);
  for (std::size_t i = 0; i < d.p; ++i) xExpr.add(st.sigma[i], gx.row(i));
  xExpr.equal(sys, neg(slice(d.gradF, 0, d.n)));

  for (std::size_t j = 0; j < d.m; ++j) {
    RVector col = add(phiY.row(j), d.hess_times(lambda, unit_vector(d.m, j)));
    st.yExpr.add(st.w[j], col, -1);
  }
  for (std::size_t i = 0; i < d.q; ++i) st.yExpr.add(st.xi[i], d.grad_g(i));
  for (std::size_t i = 0; i < d.p; ++i) {
    st.yExpr.add(st.sigma[i], gy.row(i));
    if (d.GVal[i] == 0) {
      sys.nonnegative(st.sigma[i]);
    } else {
      sys.fix(st.sigma[i], 0);
    }
  }
  return st;
}

void finish_stationarity(LinearSystem& sys, const ProblemData& d,
                         const StationaritySystem& st) {
  st.yExpr.equal(sys, neg(slice(d.gradF, d.n, d.m)));
}

RVector x_residual(const ProblemData& d, const RVector& w,
                   const RVector& sigma) {
  RVector r = slice(d.gradF, 0, d.n);
  r = sub(r, transpose_times(d.jac_phi_x(), w));
  return add(r, transpose_times(d.jac_G_x(), sigma));
}

RVector y_residual(const ProblemData& d, const RVector& lambda,
                   const RVector& w, const RVector& xi, const RVector& sigma) {
  RVector r = slice(d.gradF, d.n, d.m);
  r = sub(r, transpose_times(d.jac_phi_y(), w));
  r = add(r, transpose_times(d.jac_G_y(), sigma));
  r = sub(r, d.hess_times(lambda, w));
  return add(r, d.grad_g_times(xi));
}

IndexSet support(const RVector& v) {
  IndexSet s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back(i);
  return s;
}

IndexSet active_upper(const ProblemData& d) {
  IndexSet s;
  for (std::size_t i = 0; i < d.p; ++i)
    if (d.GVal[i] == 0) s.push_back(i);
  return s;
}

bool sigma_ok(const ProblemData& d, const RVector& sigma) {
  for (std::size_t i = 0; i < d.p; ++i) {
    if (sigma[i] < 0) return false;
    if (sigma[i] * d.GVal[i] != 0) return false;
  }
  return true;
}

void require_size(const RVector& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " has length " + std::to_string(v.size()) +
                    ", expected " + std::to_string(n));
  }
}

void require_indices(const IndexSet& s, std::size_t n, const char* what) {
  for (std::size_t i : s) {
    if (i >= n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  std::string(what) + " contains index " +
                      std::to_string(i + 1) + " > " + std::to_string(n));
    }
  }
}

std::string vec_detail(const char* name, const RVector& v) {
  return std::string(name) + " = " + to_string(v);
}

}  // namespace internal

using namespace internal;

BranchTag canonical_tag(const Rational& xi, const Rational& gradW) {
  if (xi > 0 && gradW < 0) return BranchTag::kStrictBranch;
  if (xi == 0) return BranchTag::kXiZero;
  return BranchTag::kGradWZero;
}

namespace {

bool tag_holds(BranchTag t, const Rational& xi, const Rational& gw) {
  switch (t) {
    case BranchTag::kStrictBranch:
      return xi > 0 && gw < 0;
    case BranchTag::kXiZero:
      return xi == 0;
    case BranchTag::kGradWZero:
      return gw == 0;
  }
  return false;
}

IndexSet biactive(const ProblemData& d, const RVector& lambda) {
  IndexSet b;
  for (std::size_t i = 0; i < d.q; ++i)
    if (d.gVal[i] == 0 && lambda[i] == 0) b.push_back(i);
  return b;
}

void check_multiplier(const ProblemData& d, const RVector& lambda) {
  require_size(lambda, d.q, "lambda");
  for (std::size_t i = 0; i < d.q; ++i) {
    if (lambda[i] < 0 || (d.gVal[i] < 0 && lambda[i] != 0)) {
      throw Error(ErrorCode::kInfeasibleMultiplier,
                  "lambda violates sign or complementarity at index " +
                      std::to_string(i + 1));
    }
  }
  if (d.grad_g_times(lambda) != d.ystar()) {
    throw Error(ErrorCode::kInfeasibleMultiplier,
                "grad g^T lambda differs from y*");
  }
}

}  // namespace

std::vector<std::pair<std::size_t, BranchTag>> internal::canonical_branches(
    const ProblemData& d, const RVector& lambda, const RVector& w,
    const RVector& xi) {
  std::vector<std::pair<std::size_t, BranchTag>> out;
  for (std::size_t i : biactive(d, lambda))
    out.emplace_back(i, canonical_tag(xi[i], dot(d.grad_g(i), w)));
  return out;
}

AuditReport verify_mstat(const ProblemData& data, const MStatCertificate& cert) {
  check_multiplier(data, cert.lambda);
  require_size(cert.w, data.m, "w");
  require_size(cert.xi, data.q, "xi");
  require_size(cert.sigma, data.p, "sigma");
  const ProblemData& d = data;
  AuditReport r;

  const RVector rx = x_residual(d, cert.w, cert.sigma);
  r.add("a", is_zero(rx), vec_detail("residual", rx));
  const RVector ry = y_residual(d, cert.lambda, cert.w, cert.xi, cert.sigma);
  r.add("b", is_zero(ry), vec_detail("residual", ry));

  std::string bad;
  for (std::size_t i = 0; i < d.q; ++i)
    if (d.gVal[i] < 0 && cert.xi[i] != 0) bad += " " + std::to_string(i + 1);
  r.add("c", bad.empty(), bad.empty() ? "" : "xi nonzero at inactive" + bad);

  bad.clear();
  for (std::size_t i = 0; i < d.q; ++i) {
    if (d.gVal[i] == 0 && cert.lambda[i] > 0 &&
        dot(d.grad_g(i), cert.w) != 0) {
      bad += " " + std::to_string(i + 1);
    }
  }
  r.add("d", bad.empty(), bad.empty() ? "" : "grad g_i^T w nonzero at" + bad);

  bad.clear();
  const IndexSet bi = biactive(d, cert.lambda);
  for (std::size_t i : bi) {
    const Rational gw = dot(d.grad_g(i), cert.w);
    const bool ok = (cert.xi[i] > 0 && gw < 0) || cert.xi[i] * gw == 0;
    if (!ok) bad += " " + std::to_string(i + 1);
  }
  r.add("f", bad.empty(),
        bad.empty() ? "" : "biactive disjunction fails at" + bad);

  r.add("e", sigma_ok(d, cert.sigma), vec_detail("sigma", cert.sigma));

  if (cert.branches.empty()) {
    if (!bi.empty()) {
      std::string tags;
      for (const auto& [i, t] :
           canonical_branches(d, cert.lambda, cert.w, cert.xi)) {
        tags += " " + std::to_string(i + 1) + ":" + std::string(branch_name(t));
      }
      r.add("tags", true, "derived" + tags);
    }
  } else {
    bool ok = cert.branches.size() == bi.size();
    std::string detail;
    for (std::size_t k = 0; ok && k < bi.size(); ++k) {
      const auto& [i, t] = cert.branches[k];
      if (i != bi[k]) {
        ok = false;
        detail = "tag list does not match the biactive set";
      } else if (!tag_holds(t, cert.xi[i], dot(d.grad_g(i), cert.w))) {
        ok = false;
        detail = "tag " + std::string(branch_name(t)) +
                 " inconsistent at index " + std::to_string(i + 1);
      }
    }
    if (cert.branches.size() != bi.size())
      detail = "tag list does not match the biactive set";
    r.add("tags", ok, detail);
  }
  return r;
}

namespace {

std::optional<MStatCertificate> solve_branch(
    const ProblemData& d, const RVector& lambda, const IndexSet& bi,
    const std::vector<BranchTag>& tags) {
  LinearSystem sys;
  StationaritySystem st = begin_stationarity(sys, d, lambda);
  finish_stationarity(sys, d, st);
  for (std::size_t i = 0; i < d.q; ++i) {
    if (d.gVal[i] < 0) sys.fix(st.xi[i], 0);
    if (d.gVal[i] == 0 && lambda[i] > 0)
      sys.add_equal(block_terms(st.w, d.grad_g(i)), 0);
  }
  for (std::size_t k = 0; k < bi.size(); ++k) {
    const std::size_t i = bi[k];
    switch (tags[k]) {
      case BranchTag::kStrictBranch:
        sys.add_strict_greater({{st.xi[i], 1}}, 0);
        sys.add_strict_less(block_terms(st.w, d.grad_g(i)), 0);
        break;
      case BranchTag::kXiZero:
        sys.fix(st.xi[i], 0);
        break;
      case BranchTag::kGradWZero:
        sys.add_equal(block_terms(st.w, d.grad_g(i)), 0);
        break;
    }
  }
  auto x = sys.solve();
  if (!x) return std::nullopt;
  MStatCertificate c{lambda, block_values(*x, st.w), block_values(*x, st.xi),
                     block_values(*x, st.sigma), {}};
  c.branches = canonical_branches(d, lambda, c.w, c.xi);
  return c;
}

}  // namespace

std::vector<MStatCertificate> search_mstat(
    const ProblemData& data, const PointGeometry& geom,
    const std::vector<RVector>& extraMultipliers) {
  std::vector<RVector> candidates = geom.extremeMultipliers;
  if (candidates.size() > 1) {
    RVector bary = zeros(data.q);
    for (const auto& v : candidates) bary = add(bary, v);
    candidates.push_back(scale(bary, Rational(1, candidates.size())));
  }
  for (const auto& l : extraMultipliers) {
    check_multiplier(data, l);
    candidates.push_back(l);
  }

  std::vector<MStatCertificate> out;
  std::map<std::pair<RVector, std::vector<int>>, bool> seen;
  for (const RVector& lambda : candidates) {
    const IndexSet bi = biactive(data, lambda);
    std::vector<BranchTag> tags(bi.size(), BranchTag::kStrictBranch);
    while (true) {
      if (auto c = solve_branch(data, lambda, bi, tags)) {
        std::vector<int> key;
        for (const auto& b : c->branches) key.push_back(static_cast<int>(b.second));
        if (seen.emplace(std::make_pair(lambda, key), true).second)
          out.push_back(std::move(*c));
      }
      std::size_t k = 0;
      for (; k < tags.size(); ++k) {
        if (tags[k] != BranchTag::kGradWZero) {
          tags[k] = static_cast<BranchTag>(static_cast<int>(tags[k]) + 1);
          break;
        }
        tags[k] = BranchTag::kStrictBranch;
      }
      if (k == tags.size()) break;
    }
  }
  return out;
}

}  // namespace mpecstat
