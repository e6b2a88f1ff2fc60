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

#include "mpecstat/cone.hpp"

#include <algorithm>
#include <utility>

#include "mpecstat/error.hpp"
#include "mpecstat/linalg.hpp"
#include "mpecstat/linear_system.hpp"

namespace mpecstat {
namespace {

void check_rows(const std::vector<RVector>& rows, std::size_t dim) {
  for (const auto& r : rows)
    if (r.size() != dim)
      throw Error(ErrorCode::kDimensionMismatch, "cone row length");
}

// Subtracts multiples of RREF rows (pivot entries 1) to zero the pivot
// coordinates of v.
RVector reduce(const RowEchelon& e, RVector v) {
  for (std::size_t i = 0; i < e.pivotColumns.size(); ++i) {
    const Rational c = v[e.pivotColumns[i]];
    if (c != 0) axpy(v, -c, e.reduced.row(i));
  }
  return v;
}

// Canonical (basis, generators) pair shared by VCone and HCone normal forms.
void canonicalize(std::size_t dim, std::vector<RVector>& subspace,
                  std::vector<RVector>& gens) {
  const RowEchelon e = rref(RMatrix::from_rows(subspace, dim));
  subspace.clear();
  for (std::size_t i = 0; i < e.reduced.rows(); ++i)
    subspace.push_back(primitive(e.reduced.row(i)));
  std::vector<RVector> out;
  for (auto& g : gens) {
    RVector r = reduce(e, g);
    if (is_zero(r)) continue;
    out.push_back(primitive(r));
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  gens = std::move(out);
}

struct DdRay {
  RVector v;
  std::vector<char> zero;  // zero[j]: row j processed and tight
};

bool adjacent(const std::vector<DdRay>& rays, std::size_t p, std::size_t n,
              std::size_t processed) {
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (r == p || r == n) continue;
    bool covers = true;
    for (std::size_t j = 0; j < processed && covers; ++j)
      if (rays[p].zero[j] && rays[n].zero[j] && !rays[r].zero[j]) covers = false;
    if (covers) return false;
  }
  return true;
}

}  // namespace

bool HCone::contains(const RVector& v) const {
  return membership(*this, v).has_value();
}

HCone HCone::canonical() const {
  HCone c{dim, eqRows, ineqRows};
  canonicalize(dim, c.eqRows, c.ineqRows);
  return c;
}

VCone h_to_v(const HCone& k) {
  const std::size_t d = k.dim;
  check_rows(k.eqRows, d);
  check_rows(k.ineqRows, d);
  std::vector<RVector> lin = k.eqRows.empty()
                                 ? RMatrix::identity(d).row_list()
                                 : kernel_basis(RMatrix::from_rows(k.eqRows, d));
  const std::size_t m = k.ineqRows.size();
  std::vector<DdRay> rays;
  for (std::size_t row = 0; row < m; ++row) {
    const RVector& a = k.ineqRows[row];
    std::size_t li = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i) {
      if (dot(a, lin[i]) != 0) {
        li = i;
        break;
      }
    }
    if (li < lin.size()) {
      RVector l = lin[li];
      Rational s = dot(a, l);
      if (s > 0) {
        l = neg(l);
        s = -s;
      }
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(li));
      for (auto& x : lin) {
        const Rational c = dot(a, x);
        if (c != 0) axpy(x, -c / s, l);
      }
      for (auto& r : rays) {
        const Rational c = dot(a, r.v);
        if (c != 0) r.v = primitive(add(r.v, scale(l, -c / s)));
        r.zero[row] = 1;
      }
      DdRay nr{primitive(l), std::vector<char>(m, 0)};
      for (std::size_t j = 0; j < row; ++j) nr.zero[j] = 1;
      rays.push_back(std::move(nr));
      continue;
    }
    std::vector<Rational> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) val[i] = dot(a, rays[i].v);
    std::vector<DdRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] > 0) continue;
      DdRay r = rays[i];
      if (val[i] == 0) r.zero[row] = 1;
      next.push_back(std::move(r));
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (val[n] >= 0 || !adjacent(rays, p, n, row)) continue;
        RVector v = scale(rays[n].v, val[p]);
        axpy(v, -val[n], rays[p].v);
        DdRay nr{primitive(v), std::vector<char>(m, 0)};
        for (std::size_t j = 0; j < row; ++j)
          nr.zero[j] = rays[p].zero[j] && rays[n].zero[j];
        nr.zero[row] = 1;
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }
  VCone out{d, std::move(lin), {}};
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  canonicalize(d, out.lineality, out.rays);
  return out;
}

HCone v_to_h(const VCone& k) {
  check_rows(k.lineality, k.dim);
  check_rows(k.rays, k.dim);
  const VCone p = h_to_v(HCone{k.dim, k.lineality, k.rays});
  return HCone{k.dim, p.lineality, p.rays};
}

HCone minimal(const HCone& k) { return v_to_h(h_to_v(k)); }

VCone minimal(const VCone& k) { return h_to_v(v_to_h(k)); }

bool same_cone(const HCone& a, const HCone& b) {
  return a.dim == b.dim && minimal(a) == minimal(b);
}

HCone polar(const HCone& k) {
  return v_to_h(VCone{k.dim, k.eqRows, k.ineqRows});
}

std::vector<RVector> lineality(const HCone& k) { return h_to_v(k).lineality; }

std::vector<RVector> span_plus(const HCone& k) {
  const VCone v = h_to_v(k);
  std::vector<RVector> all = v.lineality;
  all.insert(all.end(), v.rays.begin(), v.rays.end());
  return span_basis(all, k.dim);
}

std::optional<IndexSet> membership(const HCone& k, const RVector& v) {
  if (v.size() != k.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "membership: vector length");
  }
  for (const auto& r : k.eqRows)
    if (dot(r, v) != 0) return std::nullopt;
  IndexSet tight;
  for (std::size_t i = 0; i < k.ineqRows.size(); ++i) {
    const Rational s = dot(k.ineqRows[i], v);
    if (s > 0) return std::nullopt;
    if (s == 0) tight.push_back(i);
  }
  return tight;
}

IndexSet implicit_equalities(const HCone& k) {
  const VCone v = h_to_v(k);
  IndexSet s;
  for (std::size_t i = 0; i < k.ineqRows.size(); ++i) {
    bool all = true;
    for (const auto& r : v.rays)
      if (dot(k.ineqRows[i], r) != 0) all = false;
    if (all) s.push_back(i);
  }
  return s;
}

bool ri_member(const HCone& k, const RVector& v) {
  auto tight = membership(k, v);
  return tight && *tight == implicit_equalities(k);
}

HCone tangent_cone(const HCone& k, const RVector& v) {
  auto tight = membership(k, v);
  if (!tight) throw Error(ErrorCode::kNotMember, "tangent_cone: v not in K");
  HCone t{k.dim, k.eqRows, {}};
  for (std::size_t i : *tight) t.ineqRows.push_back(k.ineqRows[i]);
  return t;
}

HCone tangent_of_polyhedron(const HPolyhedron& p, const RVector& z) {
  if (!p.contains(z)) {
    throw Error(ErrorCode::kNotMember, "tangent_of_polyhedron: z not in P");
  }
  HCone t{p.dim, {}, {}};
  for (const auto& r : p.eq) t.eqRows.push_back(r.a);
  for (std::size_t i : p.tight_set(z)) t.ineqRows.push_back(p.ineq[i].a);
  return t;
}

VCone normal_of_polyhedron(const HPolyhedron& p, const RVector& z) {
  const HCone t = tangent_of_polyhedron(p, z);
  return minimal(VCone{p.dim, t.eqRows, t.ineqRows});
}

VCone normal_generators(const HCone& k, const RVector& v) {
  const HCone t = tangent_cone(k, v);
  return VCone{k.dim, t.eqRows, t.ineqRows};
}

std::optional<RVector> cone_combination(const std::vector<RVector>& freeGens,
                                        const std::vector<RVector>& nonnegGens,
                                        const RVector& y) {
  LinearSystem sys;
  const VarBlock f = sys.add_block(freeGens.size());
  const VarBlock n = sys.add_block(nonnegGens.size());
  for (std::size_t i = 0; i < n.size; ++i) sys.nonnegative(n[i]);
  for (std::size_t j = 0; j < y.size(); ++j) {
    std::vector<Term> lhs;
    for (std::size_t i = 0; i < f.size; ++i)
      if (freeGens[i][j] != 0) lhs.push_back({f[i], freeGens[i][j]});
    for (std::size_t i = 0; i < n.size; ++i)
      if (nonnegGens[i][j] != 0) lhs.push_back({n[i], nonnegGens[i][j]});
    sys.add_equal(lhs, y[j]);
  }
  return sys.solve();
}

bool in_cone(const VCone& k, const RVector& y) {
  return cone_combination(k.lineality, k.rays, y).has_value();
}

bool in_polar(const HCone& k, const RVector& y) {
  return cone_combination(k.eqRows, k.ineqRows, y).has_value();
}

bool in_normal_cone(const HCone& k, const RVector& v, const RVector& zstar) {
  const VCone n = normal_generators(k, v);
  return cone_combination(n.lineality, n.rays, zstar).has_value();
}

namespace {

HCone append_equality(HCone t, const RVector& zstar) {
  if (!is_zero(zstar)) t.eqRows.push_back(zstar);
  return t;
}

}  // namespace

HCone critical_cone(const HCone& k, const RVector& v, const RVector& zstar) {
  HCone t = tangent_cone(k, v);
  if (!in_polar(t, zstar)) {
    throw Error(ErrorCode::kNotNormal, "critical_cone: zstar not normal");
  }
  return append_equality(std::move(t), zstar);
}

HCone critical_cone(const HPolyhedron& p, const RVector& z,
                    const RVector& zstar) {
  HCone t = tangent_of_polyhedron(p, z);
  if (!in_polar(t, zstar)) {
    throw Error(ErrorCode::kNotNormal, "critical_cone: zstar not normal");
  }
  return append_equality(std::move(t), zstar);
}

HCone product(const HCone& a, const HCone& b) {
  HCone p{a.dim + b.dim, {}, {}};
  auto left = [&](const RVector& r) { return concat(r, zeros(b.dim)); };
  auto right = [&](const RVector& r) { return concat(zeros(a.dim), r); };
  for (const auto& r : a.eqRows) p.eqRows.push_back(left(r));
  for (const auto& r : b.eqRows) p.eqRows.push_back(right(r));
  for (const auto& r : a.ineqRows) p.ineqRows.push_back(left(r));
  for (const auto& r : b.ineqRows) p.ineqRows.push_back(right(r));
  return p;
}

HCone intersection(const HCone& a, const HCone& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::kDimensionMismatch, "intersection");
  HCone c = a;
  c.eqRows.insert(c.eqRows.end(), b.eqRows.begin(), b.eqRows.end());
  c.ineqRows.insert(c.ineqRows.end(), b.ineqRows.begin(), b.ineqRows.end());
  return c;
}

HCone cone_sum(const HCone& a, const HCone& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::kDimensionMismatch, "cone_sum");
  VCone va = h_to_v(a);
  const VCone vb = h_to_v(b);
  va.lineality.insert(va.lineality.end(), vb.lineality.begin(),
                      vb.lineality.end());
  va.rays.insert(va.rays.end(), vb.rays.begin(), vb.rays.end());
  return v_to_h(va);
}

RVector ri_representative(const VCone& k) {
  RVector s = zeros(k.dim);
  for (const auto& r : k.rays) s = add(s, r);
  for (const auto& l : k.lineality) s = add(s, l);
  return s;
}

RVector ri_representative(const HCone& k) {
  return ri_representative(h_to_v(k));
}

}  // namespace mpecstat
