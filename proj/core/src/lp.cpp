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

#include "mpecstat/lp.hpp"

#include <algorithm>
#include <utility>

#include "mpecstat/cone.hpp"
#include "mpecstat/error.hpp"

namespace mpecstat {
namespace {

// maximize c^T z subject to M z = r, z >= 0, r >= 0, with one artificial
// column per row appended after the N structural columns.
class Simplex {
 public:
  enum class Status { kOptimal, kUnbounded, kInfeasible };

  Simplex(std::vector<RVector> m, RVector r, std::size_t structural)
      : rows_(m.size()), n_(structural), t_(std::move(m)), rhs_(std::move(r)) {
    for (std::size_t i = 0; i < rows_; ++i) {
      t_[i].resize(n_ + rows_, Rational(0));
      t_[i][n_ + i] = 1;
      basis_.push_back(n_ + i);
    }
  }

  Status run(const RVector& structuralCost) {
    RVector phase1(n_ + rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) phase1[n_ + i] = -1;
    iterate(phase1, n_ + rows_);
    if (objective(phase1) < 0) {
      dual_ = dual(phase1);
      phase1Value_ = objective(phase1);
      return Status::kInfeasible;
    }
    drive_out_artificials();
    cost_ = structuralCost;
    cost_.resize(n_ + rows_, Rational(0));
    if (!iterate(cost_, n_)) return Status::kUnbounded;
    dual_ = dual(cost_);
    return Status::kOptimal;
  }

  RVector primal() const {
    RVector z = zeros(n_);
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < n_) z[basis_[i]] = rhs_[i];
    return z;
  }

  RVector ray() const {
    RVector d = zeros(n_);
    d[unboundedColumn_] = 1;
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < n_) d[basis_[i]] = -t_[i][unboundedColumn_];
    return d;
  }

  const RVector& dual_values() const { return dual_; }
  const Rational& phase1_value() const { return phase1Value_; }
  Rational value() const { return objective(cost_); }

 private:
  Rational objective(const RVector& c) const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_; ++i) v += c[basis_[i]] * rhs_[i];
    return v;
  }

  RVector dual(const RVector& c) const {
    RVector y = zeros(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < rows_; ++k) {
        const Rational& cb = c[basis_[k]];
        if (cb != 0) y[i] += cb * t_[k][n_ + i];
      }
    }
    return y;
  }

  // Bland's rule; columns >= limit never enter. Returns false if unbounded.
  bool iterate(const RVector& c, std::size_t limit) {
    for (;;) {
      std::size_t entering = limit;
      for (std::size_t j = 0; j < limit && entering == limit; ++j) {
        Rational d = c[j];
        for (std::size_t i = 0; i < rows_; ++i) {
          const Rational& cb = c[basis_[i]];
          if (cb != 0 && t_[i][j] != 0) d -= cb * t_[i][j];
        }
        if (d > 0) entering = j;
      }
      if (entering == limit) return true;
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][entering] <= 0) continue;
        const Rational ratio = rhs_[i] / t_[i][entering];
        if (leave == rows_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) {
        unboundedColumn_ = entering;
        return false;
      }
      pivot(leave, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& x : t_[r]) x *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j < t_[i].size(); ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  // Artificial columns still basic (at level zero) are swapped for any
  // structural column with a nonzero entry; rows with none are redundant and
  // stay inert.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::size_t rows_;
  std::size_t n_;
  std::vector<RVector> t_;
  RVector rhs_;
  std::vector<std::size_t> basis_;
  RVector cost_;
  RVector dual_;
  Rational phase1Value_;
  std::size_t unboundedColumn_ = 0;
};

void check_dims(const HPolyhedron& p) {
  for (const auto& r : p.eq)
    if (r.a.size() != p.dim)
      throw Error(ErrorCode::kDimensionMismatch, "polyhedron equality row");
  for (const auto& r : p.ineq)
    if (r.a.size() != p.dim)
      throw Error(ErrorCode::kDimensionMismatch, "polyhedron inequality row");
}

HCone homogenize(const HPolyhedron& p) {
  HCone c;
  c.dim = p.dim + 1;
  for (const auto& r : p.eq) c.eqRows.push_back(concat(r.a, RVector{-r.b}));
  for (const auto& r : p.ineq) c.ineqRows.push_back(concat(r.a, RVector{-r.b}));
  RVector t = zeros(p.dim + 1);
  t[p.dim] = -1;
  c.ineqRows.push_back(std::move(t));
  return c;
}

}  // namespace

bool lex_less(const RVector& a, const RVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool HPolyhedron::contains(const RVector& x) const {
  if (x.size() != dim) {
    throw Error(ErrorCode::kDimensionMismatch, "point dimension");
  }
  for (const auto& r : eq)
    if (dot(r.a, x) != r.b) return false;
  for (const auto& r : ineq)
    if (dot(r.a, x) > r.b) return false;
  return true;
}

IndexSet HPolyhedron::tight_set(const RVector& x) const {
  IndexSet s;
  for (std::size_t i = 0; i < ineq.size(); ++i)
    if (dot(ineq[i].a, x) == ineq[i].b) s.push_back(i);
  return s;
}

HPolyhedron HPolyhedron::canonical() const {
  auto normalize = [](const LinearRow& r, bool signFree) {
    RVector v = concat(r.a, RVector{r.b});
    v = signFree ? primitive_signed(v) : primitive(v);
    Rational b = v.back();
    v.pop_back();
    return LinearRow{std::move(v), std::move(b)};
  };
  auto less = [](const LinearRow& x, const LinearRow& y) {
    if (x.a != y.a) return lex_less(x.a, y.a);
    return x.b < y.b;
  };
  HPolyhedron out{dim, {}, {}};
  for (const auto& r : eq) {
    if (is_zero(r.a) && r.b == 0) continue;
    out.eq.push_back(normalize(r, true));
  }
  for (const auto& r : ineq) {
    if (is_zero(r.a) && r.b >= 0) continue;
    out.ineq.push_back(normalize(r, false));
  }
  for (auto* rows : {&out.eq, &out.ineq}) {
    std::sort(rows->begin(), rows->end(), less);
    rows->erase(std::unique(rows->begin(), rows->end()), rows->end());
  }
  return out;
}

LpOutcome lp_solve(const RVector& objective, const HPolyhedron& p, Sense sense) {
  check_dims(p);
  if (objective.size() != p.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "objective length");
  }
  const std::size_t d = p.dim;
  const std::size_t ne = p.eq.size();
  const std::size_t ni = p.ineq.size();
  const std::size_t structural = 2 * d + ni;
  std::vector<RVector> m;
  RVector r;
  std::vector<int> sign;
  m.reserve(ne + ni);
  auto push = [&](const LinearRow& row, std::size_t slack, bool hasSlack) {
    const int s = row.b < 0 ? -1 : 1;
    RVector line = zeros(structural);
    for (std::size_t j = 0; j < d; ++j) {
      line[j] = s * row.a[j];
      line[d + j] = -s * row.a[j];
    }
    if (hasSlack) line[2 * d + slack] = s;
    m.push_back(std::move(line));
    r.push_back(s * row.b);
    sign.push_back(s);
  };
  for (const auto& row : p.eq) push(row, 0, false);
  for (std::size_t i = 0; i < ni; ++i) push(p.ineq[i], i, true);

  const Rational dir = sense == Sense::kMaximize ? 1 : -1;
  RVector cost = zeros(structural);
  for (std::size_t j = 0; j < d; ++j) {
    cost[j] = dir * objective[j];
    cost[d + j] = -dir * objective[j];
  }

  Simplex simplex(std::move(m), std::move(r), structural);
  const auto status = simplex.run(cost);
  auto signed_dual = [&](const RVector& y) {
    RVector u(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) u[i] = sign[i] * y[i];
    return u;
  };
  auto to_x = [&](const RVector& z) {
    RVector x = zeros(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = z[j] - z[d + j];
    return x;
  };

  if (status == Simplex::Status::kInfeasible) {
    RVector u = signed_dual(simplex.dual_values());
    const Rational norm = -simplex.phase1_value();
    for (auto& x : u) x /= norm;
    return LpInfeasible{std::move(u)};
  }
  const RVector x = to_x(simplex.primal());
  if (status == Simplex::Status::kUnbounded) {
    RVector ray = to_x(simplex.ray());
    return LpUnbounded{x, std::move(ray)};
  }
  RVector u = signed_dual(simplex.dual_values());
  LpOptimal opt;
  opt.value = dir * simplex.value();
  opt.point = x;
  opt.tightSet = p.tight_set(x);
  opt.eqDual = slice(u, 0, ne);
  opt.ineqDual = slice(u, ne, ni);
  return opt;
}

std::optional<RVector> find_feasible_point(const HPolyhedron& p) {
  auto out = lp_solve(zeros(p.dim), p, Sense::kMaximize);
  if (auto* o = std::get_if<LpOptimal>(&out)) return o->point;
  return std::nullopt;
}

std::vector<RVector> vertices(const HPolyhedron& p) {
  check_dims(p);
  const std::size_t d = p.dim;
  const VCone v = h_to_v(homogenize(p));
  for (const auto& l : v.lineality) {
    if (l[d] == 0) {
      throw Error(ErrorCode::kNotPointed, "polyhedron contains a line");
    }
  }
  std::vector<RVector> out;
  for (const auto& ray : v.rays) {
    if (ray[d] > 0) out.push_back(scale(slice(ray, 0, d), 1 / ray[d]));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

IndexSet implicit_equalities(const HPolyhedron& p) {
  IndexSet s;
  for (std::size_t i = 0; i < p.ineq.size(); ++i) {
    auto out = lp_solve(p.ineq[i].a, p, Sense::kMinimize);
    if (auto* o = std::get_if<LpOptimal>(&out); o && o->value == p.ineq[i].b)
      s.push_back(i);
  }
  return s;
}

bool ri_member(const HPolyhedron& p, const RVector& x) {
  if (!p.contains(x)) return false;
  return p.tight_set(x) == implicit_equalities(p);
}

bool same_polyhedron(const HPolyhedron& a, const HPolyhedron& b) {
  if (a.dim != b.dim) return false;
  return minimal(homogenize(a)) == minimal(homogenize(b));
}

HPolyhedron with_equality(HPolyhedron p, RVector a, Rational b) {
  p.eq.push_back(LinearRow{std::move(a), std::move(b)});
  return p;
}

}  // namespace mpecstat
