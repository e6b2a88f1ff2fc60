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


#include "fixtures.hpp"

#include "mpecstat/linalg.hpp"

namespace mpecstat::testing {

ProblemData example1() {
  ProblemData d;
  d.n = 2;
  d.m = 3;
  d.p = 2;
  d.q = 2;
  d.gradF = {1, 1, Rational(-3, 2), Rational(-3, 2), -1};
  d.phiVal = {0, 0, -1};
  d.jacPhi = RMatrix{{-1, 0, 1, 0, 0}, {0, -1, 0, 1, 0}, {0, 0, 0, 0, 0}};
  d.gVal = {0, 0};
  d.jacG = RMatrix{{0, 0, 1}, {0, 0, 1}};
  d.hessG = {RMatrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}},
             RMatrix{{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}};
  d.GVal = {0, 0};
  d.jacGupper = RMatrix{{-1, -2, 0, 0, 0}, {-2, -1, 0, 0, 0}};
  d.assumption1Asserted = d.lowerMscqAsserted = d.upperMscqAsserted = true;
  return d;
}

ProblemData example2() {
  ProblemData d;
  d.n = 1;
  d.m = 2;
  d.p = 0;
  d.q = 3;
  d.gradF = {1, 1, 1};
  d.phiVal = {0, 0};
  d.jacPhi = RMatrix{{1, 2, 0}, {1, 0, 1}};
  d.gVal = {0, 0, 0};
  d.jacG = RMatrix{{1, 0}, {0, -1}, {1, 1}};
  d.hessG = {RMatrix(2, 2), RMatrix(2, 2), RMatrix(2, 2)};
  d.jacGupper = RMatrix(0, 3);
  d.assumption1Asserted = d.lowerMscqAsserted = d.upperMscqAsserted = true;
  return d;
}

ProblemData zero_problem() {
  ProblemData d;
  d.n = 1;
  d.m = 1;
  d.q = 1;
  d.gradF = {0, 0};
  d.phiVal = {0};
  d.jacPhi = RMatrix(1, 2);
  d.gVal = {0};
  d.jacG = RMatrix{{1}};
  d.hessG = {RMatrix(1, 1)};
  d.jacGupper = RMatrix(0, 2);
  d.assumption1Asserted = d.lowerMscqAsserted = d.upperMscqAsserted = true;
  return d;
}

RVector Rng::vector(std::size_t n, int lo, int hi) {
  RVector v(n);
  for (auto& x : v) x = uniform(lo, hi);
  return v;
}

RMatrix Rng::matrix(std::size_t rows, std::size_t cols, int lo, int hi) {
  RMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = uniform(lo, hi);
  return a;
}

RMatrix Rng::symmetric(std::size_t n, int lo, int hi) {
  RMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = uniform(lo, hi);
  return a;
}

HCone random_cone(Rng& rng, std::size_t dim, std::size_t rows) {
  HCone k;
  k.dim = dim;
  for (std::size_t r = 0; r < rows; ++r) {
    RVector row = rng.vector(dim, -3, 3);
    if (rng.coin(16)) {
      k.eqRows.push_back(std::move(row));
    } else {
      k.ineqRows.push_back(std::move(row));
    }
  }
  return k;
}

HPolyhedron random_polyhedron(Rng& rng, std::size_t dim, std::size_t rows,
                              RVector& z) {
  z = rng.vector(dim, -2, 2);
  HPolyhedron p;
  p.dim = dim;
  for (std::size_t r = 0; r < rows; ++r) {
    LinearRow row{rng.vector(dim, -3, 3), 0};
    row.b = dot(row.a, z);
    if (rng.coin(12)) {
      p.eq.push_back(std::move(row));
    } else {
      if (rng.coin(50)) row.b += rng.uniform(1, 3);
      p.ineq.push_back(std::move(row));
    }
  }
  return p;
}

RVector random_normal(Rng& rng, const HPolyhedron& p, const RVector& z) {
  RVector out = zeros(p.dim);
  for (const auto& r : p.eq) axpy(out, rng.uniform(-2, 2), r.a);
  for (const auto& r : p.ineq)
    if (dot(r.a, z) == r.b) axpy(out, rng.uniform(0, 2), r.a);
  return out;
}

std::vector<RVector> generators(const VCone& k) {
  std::vector<RVector> g = k.rays;
  for (const auto& l : k.lineality) {
    g.push_back(l);
    g.push_back(neg(l));
  }
  return g;
}

ProblemData random_problem(Rng& rng, std::size_t n, std::size_t m,
                           std::size_t p, std::size_t q, RVector& lambda) {
  ProblemData d;
  d.n = n;
  d.m = m;
  d.p = p;
  d.q = q;
  d.gradF = rng.vector(n + m, -2, 2);
  d.jacPhi = rng.matrix(m, n + m, -2, 2);
  d.gVal.assign(q, 0);
  lambda.assign(q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    if (rng.coin(20)) {
      d.gVal[i] = -1;
    } else {
      lambda[i] = rng.uniform(0, 2);
    }
  }
  d.jacG = rng.matrix(q, m, -2, 2);
  for (std::size_t i = 0; i < q; ++i)
    d.hessG.push_back(rng.coin(50) ? RMatrix(m, m) : rng.symmetric(m, -1, 1));
  d.phiVal = neg(d.grad_g_times(lambda));
  d.GVal.assign(p, 0);
  for (auto& v : d.GVal)
    if (rng.coin(30)) v = -1;
  d.jacGupper = rng.matrix(p, n + m, -2, 2);
  d.assumption1Asserted = d.lowerMscqAsserted = d.upperMscqAsserted = true;
  return d;
}

ProblemData random_singleton_problem(Rng& rng) {
  for (;;) {
    const std::size_t m = rng.uniform(1, 3);
    const std::size_t q = rng.uniform(1, 3);
    const std::size_t p = rng.uniform(0, 1);
    RVector lambda;
    ProblemData d = random_problem(rng, 1, m, p, q, lambda);
    std::vector<RVector> active;
    for (std::size_t i = 0; i < q; ++i)
      if (d.gVal[i] == 0) active.push_back(d.grad_g(i));
    if (rank(active, m) == active.size()) return d;
  }
}

}  // namespace mpecstat::testing
