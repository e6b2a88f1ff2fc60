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

#include "mpecstat/linear_system.hpp"

#include <utility>

#include "mpecstat/error.hpp"

namespace mpecstat {

VarBlock LinearSystem::add_block(std::size_t size) {
  VarBlock b{numVars_, size};
  numVars_ += size;
  return b;
}

RVector LinearSystem::dense(const std::vector<Term>& lhs) const {
  RVector a = zeros(numVars_);
  for (const auto& t : lhs) {
    if (t.var >= numVars_) {
      throw Error(ErrorCode::kInvalidArgument, "term refers to unknown var");
    }
    a[t.var] += t.coeff;
  }
  return a;
}

void LinearSystem::add_equal(const std::vector<Term>& lhs, const Rational& rhs) {
  eq_.emplace_back(lhs, rhs);
}

void LinearSystem::add_less_equal(const std::vector<Term>& lhs,
                                  const Rational& rhs) {
  le_.emplace_back(lhs, rhs);
}

void LinearSystem::add_greater_equal(const std::vector<Term>& lhs,
                                     const Rational& rhs) {
  le_.emplace_back(scaled(lhs, -1), -rhs);
}

void LinearSystem::add_strict_less(const std::vector<Term>& lhs,
                                   const Rational& rhs) {
  strict_.emplace_back(lhs, rhs);
}

void LinearSystem::add_strict_greater(const std::vector<Term>& lhs,
                                      const Rational& rhs) {
  strict_.emplace_back(scaled(lhs, -1), -rhs);
}

void LinearSystem::fix(std::size_t var, const Rational& value) {
  add_equal({{var, 1}}, value);
}

void LinearSystem::nonnegative(std::size_t var) {
  add_less_equal({{var, -1}}, 0);
}

void LinearSystem::nonpositive(std::size_t var) {
  add_less_equal({{var, 1}}, 0);
}

HPolyhedron LinearSystem::closed_polyhedron() const {
  HPolyhedron p{numVars_, {}, {}};
  for (const auto& [lhs, rhs] : eq_) p.eq.push_back({dense(lhs), rhs});
  for (const auto& [lhs, rhs] : le_) p.ineq.push_back({dense(lhs), rhs});
  for (const auto& [lhs, rhs] : strict_) p.ineq.push_back({dense(lhs), rhs});
  return p;
}

std::optional<RVector> LinearSystem::solve() const {
  if (strict_.empty()) return find_feasible_point(closed_polyhedron());
  const std::size_t n = numVars_ + 1;
  auto widen = [n](RVector a) {
    a.resize(n, Rational(0));
    return a;
  };
  HPolyhedron p{n, {}, {}};
  for (const auto& [lhs, rhs] : eq_) p.eq.push_back({widen(dense(lhs)), rhs});
  for (const auto& [lhs, rhs] : le_) p.ineq.push_back({widen(dense(lhs)), rhs});
  for (const auto& [lhs, rhs] : strict_) {
    RVector a = widen(dense(lhs));
    a[numVars_] = 1;
    p.ineq.push_back({std::move(a), rhs});
  }
  p.ineq.push_back({unit_vector(n, numVars_), Rational(1)});
  auto out = lp_solve(unit_vector(n, numVars_), p, Sense::kMaximize);
  const auto* opt = std::get_if<LpOptimal>(&out);
  if (!opt || opt->value <= 0) return std::nullopt;
  return slice(opt->point, 0, numVars_);
}

LpOutcome LinearSystem::optimize(const RVector& objective, Sense sense) const {
  return lp_solve(objective, closed_polyhedron(), sense);
}

std::vector<Term> block_terms(const VarBlock& block, const RVector& coeffs) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < block.size; ++i)
    if (coeffs[i] != 0) t.push_back({block[i], coeffs[i]});
  return t;
}

std::vector<Term> join(std::vector<Term> a, const std::vector<Term>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Term> scaled(std::vector<Term> t, const Rational& s) {
  for (auto& x : t) x.coeff *= s;
  return t;
}

RVector block_values(const RVector& x, const VarBlock& block) {
  return slice(x, block.offset, block.size);
}

}  // namespace mpecstat
