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


#ifndef MPECSTAT_SRC_GEOM_INTERNAL_HPP_
#define MPECSTAT_SRC_GEOM_INTERNAL_HPP_

#include <vector>

#include "mpecstat/cone.hpp"
#include "mpecstat/linear_system.hpp"
#include "mpecstat/lp.hpp"

namespace mpecstat::internal {

/// Accumulates a vector-valued linear expression, one Term list per
/// coordinate, and turns it into equality rows.
class VectorExpr {
 public:
  explicit VectorExpr(std::size_t dim) : rows_(dim) {}

  /// Adds s * col * x_var.
  void add(std::size_t var, const RVector& col, const Rational& s = 1) {
    for (std::size_t j = 0; j < rows_.size(); ++j)
      if (col[j] != 0) rows_[j].push_back({var, s * col[j]});
  }

  /// Adds s * sum_k cols[k] * block[k].
  void add(const VarBlock& block, const std::vector<RVector>& cols,
           const Rational& s = 1) {
    for (std::size_t k = 0; k < block.size; ++k) add(block[k], cols[k], s);
  }

  void equal(LinearSystem& sys, const RVector& rhs) const {
    for (std::size_t j = 0; j < rows_.size(); ++j)
      sys.add_equal(rows_[j], rhs[j]);
  }

  const std::vector<Term>& row(std::size_t j) const { return rows_[j]; }

 private:
  std::vector<std::vector<Term>> rows_;
};

inline void constrain_polyhedron(LinearSystem& sys, const VarBlock& x,
                                 const HPolyhedron& p) {
  for (const auto& r : p.eq) sys.add_equal(block_terms(x, r.a), r.b);
  for (const auto& r : p.ineq) sys.add_less_equal(block_terms(x, r.a), r.b);
}

inline void constrain_cone(LinearSystem& sys, const VarBlock& x,
                           const HCone& k) {
  for (const auto& r : k.eqRows) sys.add_equal(block_terms(x, r), 0);
  for (const auto& r : k.ineqRows) sys.add_less_equal(block_terms(x, r), 0);
}

/// Unknown blocks (free, nonnegative) for an element of the polar of k
/// written through its rows; the element is added to expr with factor s.
struct PolarBlocks {
  VarBlock free;
  VarBlock nonneg;
};

inline PolarBlocks add_polar_element(LinearSystem& sys, VectorExpr& expr,
                                     const std::vector<RVector>& freeGens,
                                     const std::vector<RVector>& nonnegGens,
                                     const Rational& s = 1) {
  PolarBlocks b{sys.add_block(freeGens.size()),
                sys.add_block(nonnegGens.size())};
  for (std::size_t i = 0; i < b.nonneg.size; ++i) sys.nonnegative(b.nonneg[i]);
  expr.add(b.free, freeGens, s);
  expr.add(b.nonneg, nonnegGens, s);
  return b;
}

inline const LpOptimal* feasible(const LpOutcome& out) {
  return std::get_if<LpOptimal>(&out);
}
const LpOptimal* feasible(LpOutcome&& out) = delete;

/// Solves the closed system with a zero objective.
inline LpOutcome feasibility(const LinearSystem& sys) {
  return sys.optimize(zeros(sys.num_vars()), Sense::kMaximize);
}

/// Every coordinate is constant on the nonempty polyhedron p.
bool is_singleton(const HPolyhedron& p);

}  // namespace mpecstat::internal

#endif  // MPECSTAT_SRC_GEOM_INTERNAL_HPP_
