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

#ifndef MPECSTAT_LINEAR_SYSTEM_HPP_
#define MPECSTAT_LINEAR_SYSTEM_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "mpecstat/lp.hpp"
#include "mpecstat/rational.hpp"

namespace mpecstat {

/// Contiguous block of unknowns inside a LinearSystem.
struct VarBlock {
  std::size_t offset = 0;
  std::size_t size = 0;

  std::size_t operator[](std::size_t i) const { return offset + i; }
};

/// Sparse linear term: coefficient times unknown index.
struct Term {
  std::size_t var;
  Rational coeff;
};

/// Mixed linear system over named blocks of free unknowns, with optional
/// strict rows. Strict feasibility is decided by maximizing a common slack
/// t <= 1 and testing t > 0.
class LinearSystem {
 public:
  VarBlock add_block(std::size_t size);
  std::size_t num_vars() const { return numVars_; }

  void add_equal(const std::vector<Term>& lhs, const Rational& rhs);
  void add_less_equal(const std::vector<Term>& lhs, const Rational& rhs);
  void add_greater_equal(const std::vector<Term>& lhs, const Rational& rhs);
  void add_strict_less(const std::vector<Term>& lhs, const Rational& rhs);
  void add_strict_greater(const std::vector<Term>& lhs, const Rational& rhs);

  /// Fix a single unknown.
  void fix(std::size_t var, const Rational& value);
  void nonnegative(std::size_t var);
  void nonpositive(std::size_t var);

  /// A point satisfying every row (strict rows strictly), if any.
  std::optional<RVector> solve() const;
  /// Optimizes over the closed system (strict rows relaxed to <=).
  LpOutcome optimize(const RVector& objective, Sense sense) const;
  HPolyhedron closed_polyhedron() const;

  std::size_t strict_row_count() const { return strict_.size(); }

 private:
  RVector dense(const std::vector<Term>& lhs) const;

  std::size_t numVars_ = 0;
  std::vector<std::pair<std::vector<Term>, Rational>> eq_;
  std::vector<std::pair<std::vector<Term>, Rational>> le_;
  std::vector<std::pair<std::vector<Term>, Rational>> strict_;
};

/// Terms sum_k coeffs[k] * block[k].
std::vector<Term> block_terms(const VarBlock& block, const RVector& coeffs);
std::vector<Term> join(std::vector<Term> a, const std::vector<Term>& b);
std::vector<Term> scaled(std::vector<Term> t, const Rational& s);
RVector block_values(const RVector& x, const VarBlock& block);

}  // namespace mpecstat

#endif  // MPECSTAT_LINEAR_SYSTEM_HPP_
