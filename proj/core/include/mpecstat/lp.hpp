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

#ifndef MPECSTAT_LP_HPP_
#define MPECSTAT_LP_HPP_

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "mpecstat/rational.hpp"

namespace mpecstat {

/// a^T x = b or a^T x <= b.
struct LinearRow {
  RVector a;
  Rational b;

  bool operator==(const LinearRow&) const = default;
};

/// {x : eq rows hold with equality, ineq rows hold as <=}.
struct HPolyhedron {
  std::size_t dim = 0;
  std::vector<LinearRow> eq;
  std::vector<LinearRow> ineq;

  bool contains(const RVector& x) const;
  /// Inequality rows tight at x (x must be a member).
  IndexSet tight_set(const RVector& x) const;
  /// Row-level canonical form: coprime integer rows, equality rows with a
  /// positive leading coefficient, sorted, duplicates removed.
  HPolyhedron canonical() const;

  bool operator==(const HPolyhedron&) const = default;
};

enum class Sense { kMaximize, kMinimize };

struct LpOptimal {
  Rational value;
  RVector point;
  IndexSet tightSet;
  /// Dual multipliers for the sense-adjusted maximization of s*c (s = +1 for
  /// max, -1 for min): sum eqDual_i a_i + sum ineqDual_j a_j = s*c,
  /// ineqDual >= 0, and eqDual.b + ineqDual.b = s*value.
  RVector eqDual;
  RVector ineqDual;
};

struct LpUnbounded {
  RVector point;
  RVector ray;
};

/// Multipliers over eq rows (free sign) then ineq rows (>= 0) whose
/// combination reads 0^T x <= -1 (equalities contribute both directions).
struct LpInfeasible {
  RVector farkas;
};

using LpOutcome = std::variant<LpOptimal, LpUnbounded, LpInfeasible>;

/// Exact two-phase dense simplex with Bland's rule.
LpOutcome lp_solve(const RVector& objective, const HPolyhedron& p, Sense sense);

std::optional<RVector> find_feasible_point(const HPolyhedron& p);

/// Extreme points of a pointed polyhedron, sorted lexicographically.
/// Throws Error(kNotPointed) if P contains a line; empty P gives {}.
std::vector<RVector> vertices(const HPolyhedron& p);

/// Inequality rows that hold with equality on all of P (P nonempty).
IndexSet implicit_equalities(const HPolyhedron& p);
/// x in P and the tight set at x is exactly the implicit equalities.
bool ri_member(const HPolyhedron& p, const RVector& x);

/// Same point set (both nonempty).
bool same_polyhedron(const HPolyhedron& a, const HPolyhedron& b);

/// P with the extra equality row a^T x = b.
HPolyhedron with_equality(HPolyhedron p, RVector a, Rational b);

/// Lexicographic comparison used wherever a deterministic order is needed.
bool lex_less(const RVector& a, const RVector& b);

}  // namespace mpecstat

#endif  // MPECSTAT_LP_HPP_
