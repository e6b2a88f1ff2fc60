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


#ifndef MPECSTAT_SRC_STATIONARITY_INTERNAL_HPP_
#define MPECSTAT_SRC_STATIONARITY_INTERNAL_HPP_

#include <string>

#include "geom_internal.hpp"
#include "mpecstat/stationarity.hpp"

namespace mpecstat::internal {

/// Unknowns (w, ξ, σ) of the x- and y-stationarity rows. The y-rows are kept
/// open in yExpr so callers can add further terms before closing them.
struct StationaritySystem {
  VarBlock w, xi, sigma;
  VectorExpr yExpr;
};

/// Adds the x-rows, σ ≥ 0 and σ_i = 0 for inactive G_i.
StationaritySystem begin_stationarity(LinearSystem& sys, const ProblemData& d,
                                      const RVector& lambda);
/// Closes the y-rows.
void finish_stationarity(LinearSystem& sys, const ProblemData& d,
                         const StationaritySystem& st);

/// ∇ₓF − ∇ₓφᵀw + ∇ₓGᵀσ.
RVector x_residual(const ProblemData& d, const RVector& w,
                   const RVector& sigma);
/// ∇ᵧF − ∇ᵧφᵀw + ∇ᵧGᵀσ − ∇²(λᵀg)w + ∇gᵀξ.
RVector y_residual(const ProblemData& d, const RVector& lambda,
                   const RVector& w, const RVector& xi, const RVector& sigma);

/// Indices with a nonzero entry.
IndexSet support(const RVector& v);
/// Indices i with G_i(x̄, ȳ) = 0.
IndexSet active_upper(const ProblemData& d);
/// σ ≥ 0 and σ_i G_i = 0.
bool sigma_ok(const ProblemData& d, const RVector& sigma);

void require_size(const RVector& v, std::size_t n, const char* what);
void require_indices(const IndexSet& s, std::size_t n, const char* what);

std::string vec_detail(const char* name, const RVector& v);

/// All sets lo ∪ S with S ⊆ hi \ lo, ordered by size (largest first when
/// fullFirst) and then lexicographically.
std::vector<IndexSet> sets_between(const IndexSet& lo, const IndexSet& hi,
                                   bool fullFirst);

/// Candidate directions: 0, one relative-interior point per face of K̄, then
/// the extra directions (which must lie in K̄). Duplicates are dropped.
std::vector<RVector> direction_catalog(const ProblemData& d,
                                       const PointGeometry& geom,
                                       const std::vector<RVector>& extra,
                                       bool withZero);

std::vector<std::pair<std::size_t, BranchTag>> canonical_branches(
    const ProblemData& d, const RVector& lambda, const RVector& w,
    const RVector& xi);

}  // namespace mpecstat::internal

#endif  // MPECSTAT_SRC_STATIONARITY_INTERNAL_HPP_
