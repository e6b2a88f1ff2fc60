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


#ifndef MPECSTAT_TESTS_FIXTURES_HPP_
#define MPECSTAT_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "mpecstat/cone.hpp"
#include "mpecstat/mpec_geom.hpp"

namespace mpecstat::testing {

/// Bilevel instance with a segment of lower-level multipliers.
ProblemData example1();
/// Instance with a trivial multiplier set and three active constraints.
ProblemData example2();
/// All data zero: n = m = 1, one active lower-level constraint.
ProblemData zero_problem();

class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  bool coin(int percent) { return uniform(0, 99) < percent; }
  RVector vector(std::size_t n, int lo, int hi);
  RMatrix matrix(std::size_t rows, std::size_t cols, int lo, int hi);
  RMatrix symmetric(std::size_t n, int lo, int hi);

 private:
  std::mt19937 gen_;
};

/// Roughly one row in six becomes an equality.
HCone random_cone(Rng& rng, std::size_t dim, std::size_t rows);
/// Polyhedron through an integer point z; about half the rows are tight at z.
HPolyhedron random_polyhedron(Rng& rng, std::size_t dim, std::size_t rows,
                              RVector& z);
/// Nonnegative combination of the rows of p tight at z plus equality rows.
RVector random_normal(Rng& rng, const HPolyhedron& p, const RVector& z);

/// Generators of a cone with lineality listed in both signs.
std::vector<RVector> generators(const VCone& k);

/// Random feasible problem; the multiplier set contains `lambda`.
ProblemData random_problem(Rng& rng, std::size_t n, std::size_t m,
                           std::size_t p, std::size_t q, RVector& lambda);

/// Random problem whose active lower-level gradients are linearly
/// independent, so the multiplier set is a single point.
ProblemData random_singleton_problem(Rng& rng);

}  // namespace mpecstat::testing

#endif  // MPECSTAT_TESTS_FIXTURES_HPP_
