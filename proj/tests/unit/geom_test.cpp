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


#include <gtest/gtest.h>

#include <algorithm>
#include <optional>

#include "fixtures.hpp"
#include "mpecstat/error.hpp"
#include "mpecstat/linalg.hpp"
#include "mpecstat/mpec_geom.hpp"
#include "properties.hpp"

namespace mpecstat {
namespace {

using testing::example1;
using testing::example2;
using testing::Rng;

const Rational kHalf(1, 2);

class Example1 : public ::testing::Test {
 protected:
  ProblemData d = example1();
  PointGeometry g = analyze_point(d);
  RVector vbar{1, 1, 0};
  RVector vbarStar{kHalf, kHalf, 0};
};

TEST_F(Example1, PointGeometry) {
  EXPECT_EQ(g.activeLower, (IndexSet{0, 1}));
  EXPECT_TRUE(same_cone(g.criticalCone, HCone{3, {{0, 0, 1}}, {}}));
  EXPECT_EQ(g.extremeMultipliers, (std::vector<RVector>{{0, 1}, {1, 0}}));
  EXPECT_EQ(g.jPlusAll, (IndexSet{0, 1}));
  EXPECT_EQ(g.criticalLineality.size(), 2u);
  EXPECT_TRUE(g.multiplierSet.contains({kHalf, kHalf}));
  EXPECT_FALSE(g.multiplierSet.contains({1, 1}));
}

TEST_F(Example1, DirectionalMultipliers) {
  EXPECT_EQ(directional(d, g, {1, 0, 0}).vertices,
            (std::vector<RVector>{{1, 0}}));
  EXPECT_EQ(directional(d, g, {0, 1, 0}).vertices,
            (std::vector<RVector>{{0, 1}}));
  EXPECT_EQ(directional(d, g, {2, -1, 0}).vertices,
            (std::vector<RVector>{{1, 0}}));
  EXPECT_TRUE(
      same_polyhedron(directional(d, g, vbar).dirMultipliers, g.multiplierSet));
  const DirectionalData zero = directional(d, g, zeros(3));
  EXPECT_TRUE(same_polyhedron(zero.dirMultipliers, g.multiplierSet));
  EXPECT_EQ(zero.activeAtV, g.activeLower);
}

TEST_F(Example1, Nondegeneracy) {
  for (const RVector& v : std::vector<RVector>{
           {1, 1, 0}, {1, -1, 0}, {1, 0, 0}, {0, 1, 0}, {2, 1, 0}}) {
    EXPECT_TRUE(check_2_nondegenerate(d, g, v).nondegenerate) << to_string(v);
  }
  const NondegeneracyResult z = check_2_nondegenerate(d, g, zeros(3));
  EXPECT_FALSE(z.nondegenerate);
  EXPECT_EQ(primitive_signed(z.witness), (RVector{1, -1}));
}

TEST_F(Example1, Regularity) {
  EXPECT_TRUE(check_2_regular(d, {0, 1}, vbar));
  EXPECT_TRUE(check_2_regular(d, {}, vbar));
  ProblemData twin = testing::zero_problem();
  twin.m = 2;
  twin.q = 2;
  twin.gradF = {0, 0, 0};
  twin.phiVal = {0, 0};
  twin.jacPhi = RMatrix(2, 3);
  twin.gVal = {0, 0};
  twin.jacG = RMatrix{{1, 1}, {1, 1}};
  twin.hessG = {RMatrix(2, 2), RMatrix(2, 2)};
  twin.jacGupper = RMatrix(0, 3);
  EXPECT_FALSE(check_2_regular(twin, {0, 1}, {1, -1}));
}

TEST_F(Example1, TangentMembership) {
  TangentMembership t = tangent_gph_member(d, g, vbar, vbarStar);
  ASSERT_TRUE(t.member);
  EXPECT_EQ(t.lambda, (RVector{kHalf, kHalf}));
  EXPECT_TRUE(is_zero(t.zstar));

  t = tangent_gph_member(d, g, zeros(3), {0, 0, 5});
  ASSERT_TRUE(t.member);
  EXPECT_EQ(t.zstar, (RVector{0, 0, 5}));

  t = tangent_gph_member(d, g, {1, 0, 0}, {0, 1, 0});
  EXPECT_FALSE(t.member);
}

TEST_F(Example1, Decomposition) {
  Decomposition dec = decompose_tangent_pair(d, g, vbar, vbarStar);
  EXPECT_EQ(dec.lambdabar, (RVector{kHalf, kHalf}));
  EXPECT_EQ(dec.zbar, (RVector{0, 0, 0}));
  dec = decompose_tangent_pair(d, g, vbar, {kHalf, kHalf, 7});
  EXPECT_EQ(dec.lambdabar, (RVector{kHalf, kHalf}));
  EXPECT_EQ(dec.zbar, (RVector{0, 0, 7}));
  dec = decompose_tangent_pair(d, g, {1, 0, 0}, {1, 0, 0});
  EXPECT_EQ(dec.lambdabar, (RVector{1, 0}));
  EXPECT_TRUE(is_zero(dec.zbar));
}

TEST_F(Example1, TildeCone) {
  const TildeCone k =
      ktilde_parts(d, g, vbar, {kHalf, kHalf}, zeros(3));
  EXPECT_TRUE(same_cone(k.vPart, HCone{3, {{0, 0, 1}}, {}}));
  EXPECT_TRUE(same_cone(k.lambdaPart, HCone{2, {{1, 1}}, {}}));
  EXPECT_TRUE(same_cone(k.joined(), product(k.vPart, k.lambdaPart)));
}

TEST_F(Example1, NormalToTangent) {
  NormalMembership n =
      normal_to_tangent_member(d, g, vbar, vbarStar, {kHalf, kHalf, 0}, {-1, -1, 0});
  ASSERT_EQ(n.kind, NormalMembership::Kind::kYes);
  EXPECT_EQ(n.eta, (RVector{0, 0}));
  n = normal_to_tangent_member(d, g, vbar, vbarStar, {0, 0, 3}, zeros(3));
  EXPECT_EQ(n.kind, NormalMembership::Kind::kYes);
  n = normal_to_tangent_member(d, g, vbar, vbarStar, zeros(3), {1, 0, 0});
  EXPECT_EQ(n.kind, NormalMembership::Kind::kNo);
}

TEST_F(Example1, TangentOfTangent) {
  TangentTangent t = tangent2_member(d, g, vbar, vbarStar, zeros(3), zeros(3));
  ASSERT_TRUE(t.member);
  EXPECT_TRUE(is_zero(t.mu));
  t = tangent2_member(d, g, vbar, vbarStar, {1, 1, 0}, {kHalf, kHalf, 0});
  EXPECT_TRUE(t.member);
  t = tangent2_member(d, g, vbar, vbarStar, {1, 1, 0},
                      {Rational(3, 2), -kHalf, 0});
  ASSERT_TRUE(t.member);
  EXPECT_EQ(t.mu, (RVector{1, -1}));
  // 2 v^T ∇²g u = (2, -2) is not normal to T(lambda) = {eta1 + eta2 = 0}.
  EXPECT_FALSE(tangent2_member(d, g, vbar, vbarStar, {1, -1, 0},
                               {kHalf, -kHalf, 0})
                   .member);
  EXPECT_FALSE(tangent2_member(d, g, vbar, vbarStar, {1, 1, 0},
                               {Rational(3, 2), kHalf, 0})
                   .member);
}

TEST_F(Example1, SecondLevel) {
  const RVector dv{1, 1, 0}, dvs{Rational(3, 2), -kHalf, 0};
  const SecondLevelContext c = second_level_context(d, g, vbar, vbarStar, dv, dvs);
  EXPECT_EQ(c.muBar, (RVector{1, -1}));
  EXPECT_TRUE(is_zero(c.zetaBar));
  EXPECT_TRUE(
      tangent3_member(d, g, vbar, vbarStar, dv, dvs, zeros(3), zeros(3)).member);
  EXPECT_TRUE(tangent3_member(d, g, vbar, vbarStar, dv, dvs, dv,
                              d.hess_times({kHalf, kHalf}, dv))
                  .member);
  EXPECT_FALSE(tangent3_member(d, g, vbar, vbarStar, dv, dvs, {1, 0, 0},
                               {0, 1, 0})
                   .member);
}

TEST_F(Example1, ZeroDirection) {
  EXPECT_TRUE(
      zero_dir_filter(d, g, {0, 0, 1}, zeros(3), zeros(3)).passes);
  EXPECT_FALSE(
      zero_dir_filter(d, g, {0, 0, 1}, zeros(3), {0, 0, 1}).passes);
}

TEST_F(Example1, PolyhedralityProbe) {
  PolyhedralityProbe p = polyhedrality_probe(d, g, vbar, vbarStar);
  ASSERT_EQ(p.kind, PolyhedralityProbe::Kind::kNotLocallyPolyhedral);
  EXPECT_EQ(p.witness, (RVector{Rational(65, 64), 1, 0}));
  EXPECT_EQ(directional(d, g, p.witness).vertices,
            (std::vector<RVector>{{1, 0}}));
  p = polyhedrality_probe(d, g, {1, 0, 0}, {1, 0, 0});
  EXPECT_EQ(p.kind, PolyhedralityProbe::Kind::kLocallyPolyhedral);
}

TEST(Example2Geometry, PointGeometry) {
  const ProblemData d = example2();
  const PointGeometry g = analyze_point(d);
  EXPECT_EQ(g.activeLower, (IndexSet{0, 1, 2}));
  EXPECT_TRUE(same_cone(g.criticalCone, HCone{2, {}, {{1, 0}, {0, -1}, {1, 1}}}));
  EXPECT_EQ(g.extremeMultipliers, (std::vector<RVector>{{0, 0, 0}}));
  EXPECT_TRUE(g.jPlusAll.empty());
  EXPECT_TRUE(g.criticalLineality.empty());
}

TEST(Geometry, InactiveLowerLevel) {
  ProblemData d = testing::zero_problem();
  d.gVal = {-1};
  const PointGeometry g = analyze_point(d);
  EXPECT_TRUE(g.activeLower.empty());
  EXPECT_EQ(g.extremeMultipliers, (std::vector<RVector>{{0}}));
  EXPECT_TRUE(same_cone(g.criticalCone, HCone{1, {}, {}}));
}

TEST(Geometry, ValidateRejectsBadData) {
  ProblemData d = example1();
  d.gVal[0] = 1;
  try {
    d.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasiblePoint);
  }
  d = example1();
  d.hessG[0](0, 1) = 1;
  EXPECT_THROW(d.validate(), Error);
  d = example1();
  d.gradF.pop_back();
  EXPECT_THROW(d.validate(), Error);
}

TEST(Geometry, DirectionalFacesAndZeroDirection) {
  Rng rng(21);
  int tested = 0;
  for (int t = 0; t < 200 && tested < 60; ++t) {
    RVector lambda0;
    const ProblemData d = testing::random_problem(
        rng, 1, rng.uniform(1, 3), 0, rng.uniform(1, 3), lambda0);
    std::optional<PointGeometry> g;
    try {
      g = analyze_point(d);
    } catch (const Error&) {
      continue;
    }
    try {
      for (const auto& f : faces(g->criticalCone))
        directional(d, *g, ri_representative(g->criticalCone, f));
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kUnboundedMultipliers);
      continue;
    }
    ++tested;
    const DirectionalData z = directional(d, *g, zeros(d.m));
    EXPECT_TRUE(same_polyhedron(z.dirMultipliers, g->multiplierSet));
    for (const auto& f : faces(g->criticalCone)) {
      const RVector v = ri_representative(g->criticalCone, f);
      const DirectionalData dir = directional(d, *g, v);
      for (const auto& x : dir.vertices) {
        EXPECT_TRUE(g->multiplierSet.contains(x));
        EXPECT_NE(std::find(g->extremeMultipliers.begin(),
                            g->extremeMultipliers.end(), x),
                  g->extremeMultipliers.end());
        EXPECT_EQ(dot(dir.quadObjective, x), dir.maxValue);
      }
      for (const auto& x : g->extremeMultipliers)
        EXPECT_LE(dot(dir.quadObjective, x), dir.maxValue);
      if (check_2_regular(d, dir.jPlusDir, v)) {
        EXPECT_TRUE(check_2_nondegenerate(d, *g, v).nondegenerate);
      }
    }
    for (int k = 0; k < 4; ++k) {
      const RVector vs = rng.vector(d.m, -2, 2);
      EXPECT_EQ(tangent_gph_member(d, *g, zeros(d.m), vs).member,
                in_polar(g->criticalCone, vs));
    }
  }
  EXPECT_GE(tested, 50);
}

TEST(Geometry, SecondLevelReducesToFirst) {
  const ProblemData d = example1();
  const PointGeometry g = analyze_point(d);
  Rng rng(22);
  const RVector vbar{1, 1, 0}, vs{kHalf, kHalf, 0};
  int members = 0;
  for (int t = 0; t < 50; ++t) {
    RVector u = rng.vector(3, -1, 1);
    if (rng.coin(60)) u[2] = 0;
    RVector us = d.hess_times({kHalf, kHalf}, u);
    if (rng.coin(50)) axpy(us, rng.uniform(-1, 1), {1, -1, 0});
    if (rng.coin(30)) us = rng.vector(3, -1, 1);
    const bool one = tangent2_member(d, g, vbar, vs, u, us).member;
    const bool two =
        tangent3_member(d, g, vbar, vs, zeros(3), zeros(3), u, us).member;
    EXPECT_EQ(one, two) << to_string(u) << " " << to_string(us);
    members += one;
  }
  EXPECT_GT(members, 0);
}

TEST(Geometry, DecompositionAuditAndReconstruction) {
  Rng rng(23);
  int tested = 0;
  for (int t = 0; t < 40; ++t) {
    RVector lambda0;
    const ProblemData d = testing::random_problem(rng, 1, 2, 0, 3, lambda0);
    std::optional<PointGeometry> g;
    try {
      g = analyze_point(d);
    } catch (const Error&) {
      continue;
    }
    const RVector v = ri_representative(g->criticalCone);
    std::vector<RVector> verts;
    try {
      if (!check_2_nondegenerate(d, *g, v).nondegenerate) continue;
      verts = directional(d, *g, v).vertices;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kUnboundedMultipliers);
      continue;
    }
    ++tested;
    const RVector vs = d.hess_times(verts.front(), v);
    const Decomposition dec = decompose_tangent_pair(d, *g, v, vs);
    EXPECT_EQ(add(d.hess_times(dec.lambdabar, v), dec.zbar), vs);
  }
  EXPECT_GE(tested, 10);
}

TEST(Geometry, DualityPairing) {
  int fired = 0;
  const testing::Tally t = testing::duality_pairing_suite(8001, 50, &fired);
  EXPECT_EQ(t.failures, 0) << t.summary();
  EXPECT_EQ(fired, 0);
  EXPECT_GE(t.instances, 50);
}

}  // namespace
}  // namespace mpecstat
