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

#include "fixtures.hpp"
#include "mpecstat/cone.hpp"
#include "mpecstat/error.hpp"
#include "mpecstat/linalg.hpp"
#include "properties.hpp"

namespace mpecstat {
namespace {

const HCone kWedge{2, {}, {{1, 0}, {1, 1}}};  // v1 <= 0, v1 + v2 <= 0
const HCone kPlane{3, {{0, 0, 1}}, {}};       // R^2 x {0}
const HCone kGamma{2, {}, {{1, 0}, {0, -1}, {1, 1}}};

bool pairs_nonpositive(const VCone& a, const HCone& polarH) {
  const VCone b = h_to_v(polarH);
  for (const auto& x : testing::generators(a))
    for (const auto& y : testing::generators(b))
      if (dot(x, y) > 0) return false;
  return true;
}

TEST(DoubleDescription, Wedge) {
  const VCone v = minimal(h_to_v(kWedge));
  EXPECT_TRUE(v.lineality.empty());
  ASSERT_EQ(v.rays.size(), 2u);
  EXPECT_NE(std::find(v.rays.begin(), v.rays.end(), RVector{0, -1}),
            v.rays.end());
  EXPECT_NE(std::find(v.rays.begin(), v.rays.end(), RVector{-1, 1}),
            v.rays.end());
  for (const auto& r : v.rays) EXPECT_TRUE(kWedge.contains(r));
}

TEST(DoubleDescription, WholeSpaceAndPlane) {
  const VCone all = h_to_v(HCone{2, {}, {}});
  EXPECT_EQ(all.lineality.size(), 2u);
  EXPECT_TRUE(all.rays.empty());
  const VCone p = minimal(h_to_v(kPlane));
  EXPECT_TRUE(p.rays.empty());
  EXPECT_TRUE(in_span(p.lineality, {1, 0, 0}));
  EXPECT_TRUE(in_span(p.lineality, {0, 1, 0}));
  EXPECT_EQ(p.lineality.size(), 2u);
}

TEST(Polar, Examples) {
  EXPECT_EQ(h_to_v(polar(HCone{2, {}, {}})).lineality.size(), 0u);
  EXPECT_TRUE(h_to_v(polar(HCone{2, {}, {}})).rays.empty());
  const HCone expected{2, {}, {{0, -1}, {-1, 1}}};  // cone{(1,0),(1,1)}
  EXPECT_TRUE(same_cone(polar(kWedge), expected));
  EXPECT_TRUE(pairs_nonpositive(h_to_v(kWedge), polar(kWedge)));
  const VCone pp = minimal(h_to_v(polar(kPlane)));
  EXPECT_EQ(pp.lineality.size(), 1u);
  EXPECT_TRUE(in_span(pp.lineality, {0, 0, 1}));
}

TEST(Lineality, Examples) {
  EXPECT_EQ(lineality(kPlane).size(), 2u);
  EXPECT_TRUE(lineality(kGamma).empty());
  EXPECT_EQ(lineality(HCone{3, {}, {}}).size(), 3u);
  std::vector<RVector> rows = kGamma.ineqRows;
  EXPECT_TRUE(kernel_basis(RMatrix::from_rows(rows, 2)).empty());
}

TEST(SpanPlus, Examples) {
  const HCone ray{2, {{0, 1}}, {{-1, 0}}};  // cone{(1,0)}
  const auto s = span_plus(ray);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(in_span(s, {1, 0}));
  EXPECT_EQ(span_plus(kGamma).size(), 2u);
  EXPECT_TRUE(span_plus(HCone{2, {{1, 0}, {0, 1}}, {}}).empty());
}

TEST(Membership, Examples) {
  const auto in = membership(HCone{3, {}, {{0, 0, 1}, {0, 0, 1}}}, {1, 1, 0});
  ASSERT_TRUE(in);
  EXPECT_EQ(*in, (IndexSet{0, 1}));
  EXPECT_FALSE(membership(kGamma, {0, 1}));
  EXPECT_EQ(*membership(kGamma, {0, 0}), (IndexSet{0, 1, 2}));
}

TEST(RelativeInterior, Examples) {
  const HCone ray{2, {{0, 1}}, {{-1, 0}}};
  EXPECT_FALSE(ri_member(ray, {0, 0}));
  EXPECT_TRUE(ri_member(ray, {3, 0}));
  EXPECT_TRUE(ri_member(kPlane, {0, 0, 0}));
}

TEST(Tangent, Examples) {
  EXPECT_TRUE(same_cone(tangent_cone(kGamma, {0, 0}), kGamma));
  const HCone ray{1, {}, {{-1}}};
  EXPECT_TRUE(same_cone(tangent_cone(ray, {1}), HCone{1, {}, {}}));
  EXPECT_TRUE(
      same_cone(tangent_cone(HCone{2, {}, {}}, {5, -1}), HCone{2, {}, {}}));
}

HPolyhedron segment() {
  HPolyhedron p;
  p.dim = 2;
  p.eq.push_back({{1, 1}, 1});
  p.ineq.push_back({{-1, 0}, 0});
  p.ineq.push_back({{0, -1}, 0});
  return p;
}

TEST(TangentOfPolyhedron, Segment) {
  const HCone t = tangent_of_polyhedron(segment(), {Rational(1, 2), Rational(1, 2)});
  EXPECT_TRUE(same_cone(t, HCone{2, {{1, 1}}, {}}));
  const VCone n = normal_of_polyhedron(segment(), {1, 0});
  EXPECT_TRUE(same_cone(v_to_h(n), v_to_h(VCone{2, {{1, 1}}, {{0, -1}}})));
  EXPECT_TRUE(same_cone(v_to_h(n), polar(tangent_of_polyhedron(segment(), {1, 0}))));
  const VCone ri = minimal(
      normal_of_polyhedron(segment(), {Rational(1, 2), Rational(1, 2)}));
  EXPECT_TRUE(ri.rays.empty());
  EXPECT_EQ(ri.lineality.size(), 1u);
}

TEST(CriticalCone, Examples) {
  EXPECT_TRUE(same_cone(critical_cone(kPlane, {1, 1, 0}, {0, 0, 0}), kPlane));
  EXPECT_TRUE(same_cone(critical_cone(HCone{1, {}, {{1}}}, {0}, {1}),
                        HCone{1, {{1}}, {}}));
  HPolyhedron halfline{1, {}, {{{1}, 0}}};
  EXPECT_TRUE(same_cone(critical_cone(halfline, {0}, {1}), HCone{1, {{1}}, {}}));
  EXPECT_TRUE(same_cone(critical_cone(segment(), {Rational(1, 2), Rational(1, 2)},
                                      {1, 1}),
                        HCone{2, {{1, 1}}, {}}));
}

TEST(CriticalCone, RejectsNonNormal) {
  EXPECT_THROW(critical_cone(kGamma, {0, 0}, {-1, 0}), Error);
}

TEST(Faces, Examples) {
  EXPECT_EQ(faces(HCone{1, {}, {{1}}}).size(), 2u);
  EXPECT_EQ(faces(kGamma).size(), 4u);
  EXPECT_EQ(faces(kPlane).size(), 1u);
}

TEST(FaceDifference, Examples) {
  const auto fp = faces(kPlane);
  EXPECT_TRUE(same_cone(face_difference(kPlane, fp[0], fp[0]), kPlane));
  const HCone half{1, {}, {{1}}};
  const FaceDescriptor whole = face_of(half, {-1});
  const FaceDescriptor zero = face_of(half, {0});
  EXPECT_TRUE(same_cone(face_difference(half, whole, zero), half));
  EXPECT_TRUE(same_cone(face_difference(half, whole, whole), HCone{1, {}, {}}));
  EXPECT_TRUE(same_cone(face_difference(half, zero, zero), HCone{1, {{1}}, {}}));
}

TEST(LimitingNormal, ComplementarityBranches) {
  HPolyhedron halfline{1, {}, {{{1}, 0}}};
  const auto b = limiting_normal_gph(halfline, {0}, {0});
  ASSERT_EQ(b.size(), 3u);
  std::vector<HCone> products;
  for (const auto& x : b) products.push_back(product(x.polarPart, x.conePart));
  const std::vector<HCone> expected{
      HCone{2, {{0, 1}}, {}},              // free x {0}
      HCone{2, {{1, 0}}, {}},              // {0} x free
      HCone{2, {}, {{-1, 0}, {0, 1}}}};    // R+ x R-
  for (const auto& e : expected) {
    EXPECT_TRUE(std::any_of(products.begin(), products.end(),
                            [&](const HCone& p) { return same_cone(p, e); }));
  }
  HPolyhedron line{2, {{{1, -1}, 0}}, {}};
  EXPECT_EQ(limiting_normal_gph(line, {1, 1}, {2, -2}).size(), 1u);
}

TEST(ConeProperties, RandomSuite) {
  const testing::Tally t = testing::cone_suite(6001, 200);
  EXPECT_EQ(t.failures, 0) << t.summary();
  EXPECT_EQ(t.instances, 200);
}

TEST(ConeProperties, FaceUnion) {
  const testing::Tally t = testing::face_union_suite(7001, 50);
  EXPECT_EQ(t.failures, 0) << t.summary();
}

TEST(ConeProperties, Determinism) {
  EXPECT_EQ(testing::cone_suite(42, 10).checks,
            testing::cone_suite(42, 10).checks);
}

}  // namespace
}  // namespace mpecstat
