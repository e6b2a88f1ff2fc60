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
#include "mpecstat/stationarity.hpp"
#include "properties.hpp"

namespace mpecstat {
namespace {

using testing::example1;
using testing::example2;
using testing::Rng;

const Rational kHalf(1, 2);

SharpCertificate example1_certificate() {
  SharpCertificate c;
  c.vbar = {1, 1, 0};
  c.lambdabar = {kHalf, kHalf};
  c.zbar = RVector{0, 0, 0};
  c.I = c.Iplus = c.J = c.Jplus = {0, 1};
  c.w = {-1, -1, 0};
  c.eta = {0, 0};
  c.xi = {1, 0};
  c.sigma = {0, 0};
  c.deltav = {0, 0, 0};
  c.sDeltav = {0, 0, 0};
  c.muBar = {0, 0};
  c.sW = {0, 0, 1};
  return c;
}

Verdict verdict_of(const AuditReport& r, const std::string& id) {
  const ConditionResult* c = r.find(id);
  return c ? c->verdict : Verdict::kFail;
}

class Example1Stationarity : public ::testing::Test {
 protected:
  ProblemData d = example1();
  PointGeometry g = analyze_point(d);
};

TEST_F(Example1Stationarity, CertificatePasses) {
  const AuditReport r = verify_sharp(d, g, example1_certificate());
  EXPECT_EQ(r.overall(), Verdict::kPass);
  for (const char* id : {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k",
                         "l", "m", "n"}) {
    EXPECT_EQ(verdict_of(r, id), Verdict::kPass) << id;
  }
  ASSERT_NE(r.find("furthermore"), nullptr);
  EXPECT_NE(r.find("furthermore")->detail.find("case (a)"), std::string::npos);
}

TEST_F(Example1Stationarity, FaceViewMatchesIndexForm) {
  const FaceView fv = sharp_face_view(d, g, example1_certificate());
  EXPECT_EQ(fv.report.overall(), Verdict::kPass);
  const HCone plane{3, {{0, 0, 1}}, {}};
  const HCone tl{2, {{1, 1}}, {}};
  EXPECT_TRUE(same_cone(fv.criticalV, plane));
  EXPECT_TRUE(same_cone(fv.tangentLambda, tl));
  EXPECT_TRUE(same_cone(fv.diffV, plane));
  EXPECT_TRUE(same_cone(fv.diffL, tl));
  EXPECT_TRUE(same_cone(polar(fv.diffV), HCone{3, {{1, 0, 0}, {0, 1, 0}}, {}}));
}

TEST_F(Example1Stationarity, WrongDirectionFails) {
  SharpCertificate c = example1_certificate();
  c.w = {1, 0, 0};
  const AuditReport r = verify_sharp(d, g, c);
  EXPECT_EQ(r.overall(), Verdict::kFail);
  EXPECT_EQ(verdict_of(r, "n"), Verdict::kFail);
  EXPECT_EQ(verdict_of(r, "a"), Verdict::kFail);
}

TEST_F(Example1Stationarity, BadShapesThrow) {
  SharpCertificate c = example1_certificate();
  c.w.pop_back();
  try {
    verify_sharp(d, g, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST_F(Example1Stationarity, SearchFindsVerifiedCertificate) {
  const SharpSearchResult s = search_sharp(d, g);
  ASSERT_TRUE(s.found);
  EXPECT_EQ(s.verdict, Verdict::kPass);
  EXPECT_EQ(verify_sharp(d, g, s.cert).overall(), Verdict::kPass);
  EXPECT_TRUE(g.criticalCone.contains(s.cert.vbar));
  EXPECT_FALSE(is_zero(s.cert.vbar));
  const SharpSearchResult again = search_sharp(d, g);
  EXPECT_EQ(again.cert, s.cert);
  EXPECT_EQ(again.combinationsTried, s.combinationsTried);
}

TEST_F(Example1Stationarity, CorollaryNotApplicable) {
  EXPECT_EQ(corollary_unique_check(d, g).kind,
            CorollaryResult::Kind::kNotApplicable);
  EXPECT_THROW(sharp_vs_mstat_audit(d, g, example1_certificate()), Error);
}

TEST_F(Example1Stationarity, MscqSatisfied) {
  EXPECT_EQ(mscq_sufficient_check(d, g).kind, MscqResult::Kind::kSatisfied);
}

// Example 2 by hand. With lambda = 0 every index is biactive and
// grad g^T w = (w1, -w2, w1 + w2). The x-row gives w1 + w2 = 1, so index 3
// has grad g_3^T w = 1 and xi3 = 0. The y-rows give xi1 = 2 w1 - 1 and
// xi2 = 1 - w2 = w1. Index 1: (2 w1 - 1) w1 = 0 since xi1 > 0 > w1 is
// impossible, so w1 in {0, 1/2}. Index 2 with w1 = 1/2: xi2 = 1/2 > 0 and
// grad g_2^T w = -1/2 < 0. Hence exactly two solutions.
class Example2Stationarity : public ::testing::Test {
 protected:
  ProblemData d = example2();
  PointGeometry g = analyze_point(d);
};

TEST_F(Example2Stationarity, TwoMStationaryClasses) {
  const auto certs = search_mstat(d, g);
  ASSERT_EQ(certs.size(), 2u);
  std::vector<std::pair<RVector, RVector>> got;
  for (const auto& c : certs) {
    EXPECT_TRUE(verify_mstat(d, c).passed());
    EXPECT_EQ(c.lambda, (RVector{0, 0, 0}));
    got.emplace_back(c.w, c.xi);
  }
  std::sort(got.begin(), got.end());
  const std::vector<std::pair<RVector, RVector>> want{
      {{0, 1}, {-1, 0, 0}}, {{kHalf, kHalf}, {0, kHalf, 0}}};
  EXPECT_EQ(got, want);
  for (const auto& c : certs) {
    if (c.w == RVector{0, 1}) {
      using B = BranchTag;
      EXPECT_EQ(c.branches,
                (std::vector<std::pair<std::size_t, B>>{
                    {0, B::kGradWZero}, {1, B::kXiZero}, {2, B::kXiZero}}));
    }
  }
}

TEST_F(Example2Stationarity, WrongMultiplierDirectionFails) {
  MStatCertificate c{{0, 0, 0}, {1, 0}, {0, 0, 1}, {}, {}};
  const AuditReport r = verify_mstat(d, c);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(verdict_of(r, "f"), Verdict::kFail);
  MStatCertificate bad{{1, 0, 0}, {0, 1}, {-1, 0, 0}, {}, {}};
  EXPECT_THROW(verify_mstat(d, bad), Error);
}

TEST_F(Example2Stationarity, SecondClassYieldsCorollaryCertificate) {
  const CorollaryResult r = corollary_unique_check(d, g);
  ASSERT_EQ(r.kind, CorollaryResult::Kind::kFound);
  EXPECT_EQ(r.cert.vbar, (RVector{-1, 0}));
  EXPECT_TRUE(r.cert.Iplus.empty());
  EXPECT_EQ(r.cert.w, (RVector{kHalf, kHalf}));
  EXPECT_EQ(r.cert.xi, (RVector{0, kHalf, 0}));
  EXPECT_TRUE(verify_corollary(d, g, r.cert).passed());
  EXPECT_TRUE(sharp_vs_mstat_audit(d, g, r.cert).passed());
  EXPECT_EQ(verify_sharp(d, g, corollary_to_sharp(d, g, r.cert)).overall(),
            Verdict::kPass);
  // v = (0, 1) is outside the critical cone: v1 + v2 = 1 > 0.
  EXPECT_FALSE(g.criticalCone.contains({0, 1}));
}

TEST_F(Example2Stationarity, SharpSearchFindsCaseA) {
  const SharpSearchResult s = search_sharp(d, g);
  ASSERT_TRUE(s.found);
  EXPECT_EQ(s.cert.vbar, (RVector{-1, 0}));
  EXPECT_EQ(s.cert.w, (RVector{kHalf, kHalf}));
  EXPECT_EQ(verify_sharp(d, g, s.cert).overall(), Verdict::kPass);
}

TEST_F(Example2Stationarity, MscqSatisfied) {
  const MscqResult r = mscq_sufficient_check(d, g);
  EXPECT_EQ(r.kind, MscqResult::Kind::kSatisfied) << r.reason;
}

TEST(Mscq, ContractCases) {
  ProblemData d = example2();
  d.lowerMscqAsserted = false;
  EXPECT_EQ(mscq_sufficient_check(d, analyze_point(d)).kind,
            MscqResult::Kind::kInconclusive);

  d = example2();
  d.p = 1;
  d.GVal = {0};
  d.jacGupper = RMatrix{{1, 1, 0}};
  const MscqResult r = mscq_sufficient_check(d, analyze_point(d));
  EXPECT_EQ(r.kind, MscqResult::Kind::kInconclusive);
  EXPECT_EQ(r.reason, "coupled-branch");
}

TEST(Mscq, NegativeDefiniteIsViolated) {
  ProblemData d;
  d.n = 1;
  d.m = 2;
  d.q = 1;
  d.gradF = {0, 0, 0};
  d.phiVal = {0, 0};
  d.jacPhi = RMatrix{{0, -1, 0}, {0, 0, -1}};
  d.gVal = {-1};
  d.jacG = RMatrix{{1, 0}};
  d.hessG = {RMatrix(2, 2)};
  d.jacGupper = RMatrix(0, 3);
  d.assumption1Asserted = d.lowerMscqAsserted = d.upperMscqAsserted = true;
  const MscqResult r = mscq_sufficient_check(d, analyze_point(d));
  ASSERT_EQ(r.kind, MscqResult::Kind::kViolated) << r.reason;
  ASSERT_TRUE(r.witness);
  EXPECT_FALSE(is_zero(r.witness->w));
  EXPECT_LT(dot(r.witness->w, d.jac_phi_y() * r.witness->w), 0);
}

TEST(ZeroProblem, Trivial) {
  const ProblemData d = testing::zero_problem();
  const PointGeometry g = analyze_point(d);
  EXPECT_TRUE(verify_mstat(d, {{0}, {0}, {0}, {}, {}}).passed());
  const SharpSearchResult s = search_sharp(d, g);
  ASSERT_TRUE(s.found);
  EXPECT_EQ(verify_sharp(d, g, s.cert).overall(), Verdict::kPass);
  const auto m = search_mstat(d, g);
  EXPECT_FALSE(m.empty());
}

TEST(Soundness, SearchResultsVerify) {
  Rng rng(31);
  int found = 0, tried = 0;
  for (int t = 0; t < 60; ++t) {
    RVector lambda0;
    const ProblemData d = testing::random_problem(
        rng, 1, rng.uniform(1, 2), rng.uniform(0, 1), rng.uniform(1, 2), lambda0);
    std::optional<PointGeometry> g;
    try {
      g = analyze_point(d);
    } catch (const Error&) {
      continue;
    }
    ++tried;
    for (const auto& c : search_mstat(d, *g))
      EXPECT_TRUE(verify_mstat(d, c).passed());
    const SharpSearchResult s = search_sharp(d, *g);
    if (s.found) {
      ++found;
      const AuditReport r = verify_sharp(d, *g, s.cert);
      EXPECT_EQ(r.overall(), s.verdict);
      EXPECT_NE(r.overall(), Verdict::kFail);
      if (r.overall() == Verdict::kPass) {
        EXPECT_EQ(sharp_face_view(d, *g, s.cert).report.overall(),
                  Verdict::kPass);
      }
    }
    const CorollaryResult c = corollary_unique_check(d, *g);
    if (c.kind == CorollaryResult::Kind::kFound) {
      EXPECT_TRUE(verify_corollary(d, *g, c.cert).passed());
    }
  }
  EXPECT_GE(tried, 30);
  EXPECT_GT(found, 0);
}

TEST(Properties, MStationarityAgreesWithLimitingNormals) {
  const testing::Tally t = testing::mstat_limiting_suite(7002, 50);
  EXPECT_EQ(t.failures, 0) << t.summary();
  EXPECT_EQ(t.instances, 50);
}

TEST(Properties, ImplicationAudit) {
  const testing::Tally t = testing::implication_suite(9001, 20);
  EXPECT_EQ(t.failures, 0) << t.summary();
  EXPECT_EQ(t.instances, 20);
}

}  // namespace
}  // namespace mpecstat
