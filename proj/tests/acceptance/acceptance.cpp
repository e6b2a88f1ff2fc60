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


// Prints one [PASS]/[FAIL] line per acceptance criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mpecstat/error.hpp"
#include "mpecstat/linalg.hpp"
#include "mpecstat/stationarity.hpp"
#include "properties.hpp"

namespace {

using namespace mpecstat;
using namespace mpecstat::testing;

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << "    mismatch: " << what << "\n";
    }
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double budgetMs;
  std::function<void(Outcome&)> run;
};

HPolyhedron segment() {
  HPolyhedron p;
  p.dim = 2;
  p.eq.push_back({{1, 1}, 1});
  p.ineq.push_back({{-1, 0}, 0});
  p.ineq.push_back({{0, -1}, 0});
  return p;
}

HCone plane_r2() { return HCone{3, {{0, 0, 1}}, {}}; }

void ac1(Outcome& o) {
  const ProblemData d = example1();
  const PointGeometry g = analyze_point(d);
  o.expect(g.activeLower == IndexSet{0, 1}, "active set");
  o.expect(minimal(g.criticalCone) == minimal(plane_r2()), "critical cone");
  o.expect(g.multiplierSet.canonical() == segment().canonical() ||
               same_polyhedron(g.multiplierSet, segment()),
           "multiplier set");
  o.expect(g.extremeMultipliers == std::vector<RVector>{{0, 1}, {1, 0}},
           "extreme multipliers " + std::to_string(g.extremeMultipliers.size()));
  o.expect(g.jPlusAll == IndexSet{0, 1}, "J+");
}

void ac2(Outcome& o) {
  const ProblemData d = example1();
  const PointGeometry g = analyze_point(d);
  auto verts = [&](const RVector& v) { return directional(d, g, v).vertices; };
  o.expect(verts({1, 0, 0}) == std::vector<RVector>{{1, 0}}, "Lambda((1,0,0))");
  o.expect(verts({0, 1, 0}) == std::vector<RVector>{{0, 1}}, "Lambda((0,1,0))");
  o.expect(same_polyhedron(directional(d, g, {1, 1, 0}).dirMultipliers,
                           g.multiplierSet),
           "Lambda((1,1,0))");
  const std::vector<RVector> yes{
      {1, 1, 0}, {1, -1, 0}, {1, 0, 0}, {0, 1, 0}, {2, 1, 0}};
  for (const auto& v : yes)
    o.expect(check_2_nondegenerate(d, g, v).nondegenerate,
             "2-nondegenerate at " + to_string(v));
  o.expect(!check_2_nondegenerate(d, g, zeros(3)).nondegenerate,
           "degenerate at 0");
}

SharpCertificate example1_certificate() {
  SharpCertificate c;
  c.vbar = {1, 1, 0};
  c.lambdabar = {Rational(1, 2), Rational(1, 2)};
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

void ac3(Outcome& o) {
  const ProblemData d = example1();
  const PointGeometry g = analyze_point(d);
  const SharpCertificate c = example1_certificate();
  const AuditReport r = verify_sharp(d, g, c);
  o.expect(r.overall() == Verdict::kPass, "verify_sharp overall");
  const ConditionResult* fur = r.find("furthermore");
  o.expect(fur && fur->detail.find("case (a)") != std::string::npos,
           "furthermore via case (a)");
  const FaceView fv = sharp_face_view(d, g, c);
  o.expect(fv.report.overall() == Verdict::kPass, "face view audit");
  const HCone tl{2, {{1, 1}}, {}};
  o.expect(same_cone(face_cone(fv.criticalV, fv.f1v), plane_r2()) &&
               same_cone(face_cone(fv.criticalV, fv.f2v), plane_r2()),
           "F1v = F2v = K");
  o.expect(same_cone(face_cone(fv.tangentLambda, fv.f1l), tl) &&
               same_cone(face_cone(fv.tangentLambda, fv.f2l), tl),
           "F1l = F2l = T(lambda)");
  const SharpSearchResult s = search_sharp(d, g);
  o.expect(s.found && s.verdict == Verdict::kPass &&
               verify_sharp(d, g, s.cert).overall() == Verdict::kPass,
           "search_sharp finds a passing certificate");
}

void ac4(Outcome& o) {
  const ProblemData d = example2();
  const PointGeometry g = analyze_point(d);
  const auto certs = search_mstat(d, g);
  o.expect(certs.size() == 1, "search_mstat returned " +
                                  std::to_string(certs.size()) +
                                  " classes, expected exactly 1");
  for (const auto& c : certs)
    o.notes << "    class: w=" << to_string(c.w) << " xi=" << to_string(c.xi)
            << "\n";
  const bool reference = std::any_of(
      certs.begin(), certs.end(), [](const MStatCertificate& c) {
        return c.w == RVector{0, 1} && c.xi == RVector{-1, 0, 0};
      });
  o.expect(reference, "class w=(0,1), xi=(-1,0,0) present");
  const CorollaryResult cr = corollary_unique_check(d, g);
  o.expect(cr.kind == CorollaryResult::Kind::kNone,
           cr.kind == CorollaryResult::Kind::kFound
               ? "corollary found a certificate at vbar=" +
                     to_string(cr.cert.vbar) + " with w=" + to_string(cr.cert.w)
               : "corollary result is not None");
  const SharpSearchResult s = search_sharp(d, g);
  o.expect(!s.found, "search_sharp found a certificate with vbar=" +
                         to_string(s.cert.vbar) + " w=" + to_string(s.cert.w));
  if (s.found) {
    o.notes << "    the found certificate verifies: "
            << verdict_name(verify_sharp(d, g, s.cert).overall())
            << "; the stationarity system has a second solution, so the "
               "reference uniqueness claim does not hold for this data\n";
  }
}

void ac5(Outcome& o) {
  const ProblemData d = example2();
  const PointGeometry g = analyze_point(d);
  const MscqResult r = mscq_sufficient_check(d, g);
  o.expect(r.kind == MscqResult::Kind::kSatisfied, "mscq: " + r.reason);
  o.expect(psd_on_kernel(symmetrize(d.jac_phi_y()), RMatrix(0, 2)).kind ==
               PsdResult::Kind::kPositiveDefinite,
           "sym(grad_y phi) positive definite on R^2");
}

void tally_outcome(Outcome& o, const Tally& t, int need, const char* what) {
  o.notes << "    " << what << ": " << t.instances << " instances, "
          << t.checks << " checks, " << t.failures << " failures";
  if (!t.note.empty()) o.notes << " (" << t.note << ")";
  o.notes << "\n";
  for (const auto& m : t.messages) o.notes << "      " << m << "\n";
  o.expect(t.failures == 0, std::string(what) + " has failures");
  o.expect(t.instances >= need, std::string(what) + " sampled too few");
}

void ac6(Outcome& o) { tally_outcome(o, cone_suite(6001, 200), 200, "cones"); }

void ac7(Outcome& o) {
  tally_outcome(o, face_union_suite(7001, 50), 50, "face union");
  tally_outcome(o, mstat_limiting_suite(7002, 50), 50, "M-stat branches");
}

void ac8(Outcome& o) {
  int fired = 0;
  tally_outcome(o, duality_pairing_suite(8001, 50, &fired), 50,
                "tangent pairs");
  o.expect(fired == 0, "decomposition audit fired");
}

void ac9(Outcome& o) {
  tally_outcome(o, implication_suite(9001, 20), 20, "singleton instances");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "Example 1 geometry", 1000, ac1},
      {"AC2", "Example 1 directional structure", 1000, ac2},
      {"AC3", "Example 1 certificate", 10000, ac3},
      {"AC4", "Example 2 separation", 10000, ac4},
      {"AC5", "Example 2 MSCQ", 1000, ac5},
      {"AC6", "cone property suite", 60000, ac6},
      {"AC7", "face union and limiting normals", 60000, ac7},
      {"AC8", "duality pairing", 60000, ac8},
      {"AC9", "implication audit", 30000, ac9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    o.expect(ms < c.budgetMs, "runtime over budget");
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title
              << " (" << static_cast<long>(ms) << " ms)\n"
              << o.notes.str() << std::flush;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
