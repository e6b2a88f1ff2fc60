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


#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpecstat/error.hpp"
#include "mpecstat/stationarity.hpp"
#include "problem_io.hpp"

namespace {

using namespace mpecstat;
using io::Json;

enum Exit { kOk = 0, kNegative = 1, kUndecided = 2, kUsage = 3 };

RVector parse_cli_vector(const std::string& text, std::size_t size,
                         const std::string& flag) {
  std::string s = text;
  if (!s.empty() && s.front() == '[') {
    return io::parse_vector(Json::parse(s), flag, size);
  }
  RVector v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(parse_rational(item));
  if (v.size() != size) {
    throw Error(ErrorCode::kShapeError,
                flag + ": length " + std::to_string(v.size()) + ", expected " +
                    std::to_string(size));
  }
  return v;
}

std::string hcone_text(const HCone& k, const char* indent) {
  std::ostringstream out;
  for (const auto& r : k.eqRows) out << indent << to_string(r) << " . v = 0\n";
  for (const auto& r : k.ineqRows)
    out << indent << to_string(r) << " . v <= 0\n";
  if (k.eqRows.empty() && k.ineqRows.empty()) out << indent << "(whole space)\n";
  return out.str();
}

Json hcone_json(const HCone& k) {
  Json eq = Json::array(), in = Json::array();
  for (const auto& r : k.eqRows) eq.push_back(io::to_json(r));
  for (const auto& r : k.ineqRows) in.push_back(io::to_json(r));
  return {{"eq", eq}, {"ineq", in}};
}

Json vcone_json(const VCone& k) {
  Json lin = Json::array(), rays = Json::array();
  for (const auto& r : k.lineality) lin.push_back(io::to_json(r));
  for (const auto& r : k.rays) rays.push_back(io::to_json(r));
  return {{"lineality", lin}, {"rays", rays}};
}

Json polyhedron_json(const HPolyhedron& p) {
  Json eq = Json::array(), in = Json::array();
  for (const auto& r : p.eq)
    eq.push_back({{"a", io::to_json(r.a)}, {"b", io::to_json(r.b)}});
  for (const auto& r : p.ineq)
    in.push_back({{"a", io::to_json(r.a)}, {"b", io::to_json(r.b)}});
  return {{"eq", eq}, {"ineq", in}};
}

Json vector_list_json(const std::vector<RVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(io::to_json(v));
  return a;
}

void print_report(const AuditReport& r) {
  for (const auto& c : r.conditions) {
    std::cout << "  [" << verdict_name(c.verdict) << "] " << c.id;
    if (!c.detail.empty()) std::cout << "  " << c.detail;
    std::cout << "\n";
  }
  std::cout << "overall: " << verdict_name(r.overall()) << "\n";
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return kOk;
    case Verdict::kConditional:
      return kUndecided;
    case Verdict::kFail:
      return kNegative;
  }
  return kNegative;
}

struct Options {
  std::string problem;
  std::string cert;
  std::string v, vstar;
  std::vector<std::string> directions;
  bool json = false;
  bool faces = false;
};

template <class T>
const T& require_cert(const io::ProblemFile& f, const Options& o,
                      std::optional<io::Certificate>& holder,
                      const char* kind) {
  if (!o.cert.empty()) {
    holder = io::parse_certificate(io::read_json(o.cert), f.data);
  } else {
    holder = f.certificate;
  }
  if (!holder) {
    throw Error(ErrorCode::kInvalidArgument, "no certificate given (--cert)");
  }
  if (!std::holds_alternative<T>(*holder)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("certificate is not of kind '") + kind + "'");
  }
  return std::get<T>(*holder);
}

void emit(const Json& j, bool json, const std::string& text) {
  if (json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int cmd_analyze(const io::ProblemFile& f, const Options& o) {
  const PointGeometry g = analyze_point(f.data);
  Json j{{"command", "analyze"},
         {"active", io::index_json(g.activeLower)},
         {"critical_cone", {{"h", hcone_json(g.criticalCone)},
                            {"v", vcone_json(minimal(h_to_v(g.criticalCone)))}}},
         {"multiplier_set", polyhedron_json(g.multiplierSet)},
         {"extreme_multipliers", vector_list_json(g.extremeMultipliers)},
         {"j_plus", io::index_json(g.jPlusAll)}};
  std::ostringstream t;
  const VCone kv = minimal(h_to_v(g.criticalCone));
  t << "active set I: " << to_string(g.activeLower) << "\n"
    << "critical cone K (H-form):\n" << hcone_text(g.criticalCone, "  ")
    << "critical cone K (V-form): lineality";
  for (const auto& l : kv.lineality) t << " " << to_string(l);
  t << "; rays";
  for (const auto& r : kv.rays) t << " " << to_string(r);
  t << "\nmultiplier set: " << g.multiplierSet.eq.size() << " equalities, "
    << g.multiplierSet.ineq.size() << " inequalities\nextreme multipliers:";
  for (const auto& e : g.extremeMultipliers) t << " " << to_string(e);
  t << "\nJ+(Lambda): " << to_string(g.jPlusAll) << "\n";
  emit(j, o.json, t.str());
  return kOk;
}

int cmd_directional(const io::ProblemFile& f, const Options& o) {
  const PointGeometry g = analyze_point(f.data);
  const RVector v = parse_cli_vector(o.v, f.data.m, "--v");
  const DirectionalData dir = directional(f.data, g, v);
  const NondegeneracyResult nd = check_2_nondegenerate(f.data, g, v);
  Json j{{"command", "directional"},
         {"v", io::to_json(v)},
         {"active", io::index_json(dir.activeAtV)},
         {"multipliers", vector_list_json(dir.vertices)},
         {"j_plus", io::index_json(dir.jPlusDir)},
         {"nondegenerate", nd.nondegenerate}};
  if (!nd.nondegenerate) j["witness"] = io::to_json(nd.witness);
  std::ostringstream t;
  t << "I(v): " << to_string(dir.activeAtV) << "\nLambda(v) vertices:";
  for (const auto& x : dir.vertices) t << " " << to_string(x);
  t << "\nJ+(Lambda(v)): " << to_string(dir.jPlusDir)
    << "\n2-nondegenerate: " << (nd.nondegenerate ? "yes" : "no");
  if (!nd.nondegenerate) t << " (witness " << to_string(nd.witness) << ")";
  t << "\n";
  emit(j, o.json, t.str());
  return kOk;
}

int cmd_tangent(const io::ProblemFile& f, const Options& o) {
  const PointGeometry g = analyze_point(f.data);
  const RVector v = parse_cli_vector(o.v, f.data.m, "--v");
  const RVector vs = parse_cli_vector(o.vstar, f.data.m, "--vstar");
  const TangentMembership t = tangent_gph_member(f.data, g, v, vs);
  Json j{{"command", "tangent"}, {"member", t.member}};
  std::ostringstream s;
  s << "tangent: " << (t.member ? "yes" : "no") << "\n";
  if (t.member) {
    j["lambda"] = io::to_json(t.lambda);
    j["zstar"] = io::to_json(t.zstar);
    if (check_2_nondegenerate(f.data, g, v).nondegenerate) {
      const Decomposition dec = decompose_tangent_pair(f.data, g, v, vs);
      j["decomposition"] = {{"lambdabar", io::to_json(dec.lambdabar)},
                            {"zbar", io::to_json(dec.zbar)}};
      s << "decomposition: lambda " << to_string(dec.lambdabar) << ", z* "
        << to_string(dec.zbar) << "\n";
    } else {
      s << "witness: lambda " << to_string(t.lambda) << ", z* "
        << to_string(t.zstar) << " (not unique)\n";
    }
  } else if (!t.farkas.empty()) {
    j["farkas"] = io::to_json(t.farkas);
    s << "farkas certificate: " << to_string(t.farkas) << "\n";
  }
  emit(j, o.json, s.str());
  return t.member ? kOk : kNegative;
}

int cmd_verify_sharp(const io::ProblemFile& f, const Options& o) {
  std::optional<io::Certificate> holder;
  const auto& cert = require_cert<SharpCertificate>(f, o, holder, "sharp");
  const PointGeometry g = analyze_point(f.data);
  const AuditReport r = verify_sharp(f.data, g, cert, f.sigma);
  Json j{{"command", "verify-sharp"}, {"report", io::to_json(r)}};
  std::optional<FaceView> fv;
  if (o.faces) {
    try {
      fv = sharp_face_view(f.data, g, cert);
      j["face_view"] = io::to_json(fv->report);
      j["face_view"]["zbar"] = io::to_json(fv->zbar);
      j["face_view"]["diff_v"] = hcone_json(fv->diffV);
      j["face_view"]["diff_lambda"] = hcone_json(fv->diffL);
    } catch (const Error& e) {
      j["face_view"] = {{"error", e.what()}};
    }
  }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    print_report(r);
    if (fv) {
      std::cout << "face view:\n";
      print_report(fv->report);
    }
  }
  return verdict_exit(r.overall());
}

int cmd_search_sharp(const io::ProblemFile& f, const Options& o) {
  const PointGeometry g = analyze_point(f.data);
  std::vector<RVector> dirs = f.directions;
  for (const auto& d : o.directions)
    dirs.push_back(parse_cli_vector(d, f.data.m, "--direction"));
  const SharpSearchResult r = search_sharp(f.data, g, dirs, f.sigma);
  Json j{{"command", "search-sharp"},
         {"found", r.found},
         {"catalog", r.catalog},
         {"combinations", r.combinationsTried}};
  if (r.found) {
    j["verdict"] = std::string(verdict_name(r.verdict));
    j["certificate"] = io::to_json(r.cert);
  }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else if (r.found) {
    std::cout << "Found (" << verdict_name(r.verdict) << ")\n"
              << io::to_json(r.cert).dump(2) << "\n";
  } else {
    std::cout << "NotFoundWithinCatalog: " << r.catalog << "\n";
  }
  if (!r.found) return kNegative;
  return verdict_exit(r.verdict);
}

int cmd_verify_mstat(const io::ProblemFile& f, const Options& o) {
  std::optional<io::Certificate> holder;
  const auto& cert = require_cert<MStatCertificate>(f, o, holder, "mstat");
  const AuditReport r = verify_mstat(f.data, cert);
  if (o.json) {
    std::cout << Json{{"command", "verify-mstat"}, {"report", io::to_json(r)}}
                     .dump(2)
              << "\n";
  } else {
    print_report(r);
  }
  return verdict_exit(r.overall());
}

int cmd_search_mstat(const io::ProblemFile& f, const Options& o) {
  const PointGeometry g = analyze_point(f.data);
  const auto certs = search_mstat(f.data, g);
  Json list = Json::array();
  for (const auto& c : certs) list.push_back(io::to_json(c));
  std::ostringstream t;
  t << certs.size() << " certificate class(es)\n";
  for (const auto& c : certs) {
    t << "  lambda " << to_string(c.lambda) << " w " << to_string(c.w)
      << " xi " << to_string(c.xi) << " sigma " << to_string(c.sigma)
      << " tags";
    for (const auto& [i, tag] : c.branches)
      t << " " << i + 1 << ":" << branch_name(tag);
    t << "\n";
  }
  emit(Json{{"command", "search-mstat"}, {"certificates", list}}, o.json,
       t.str());
  return certs.empty() ? kNegative : kOk;
}

int cmd_corollary(const io::ProblemFile& f, const Options& o) {
  const PointGeometry g = analyze_point(f.data);
  const CorollaryResult r = corollary_unique_check(f.data, g, f.directions);
  const char* name = r.kind == CorollaryResult::Kind::kFound  ? "Found"
                     : r.kind == CorollaryResult::Kind::kNone ? "None"
                                                              : "NotApplicable";
  Json j{{"command", "corollary-unique"}, {"result", name}};
  std::string text = std::string(name) + "\n";
  if (r.kind == CorollaryResult::Kind::kFound) {
    j["certificate"] = io::to_json(r.cert);
    text += io::to_json(r.cert).dump(2) + "\n";
  }
  emit(j, o.json, text);
  switch (r.kind) {
    case CorollaryResult::Kind::kFound:
      return kOk;
    case CorollaryResult::Kind::kNone:
      return kNegative;
    case CorollaryResult::Kind::kNotApplicable:
      return kUndecided;
  }
  return kUndecided;
}

int cmd_mscq(const io::ProblemFile& f, const Options& o) {
  const PointGeometry g = analyze_point(f.data);
  const MscqResult r = mscq_sufficient_check(f.data, g);
  const char* name = r.kind == MscqResult::Kind::kSatisfied  ? "Satisfied"
                     : r.kind == MscqResult::Kind::kViolated ? "Violated"
                                                             : "Inconclusive";
  Json j{{"command", "mscq-check"}, {"result", name}, {"reason", r.reason}};
  if (r.witness) {
    j["witness"] = {{"u", io::to_json(r.witness->u)},
                    {"v", io::to_json(r.witness->v)},
                    {"lambda", io::to_json(r.witness->lambda)},
                    {"eta", io::to_json(r.witness->eta)},
                    {"w", io::to_json(r.witness->w)}};
  }
  emit(j, o.json, std::string(name) + ": " + r.reason + "\n");
  switch (r.kind) {
    case MscqResult::Kind::kSatisfied:
      return kOk;
    case MscqResult::Kind::kViolated:
      return kNegative;
    case MscqResult::Kind::kInconclusive:
      return kUndecided;
  }
  return kUndecided;
}

int cmd_probe(const io::ProblemFile& f, const Options& o) {
  const PointGeometry g = analyze_point(f.data);
  const RVector v = parse_cli_vector(o.v, f.data.m, "--v");
  const RVector vs = parse_cli_vector(o.vstar, f.data.m, "--vstar");
  const PolyhedralityProbe p = polyhedrality_probe(f.data, g, v, vs);
  const char* name =
      p.kind == PolyhedralityProbe::Kind::kLocallyPolyhedral ? "LocallyPolyhedral"
      : p.kind == PolyhedralityProbe::Kind::kNotLocallyPolyhedral
          ? "NotLocallyPolyhedral"
          : "Unknown";
  Json j{{"command", "probe-polyhedral"}, {"result", name}};
  std::string text = std::string(name);
  if (!p.witness.empty()) {
    j["witness"] = io::to_json(p.witness);
    text += " (witness " + to_string(p.witness) + ")";
  }
  emit(j, o.json, text + "\n");
  return p.kind == PolyhedralityProbe::Kind::kUnknown ? kUndecided : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stationarity analysis for MPECs with polyhedral lower-level constraints"};
  app.require_subcommand(1);
  Options o;

  struct Spec {
    const char* name;
    const char* help;
    int (*run)(const io::ProblemFile&, const Options&);
    bool v, vstar, cert, dirs;
  };
  const Spec specs[] = {
      {"analyze", "Point geometry: active set, critical cone, multipliers",
       cmd_analyze, false, false, false, false},
      {"directional", "Directional multipliers and 2-nondegeneracy at --v",
       cmd_directional, true, false, false, false},
      {"tangent", "Tangent membership and decomposition of (--v, --vstar)",
       cmd_tangent, true, true, false, false},
      {"verify-sharp", "Verify a sharp-condition certificate", cmd_verify_sharp,
       false, false, true, false},
      {"search-sharp", "Search for a sharp-condition certificate",
       cmd_search_sharp, false, false, false, true},
      {"verify-mstat", "Verify an M-stationarity certificate", cmd_verify_mstat,
       false, false, true, false},
      {"search-mstat", "Enumerate M-stationarity certificate classes",
       cmd_search_mstat, false, false, false, false},
      {"corollary-unique", "Singleton-multiplier condition", cmd_corollary,
       false, false, false, false},
      {"mscq-check", "Sufficient condition for MSCQ", cmd_mscq, false, false,
       false, false},
      {"probe-polyhedral", "Local polyhedrality probe at (--v, --vstar)",
       cmd_probe, true, true, false, false},
  };

  int (*selected)(const io::ProblemFile&, const Options&) = nullptr;
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("problem", o.problem, "Problem file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_flag("--json", o.json, "Machine-readable report");
    if (s.v) sub->add_option("--v", o.v, "Direction, e.g. 1,1/2,0")->required();
    if (s.vstar) sub->add_option("--vstar", o.vstar, "Dual direction")->required();
    if (s.cert) {
      sub->add_option("--cert", o.cert, "Certificate file (JSON)")
          ->check(CLI::ExistingFile);
    }
    if (std::string(s.name) == "verify-sharp")
      sub->add_flag("--faces", o.faces, "Also report the face-form view");
    if (s.dirs) {
      sub->add_option("--direction", o.directions, "Extra candidate direction")
          ->take_all();
    }
    sub->callback([&selected, run = s.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const io::ProblemFile f = io::load_problem(o.problem);
    return selected(f, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
