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


#include "problem_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "mpecstat/error.hpp"

namespace mpecstat::io {

namespace {

[[noreturn]] void parse_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kParseError, path + ": " + msg);
}

[[noreturn]] void shape_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kShapeError, path + ": " + msg);
}

const Json& member(const Json& j, const std::string& path,
                   const std::string& key) {
  if (!j.is_object()) parse_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_error(path, "missing member '" + key + "'");
  return *it;
}

const Json* optional_member(const Json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::size_t parse_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    parse_error(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

bool parse_flag(const Json& flags, const char* key) {
  const Json* f = optional_member(flags, key);
  if (!f) return false;
  if (!f->is_boolean()) parse_error(std::string("flags.") + key, "expected a boolean");
  return f->get<bool>();
}

std::vector<RVector> parse_vector_list(const Json& j, const std::string& path,
                                       std::size_t size) {
  if (!j.is_array()) parse_error(path, "expected an array");
  std::vector<RVector> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_vector(j[i], path + "[" + std::to_string(i) + "]", size));
  return out;
}

BranchTag parse_tag(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    for (BranchTag t : {BranchTag::kStrictBranch, BranchTag::kXiZero,
                        BranchTag::kGradWZero}) {
      if (s == branch_name(t)) return t;
    }
  }
  parse_error(path, "unknown branch tag");
}

}  // namespace

Rational parse_scalar(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) {
    throw Error(ErrorCode::kNonRationalLiteral,
                path + ": floating point literal " + j.dump());
  }
  if (!j.is_string()) parse_error(path, "expected an integer or \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

RVector parse_vector(const Json& j, const std::string& path,
                     std::optional<std::size_t> size) {
  if (!j.is_array()) parse_error(path, "expected an array");
  if (size && j.size() != *size) {
    shape_error(path, "length " + std::to_string(j.size()) + ", expected " +
                          std::to_string(*size));
  }
  RVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(parse_scalar(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

RMatrix parse_matrix(const Json& j, const std::string& path, std::size_t rows,
                     std::size_t cols) {
  if (!j.is_array()) parse_error(path, "expected an array of rows");
  if (j.size() != rows) {
    shape_error(path, std::to_string(j.size()) + " rows, expected " +
                          std::to_string(rows));
  }
  RMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const RVector row =
        parse_vector(j[r], path + "[" + std::to_string(r) + "]", cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

IndexSet parse_index_set(const Json& j, const std::string& path,
                         std::size_t bound) {
  if (!j.is_array()) parse_error(path, "expected an array of indices");
  IndexSet s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    const std::size_t k = parse_count(j[i], at);
    if (k < 1 || k > bound)
      shape_error(at, "index out of range 1.." + std::to_string(bound));
    s.push_back(k - 1);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

ProblemFile parse_problem(const Json& j) {
  ProblemFile f;
  ProblemData& d = f.data;
  const Json& dims = member(j, "", "dims");
  d.n = parse_count(member(dims, "dims", "n"), "dims.n");
  d.m = parse_count(member(dims, "dims", "m"), "dims.m");
  d.p = parse_count(member(dims, "dims", "p"), "dims.p");
  d.q = parse_count(member(dims, "dims", "q"), "dims.q");
  const std::size_t nm = d.n + d.m;
  d.gradF = parse_vector(member(j, "", "grad_F"), "grad_F", nm);
  d.phiVal = parse_vector(member(j, "", "phi"), "phi", d.m);
  d.jacPhi = parse_matrix(member(j, "", "jac_phi"), "jac_phi", d.m, nm);
  d.gVal = parse_vector(member(j, "", "g"), "g", d.q);
  d.jacG = parse_matrix(member(j, "", "jac_g"), "jac_g", d.q, d.m);
  const Json& hess = member(j, "", "hess_g");
  if (!hess.is_array() || hess.size() != d.q)
    shape_error("hess_g", "expected " + std::to_string(d.q) + " matrices");
  for (std::size_t i = 0; i < d.q; ++i) {
    d.hessG.push_back(parse_matrix(hess[i], "hess_g[" + std::to_string(i) + "]",
                                   d.m, d.m));
  }
  if (d.p > 0 || optional_member(j, "G_val")) {
    d.GVal = parse_vector(member(j, "", "G_val"), "G_val", d.p);
    d.jacGupper = parse_matrix(member(j, "", "jac_G"), "jac_G", d.p, nm);
  } else {
    d.jacGupper = RMatrix(0, nm);
  }
  if (const Json* flags = optional_member(j, "flags")) {
    d.assumption1Asserted = parse_flag(*flags, "assumption1");
    d.lowerMscqAsserted = parse_flag(*flags, "lower_mscq");
    d.upperMscqAsserted = parse_flag(*flags, "upper_mscq");
  }
  d.validate();
  if (const Json* dirs = optional_member(j, "directions"))
    f.directions = parse_vector_list(*dirs, "directions", d.m);
  if (const Json* s = optional_member(j, "sigma_choice"))
    f.sigma.points = parse_vector_list(*s, "sigma_choice", d.q);
  if (const Json* c = optional_member(j, "certificate"))
    f.certificate = parse_certificate(*c, d);
  return f;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParseError,
                path.string() + ": cannot open file");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

ProblemFile load_problem(const std::filesystem::path& path) {
  return parse_problem(read_json(path));
}

Certificate parse_certificate(const Json& doc, const ProblemData& d) {
  const Json* inner = doc.is_object() ? optional_member(doc, "certificate")
                                      : nullptr;
  const Json& j = inner ? *inner : doc;
  const std::string root = inner ? "certificate" : "";
  auto at = [&](const char* key) {
    return root.empty() ? std::string(key) : root + "." + key;
  };
  auto vec = [&](const char* key, std::size_t n) {
    return parse_vector(member(j, root, key), at(key), n);
  };
  auto idx = [&](const char* key) {
    return parse_index_set(member(j, root, key), at(key), d.q);
  };
  const Json& kindJ = member(j, root, "kind");
  if (!kindJ.is_string()) parse_error(at("kind"), "expected a string");
  const std::string kind = kindJ.get<std::string>();

  if (kind == "sharp") {
    SharpCertificate c;
    c.vbar = vec("vbar", d.m);
    c.lambdabar = vec("lambdabar", d.q);
    if (optional_member(j, "zbar")) c.zbar = vec("zbar", d.m);
    c.I = idx("I");
    c.Iplus = idx("Iplus");
    c.J = idx("J");
    c.Jplus = idx("Jplus");
    c.w = vec("w", d.m);
    c.eta = vec("eta", d.q);
    c.xi = vec("xi", d.q);
    c.sigma = vec("sigma", d.p);
    c.deltav = vec("deltav", d.m);
    c.sDeltav = vec("s_deltav", d.m);
    c.muBar = vec("mu_bar", d.q);
    c.sW = vec("s_w", d.m);
    if (const Json* c2 = optional_member(j, "case_II")) {
      c.caseII = CaseIIData{
          parse_vector(member(*c2, at("case_II"), "deltax"),
                       at("case_II") + ".deltax", d.n),
          parse_vector(member(*c2, at("case_II"), "alphas"),
                       at("case_II") + ".alphas", d.q)};
    }
    return c;
  }
  if (kind == "mstat") {
    MStatCertificate c;
    c.lambda = vec("lambda", d.q);
    c.w = vec("w", d.m);
    c.xi = vec("xi", d.q);
    c.sigma = vec("sigma", d.p);
    if (const Json* b = optional_member(j, "branches")) {
      if (!b->is_array()) parse_error(at("branches"), "expected an array");
      for (std::size_t k = 0; k < b->size(); ++k) {
        const std::string p = at("branches") + "[" + std::to_string(k) + "]";
        const std::size_t i = parse_count(member((*b)[k], p, "index"), p + ".index");
        if (i < 1 || i > d.q) shape_error(p + ".index", "index out of range");
        c.branches.emplace_back(i - 1,
                                parse_tag(member((*b)[k], p, "tag"), p + ".tag"));
      }
    }
    return c;
  }
  if (kind == "corollary") {
    CorollaryCertificate c;
    c.vbar = vec("vbar", d.m);
    c.lambdabar = vec("lambdabar", d.q);
    c.Iplus = idx("Iplus");
    c.w = vec("w", d.m);
    c.xi = vec("xi", d.q);
    c.sigma = vec("sigma", d.p);
    return c;
  }
  parse_error(at("kind"), "unknown certificate kind '" + kind + "'");
}

Json to_json(const Rational& r) {
  if (denominator(r) == 1) {
    const Integer n = numerator(r);
    if (n >= std::numeric_limits<long long>::min() &&
        n <= std::numeric_limits<long long>::max())
      return n.convert_to<long long>();
  }
  return to_string(r);
}

Json to_json(const RVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json index_json(const IndexSet& s) {
  Json a = Json::array();
  for (std::size_t i : s) a.push_back(i + 1);
  return a;
}

namespace {

Json matrix_json(const RMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

}  // namespace

Json to_json(const ProblemData& d) {
  Json j;
  j["dims"] = {{"n", d.n}, {"m", d.m}, {"p", d.p}, {"q", d.q}};
  j["grad_F"] = to_json(d.gradF);
  j["phi"] = to_json(d.phiVal);
  j["jac_phi"] = matrix_json(d.jacPhi);
  j["g"] = to_json(d.gVal);
  j["jac_g"] = matrix_json(d.jacG);
  Json h = Json::array();
  for (const auto& m : d.hessG) h.push_back(matrix_json(m));
  j["hess_g"] = h;
  j["G_val"] = to_json(d.GVal);
  j["jac_G"] = matrix_json(d.jacGupper);
  j["flags"] = {{"assumption1", d.assumption1Asserted},
                {"lower_mscq", d.lowerMscqAsserted},
                {"upper_mscq", d.upperMscqAsserted}};
  return j;
}

Json to_json(const SharpCertificate& c) {
  Json j;
  j["kind"] = "sharp";
  j["vbar"] = to_json(c.vbar);
  j["lambdabar"] = to_json(c.lambdabar);
  if (c.zbar) j["zbar"] = to_json(*c.zbar);
  j["I"] = index_json(c.I);
  j["Iplus"] = index_json(c.Iplus);
  j["J"] = index_json(c.J);
  j["Jplus"] = index_json(c.Jplus);
  j["w"] = to_json(c.w);
  j["eta"] = to_json(c.eta);
  j["xi"] = to_json(c.xi);
  j["sigma"] = to_json(c.sigma);
  j["deltav"] = to_json(c.deltav);
  j["s_deltav"] = to_json(c.sDeltav);
  j["mu_bar"] = to_json(c.muBar);
  j["s_w"] = to_json(c.sW);
  if (c.caseII) {
    j["case_II"] = {{"deltax", to_json(c.caseII->deltax)},
                    {"alphas", to_json(c.caseII->alphas)}};
  }
  return j;
}

Json to_json(const MStatCertificate& c) {
  Json j;
  j["kind"] = "mstat";
  j["lambda"] = to_json(c.lambda);
  j["w"] = to_json(c.w);
  j["xi"] = to_json(c.xi);
  j["sigma"] = to_json(c.sigma);
  Json b = Json::array();
  for (const auto& [i, t] : c.branches)
    b.push_back({{"index", i + 1}, {"tag", std::string(branch_name(t))}});
  j["branches"] = b;
  return j;
}

Json to_json(const CorollaryCertificate& c) {
  Json j;
  j["kind"] = "corollary";
  j["vbar"] = to_json(c.vbar);
  j["lambdabar"] = to_json(c.lambdabar);
  j["Iplus"] = index_json(c.Iplus);
  j["w"] = to_json(c.w);
  j["xi"] = to_json(c.xi);
  j["sigma"] = to_json(c.sigma);
  return j;
}

Json to_json(const AuditReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    conds.push_back({{"id", c.id},
                     {"verdict", std::string(verdict_name(c.verdict))},
                     {"detail", c.detail}});
  }
  return {{"overall", std::string(verdict_name(r.overall()))},
          {"conditions", conds}};
}

Json to_json(const Certificate& c) {
  return std::visit([](const auto& x) { return to_json(x); }, c);
}

}  // namespace mpecstat::io
