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


#ifndef MPECSTAT_TOOLS_PROBLEM_IO_HPP_
#define MPECSTAT_TOOLS_PROBLEM_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "mpecstat/stationarity.hpp"

namespace mpecstat::io {

using Json = nlohmann::ordered_json;

using Certificate =
    std::variant<SharpCertificate, MStatCertificate, CorollaryCertificate>;

struct ProblemFile {
  ProblemData data;
  std::optional<Certificate> certificate;
  std::vector<RVector> directions;
  SigmaChoice sigma;
};

/// Scalars are integers or "p/q" strings; floating point literals are
/// rejected. Index sets are 1-based in files. Errors carry the JSON path.
Rational parse_scalar(const Json& j, const std::string& path);
RVector parse_vector(const Json& j, const std::string& path,
                     std::optional<std::size_t> size = std::nullopt);
RMatrix parse_matrix(const Json& j, const std::string& path, std::size_t rows,
                     std::size_t cols);
IndexSet parse_index_set(const Json& j, const std::string& path,
                         std::size_t bound);

ProblemFile parse_problem(const Json& j);
ProblemFile load_problem(const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

/// Accepts the certificate object itself or a document with a
/// "certificate" member. The "kind" member selects the type.
Certificate parse_certificate(const Json& j, const ProblemData& data);

Json to_json(const Rational& r);
Json to_json(const RVector& v);
Json index_json(const IndexSet& s);
Json to_json(const ProblemData& d);
Json to_json(const SharpCertificate& c);
Json to_json(const MStatCertificate& c);
Json to_json(const CorollaryCertificate& c);
Json to_json(const AuditReport& r);
Json to_json(const Certificate& c);

}  // namespace mpecstat::io

#endif  // MPECSTAT_TOOLS_PROBLEM_IO_HPP_
