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


#ifndef MPECSTAT_STATIONARITY_HPP_
#define MPECSTAT_STATIONARITY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mpecstat/cone.hpp"
#include "mpecstat/mpec_geom.hpp"

namespace mpecstat {

enum class Verdict { kPass, kFail, kConditional };

std::string_view verdict_name(Verdict v);

struct ConditionResult {
  std::string id;
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

struct AuditReport {
  std::vector<ConditionResult> conditions;

  void add(std::string id, bool ok, std::string detail = {});
  void add(std::string id, Verdict v, std::string detail = {});
  /// kFail if any condition fails, else kConditional if any is conditional.
  Verdict overall() const;
  bool passed() const { return overall() == Verdict::kPass; }
  const ConditionResult* find(std::string_view id) const;
};

struct CaseIIData {
  RVector deltax;  // n
  RVector alphas;  // q, zero outside I
  bool operator==(const CaseIIData&) const = default;
};

/// Index-set certificate of the sharp necessary conditions.
struct SharpCertificate {
  RVector vbar;
  RVector lambdabar;
  std::optional<RVector> zbar;
  IndexSet I, Iplus, J, Jplus;
  RVector w;
  RVector eta;
  RVector xi;
  RVector sigma;
  RVector deltav;
  RVector sDeltav;
  RVector muBar;
  RVector sW;
  std::optional<CaseIIData> caseII;
  bool operator==(const SharpCertificate&) const = default;
};

/// Checks conditions (a)-(n), the nesting chain and the case split. Throws
/// kAssumptionNotAsserted and kDimensionMismatch.
AuditReport verify_sharp(const ProblemData& data, const PointGeometry& geom,
                         const SharpCertificate& cert,
                         const SigmaChoice& sigma = {});

/// Face form of a certificate: faces of 𝒦_K̄(v̄, z̄*) and of T_{Λ̄(v̄)}(λ̄)
/// recovered from the index data.
struct FaceView {
  RVector zbar;
  HCone criticalV;      // 𝒦_K̄(v̄, z̄*)
  HCone tangentLambda;  // T_{Λ̄(v̄)}(λ̄)
  FaceDescriptor f1v, f2v, f1l, f2l;
  HCone diffV;  // F1v - F2v
  HCone diffL;  // F1λ - F2λ
  AuditReport report;
};

FaceView sharp_face_view(const ProblemData& data, const PointGeometry& geom,
                         const SharpCertificate& cert);

struct SharpSearchResult {
  bool found = false;
  SharpCertificate cert;
  Verdict verdict = Verdict::kFail;  // kPass or kConditional when found
  std::string catalog;
  std::size_t combinationsTried = 0;
};

SharpSearchResult search_sharp(const ProblemData& data,
                               const PointGeometry& geom,
                               const std::vector<RVector>& extraDirections = {},
                               const SigmaChoice& sigma = {});

/// Certificate of the singleton-multiplier corollary.
struct CorollaryCertificate {
  RVector vbar;
  RVector lambdabar;
  IndexSet Iplus;
  RVector w;
  RVector xi;
  RVector sigma;
  bool operator==(const CorollaryCertificate&) const = default;
};

struct CorollaryResult {
  enum class Kind { kFound, kNone, kNotApplicable };
  Kind kind = Kind::kNotApplicable;
  CorollaryCertificate cert;
};

CorollaryResult corollary_unique_check(
    const ProblemData& data, const PointGeometry& geom,
    const std::vector<RVector>& extraDirections = {});

AuditReport verify_corollary(const ProblemData& data,
                             const PointGeometry& geom,
                             const CorollaryCertificate& cert);

/// Full sharp certificate with η = 0, δv = 0, s_δv = 0, μ̄ = 0 and the s_w
/// solving the equality rows. A zero v̄ is replaced by a lineality vector of
/// K̄ when one exists.
SharpCertificate corollary_to_sharp(const ProblemData& data,
                                    const PointGeometry& geom,
                                    const CorollaryCertificate& cert);

enum class BranchTag { kStrictBranch, kXiZero, kGradWZero };

std::string_view branch_name(BranchTag t);

struct MStatCertificate {
  RVector lambda;
  RVector w;
  RVector xi;
  RVector sigma;
  /// One entry per biactive index (g_i = 0, λ_i = 0), increasing.
  std::vector<std::pair<std::size_t, BranchTag>> branches;
  bool operator==(const MStatCertificate&) const = default;
};

/// Throws kInfeasibleMultiplier if λ is not a lower-level multiplier.
AuditReport verify_mstat(const ProblemData& data, const MStatCertificate& cert);

/// Branch enumeration over the candidate multipliers (vertices of Λ̄, their
/// barycenter, and extra multipliers); one certificate per distinct
/// (λ, branch tags) class.
std::vector<MStatCertificate> search_mstat(
    const ProblemData& data, const PointGeometry& geom,
    const std::vector<RVector>& extraMultipliers = {});

/// Tag of index i read off the values of a certificate.
BranchTag canonical_tag(const Rational& xi, const Rational& gradW);

/// The M-stationarity certificate induced by a sharp (or corollary)
/// certificate in the singleton case. Throws kNotApplicable if Λ̄ is not a
/// singleton or the input certificate does not pass.
AuditReport sharp_vs_mstat_audit(const ProblemData& data,
                                 const PointGeometry& geom,
                                 const SharpCertificate& cert);
AuditReport sharp_vs_mstat_audit(const ProblemData& data,
                                 const PointGeometry& geom,
                                 const CorollaryCertificate& cert);

struct MscqWitness {
  RVector u, v, lambda, eta, w;
};

struct MscqResult {
  enum class Kind { kSatisfied, kViolated, kInconclusive };
  Kind kind = Kind::kInconclusive;
  std::string reason;
  std::optional<MscqWitness> witness;
};

MscqResult mscq_sufficient_check(const ProblemData& data,
                                 const PointGeometry& geom);

}  // namespace mpecstat

#endif  // MPECSTAT_STATIONARITY_HPP_
