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


#ifndef MPECSTAT_MPEC_GEOM_HPP_
#define MPECSTAT_MPEC_GEOM_HPP_

#include <optional>
#include <vector>

#include "mpecstat/cone.hpp"
#include "mpecstat/linalg.hpp"
#include "mpecstat/lp.hpp"
#include "mpecstat/rational.hpp"

namespace mpecstat {

/// First- and second-order data of the MPEC at the candidate point (x̄, ȳ):
///   min F(x, y)  s.t.  0 ∈ φ(x, y) + N̂_Γ(y),  G(x, y) <= 0,
/// with Γ = {y : g(y) <= 0}. Derivatives with respect to (x, y) list the x
/// columns first.
struct ProblemData {
  std::size_t n = 0;  // dim x
  std::size_t m = 0;  // dim y
  std::size_t p = 0;  // number of upper-level constraints G
  std::size_t q = 0;  // number of lower-level constraints g
  RVector gradF;      // n + m
  RVector phiVal;     // m
  RMatrix jacPhi;     // m x (n + m)
  RVector gVal;       // q
  RMatrix jacG;       // q x m, row i is ∇g_i(ȳ)
  std::vector<RMatrix> hessG;  // q matrices m x m
  RVector GVal;       // p
  RMatrix jacGupper;  // p x (n + m)
  bool assumption1Asserted = false;
  bool lowerMscqAsserted = false;
  bool upperMscqAsserted = false;

  /// Throws kShapeError on inconsistent sizes or a non-symmetric Hessian and
  /// kInfeasiblePoint if g(ȳ) or G(x̄, ȳ) has a positive entry.
  void validate() const;

  /// ȳ* = -φ(x̄, ȳ).
  RVector ystar() const { return neg(phiVal); }
  RVector grad_g(std::size_t i) const { return jacG.row(i); }
  RMatrix jac_phi_x() const { return jacPhi.col_block(0, n); }
  RMatrix jac_phi_y() const { return jacPhi.col_block(n, m); }
  RMatrix jac_G_x() const { return jacGupper.col_block(0, n); }
  RMatrix jac_G_y() const { return jacGupper.col_block(n, m); }

  /// ∇²(λᵀg)(ȳ) v.
  RVector hess_times(const RVector& lambda, const RVector& v) const;
  /// Vector with entries aᵀ∇²g_i(ȳ)b.
  RVector curvature(const RVector& a, const RVector& b) const;
  /// ∇g(ȳ)ᵀλ.
  RVector grad_g_times(const RVector& lambda) const;
};

struct PointGeometry {
  IndexSet activeLower;  // Ī
  /// K̄_Γ. Inequality row k belongs to activeLower[k]; the equality row ȳ* is
  /// present only when ȳ* != 0.
  HCone criticalCone;
  HPolyhedron multiplierSet;  // Λ̄
  std::vector<RVector> extremeMultipliers;
  IndexSet jPlusAll;  // J̄⁺(Λ̄)
  std::vector<RVector> criticalLineality;  // basis of ℒ(K̄_Γ)
};

PointGeometry analyze_point(const ProblemData& data);

struct DirectionalData {
  RVector v;
  IndexSet activeAtV;           // Ī(v)
  HPolyhedron dirMultipliers;   // Λ̄(v) = Λ̄ ∩ {quadObjective·λ = maxValue}
  IndexSet jPlusDir;            // J̄⁺(Λ̄(v))
  RVector quadObjective;        // entries vᵀ∇²g_i(ȳ)v
  Rational maxValue;
  std::vector<RVector> vertices;
};

/// Throws kNotCritical if v is outside K̄_Γ and kUnboundedMultipliers if the
/// curvature functional is unbounded on Λ̄.
DirectionalData directional(const ProblemData& data, const PointGeometry& geom,
                            const RVector& v);

struct NondegeneracyResult {
  bool nondegenerate = true;
  RVector witness;  // nonzero μ when !nondegenerate
  IndexSet jHat;    // index-form selection, reporting only
  std::vector<RVector> multiplierSpan;  // basis of (Λ̄(v))⁺
  std::vector<RVector> normalSpan;      // basis of (N_K̄(v))⁺
};

NondegeneracyResult check_2_nondegenerate(const ProblemData& data,
                                          const PointGeometry& geom,
                                          const RVector& v);

/// 2-regularity of (g_i)_{i∈J} in direction v.
bool check_2_regular(const ProblemData& data, const IndexSet& j,
                     const RVector& v);

struct TangentMembership {
  bool member = false;
  RVector lambda;  // λ ∈ Λ̄(v)
  RVector zstar;   // z* ∈ N_K̄(v)
  RVector farkas;  // certificate of infeasibility (empty if v ∉ K̄_Γ)
};

/// Decides (v, v*) ∈ T_{gph N̂_Γ}(ȳ, ȳ*).
TangentMembership tangent_gph_member(const ProblemData& data,
                                     const PointGeometry& geom,
                                     const RVector& v, const RVector& vstar);

struct Decomposition {
  RVector lambdabar;
  RVector zbar;
};

/// Unique (λ̄, z̄*) with v* = ∇²(λ̄ᵀg)v + z̄*. Audited by comparing the
/// minimum and maximum of every λ_i; a mismatch throws kAuditFailure.
Decomposition decompose_tangent_pair(const ProblemData& data,
                                     const PointGeometry& geom,
                                     const RVector& v, const RVector& vstar);

/// Product cone K̃ = vPart × lambdaPart on R^m × R^q.
struct TildeCone {
  HCone vPart;
  HCone lambdaPart;
  HCone joined() const { return product(vPart, lambdaPart); }
};

/// 𝒦_K̄(v̄, z̄*) × T_{Λ̄(v̄)}(λ̄).
TildeCone ktilde_parts(const ProblemData& data, const PointGeometry& geom,
                       const RVector& v, const RVector& lambdabar,
                       const RVector& zbar);
HCone ktilde(const ProblemData& data, const PointGeometry& geom,
             const RVector& v, const RVector& lambdabar, const RVector& zbar);

/// A decomposed tangent pair with its cone K̃.
struct TangentContext {
  RVector vbar;
  RVector vbarStar;
  RVector lambdabar;
  RVector zbar;
  TildeCone cone;
};

/// Requires 2-nondegeneracy in direction v̄ (kNotNondegenerate) and tangency
/// (kNotTangent).
TangentContext tangent_context(const ProblemData& data,
                               const PointGeometry& geom, const RVector& vbar,
                               const RVector& vbarStar);

/// Extreme-point selection Σ(v̄, v̄*). Empty means all extreme points.
struct SigmaChoice {
  std::vector<RVector> points;
};

/// Partial check of the defining property of Σ(v̄, v̄*): Σ consists of extreme
/// points of Λ̄(v̄) and meets Λ̄(v̄ + βu) for every generator u of
/// 𝒦_K̄(v̄, v̄*) at a single small β.
bool validate_sigma(const ProblemData& data, const PointGeometry& geom,
                    const RVector& vbar, const RVector& vbarStar,
                    const std::vector<RVector>& sigma);

struct NormalMembership {
  enum class Kind { kYes, kNo, kNecessaryPassed, kRefuted };
  Kind kind = Kind::kNo;
  RVector eta;        // kYes
  RVector refutedAt;  // kRefuted: the failing v̄
  bool accepted() const {
    return kind == Kind::kYes || kind == Kind::kNecessaryPassed;
  }
};

/// (w*, w) ∈ N̂_{T_{gph N̂_Γ}(ȳ,ȳ*)}(v̄, v̄*). For v̄ = 0 without
/// 2-nondegeneracy the query is answered by zero_dir_filter.
NormalMembership normal_to_tangent_member(
    const ProblemData& data, const PointGeometry& geom, const RVector& vbar,
    const RVector& vbarStar, const RVector& wstar, const RVector& w,
    const SigmaChoice& sigma = {});

/// The same membership over an already decomposed pair and an explicit K̃.
std::optional<RVector> normal_membership(const ProblemData& data,
                                         const RVector& vbar,
                                         const RVector& lambdabar,
                                         const TildeCone& k,
                                         const RVector& wstar,
                                         const RVector& w);

struct TangentTangent {
  bool member = false;
  RVector mu;
  RVector zetaStar;
};

/// (u, u*) ∈ T_{T_{gph N̂_Γ}(ȳ,ȳ*)}(v̄, v̄*).
TangentTangent tangent2_member(const ProblemData& data,
                               const PointGeometry& geom, const RVector& vbar,
                               const RVector& vbarStar, const RVector& u,
                               const RVector& ustar);

/// Membership of (u, μ, ζ*, 2 v̄ᵀ∇²g u) in gph N_K̃ with
/// u* = ∇²(λ̄ᵀg)u + ∇²(μᵀg)v̄ + ζ*, by one LP per face of K̃'s λ-part.
TangentTangent tangent_membership(const ProblemData& data, const RVector& vbar,
                                  const RVector& lambdabar, const TildeCone& k,
                                  const RVector& u, const RVector& ustar);

struct ZeroDirectionResult {
  bool passes = true;
  RVector refutedAt;
};

/// Necessary condition for (w*, w) ∈ N̂_{T_{gph N̂_Γ}(ȳ,ȳ*)}(0, v*), tested
/// over the catalog of lineality basis vectors, their negatives and 0.
/// Throws kNotPolarMember if v* ∉ K̄°.
ZeroDirectionResult zero_dir_filter(const ProblemData& data,
                                    const PointGeometry& geom,
                                    const RVector& vstar, const RVector& wstar,
                                    const RVector& w,
                                    const SigmaChoice& sigma = {});

/// Second-level context K̃(v̄, v̄*, δv̄, δv̄*).
struct SecondLevelContext {
  TangentContext first;
  RVector deltav;
  RVector deltavStar;
  RVector muBar;
  RVector zetaBar;
  TildeCone cone;
};

SecondLevelContext second_level_context(const ProblemData& data,
                                        const PointGeometry& geom,
                                        const RVector& vbar,
                                        const RVector& vbarStar,
                                        const RVector& deltav,
                                        const RVector& deltavStar);

TangentTangent tangent3_member(const ProblemData& data,
                               const PointGeometry& geom, const RVector& vbar,
                               const RVector& vbarStar, const RVector& deltav,
                               const RVector& deltavStar, const RVector& u,
                               const RVector& ustar);

NormalMembership normal_to_tangent2_member(
    const ProblemData& data, const PointGeometry& geom, const RVector& vbar,
    const RVector& vbarStar, const RVector& deltav, const RVector& deltavStar,
    const RVector& wstar, const RVector& w);

struct PolyhedralityProbe {
  enum class Kind { kLocallyPolyhedral, kNotLocallyPolyhedral, kUnknown };
  Kind kind = Kind::kUnknown;
  RVector witness;
};

inline const Rational kProbeCoarse{1, 8};
inline const Rational kProbeFine{1, 64};

PolyhedralityProbe polyhedrality_probe(const ProblemData& data,
                                       const PointGeometry& geom,
                                       const RVector& vbar,
                                       const RVector& vbarStar);

}  // namespace mpecstat

#endif  // MPECSTAT_MPEC_GEOM_HPP_
