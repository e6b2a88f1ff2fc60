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

#ifndef MPECSTAT_CONE_HPP_
#define MPECSTAT_CONE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "mpecstat/lp.hpp"
#include "mpecstat/rational.hpp"

namespace mpecstat {

/// {v : eqRows v = 0, ineqRows v <= 0}. Rows keep their construction order so
/// that tight sets index them; use minimal() to compare cones as sets.
struct HCone {
  std::size_t dim = 0;
  std::vector<RVector> eqRows;
  std::vector<RVector> ineqRows;

  bool contains(const RVector& v) const;
  /// Equality rows replaced by their canonical span basis; inequality rows
  /// reduced modulo it, made primitive, sorted and deduplicated.
  HCone canonical() const;

  bool operator==(const HCone&) const = default;
};

/// span(lineality) + cone(rays).
struct VCone {
  std::size_t dim = 0;
  std::vector<RVector> lineality;
  std::vector<RVector> rays;

  bool operator==(const VCone&) const = default;
};

/// Double description method. Output is canonical: lineality is an RREF basis
/// with coprime integer rows, rays are extreme, reduced modulo the lineality,
/// primitive and sorted.
VCone h_to_v(const HCone& k);
/// Minimal canonical H-form (facets and the equality space).
HCone v_to_h(const VCone& k);
/// v_to_h(h_to_v(k)); two cones are equal iff their minimal forms are.
HCone minimal(const HCone& k);
VCone minimal(const VCone& k);
bool same_cone(const HCone& a, const HCone& b);

HCone polar(const HCone& k);
std::vector<RVector> lineality(const HCone& k);
/// Basis of K - K.
std::vector<RVector> span_plus(const HCone& k);

/// Tight inequality rows I(v), or std::nullopt if v is outside.
std::optional<IndexSet> membership(const HCone& k, const RVector& v);
/// Inequality rows vanishing on all of K.
IndexSet implicit_equalities(const HCone& k);
bool ri_member(const HCone& k, const RVector& v);

/// Rows: all equality rows, then the tight inequality rows in order.
HCone tangent_cone(const HCone& k, const RVector& v);
HCone tangent_of_polyhedron(const HPolyhedron& p, const RVector& z);
VCone normal_of_polyhedron(const HPolyhedron& p, const RVector& z);
/// Generator form of N_K(v) (not minimized): equality rows then tight rows.
VCone normal_generators(const HCone& k, const RVector& v);

/// Coefficients (free part, then nonnegative part) expressing y, if any.
std::optional<RVector> cone_combination(const std::vector<RVector>& freeGens,
                                        const std::vector<RVector>& nonnegGens,
                                        const RVector& y);
bool in_cone(const VCone& k, const RVector& y);
bool in_polar(const HCone& k, const RVector& y);
bool in_normal_cone(const HCone& k, const RVector& v, const RVector& zstar);

/// T_K(v) with the equality row zstar appended. Throws kNotMember/kNotNormal.
HCone critical_cone(const HCone& k, const RVector& v, const RVector& zstar);
HCone critical_cone(const HPolyhedron& p, const RVector& z,
                    const RVector& zstar);

HCone product(const HCone& a, const HCone& b);
HCone intersection(const HCone& a, const HCone& b);
/// Minkowski sum a + b.
HCone cone_sum(const HCone& a, const HCone& b);

/// Sum of rays plus sum of lineality basis vectors.
RVector ri_representative(const VCone& k);
RVector ri_representative(const HCone& k);

inline constexpr std::size_t kMaxFaceRows = 12;

/// Face given by turning the tightSet inequality rows into equalities.
struct FaceDescriptor {
  IndexSet tightSet;

  bool operator==(const FaceDescriptor&) const = default;
};

/// All faces, each with its closed tight set (every inequality row vanishing
/// on the face). Ordered by tight-set size, then lexicographically: K first,
/// the lineality space last. Throws kTooManyRows above kMaxFaceRows.
std::vector<FaceDescriptor> faces(const HCone& k);
HCone face_cone(const HCone& k, const FaceDescriptor& f);
/// Largest tight set inducing the same face.
FaceDescriptor closure(const HCone& k, const FaceDescriptor& f);
/// The face having v in its relative interior.
FaceDescriptor face_of(const HCone& k, const RVector& v);
RVector ri_representative(const HCone& k, const FaceDescriptor& f);

/// F1 - F2 for faces F2 subset F1. Throws kNotNested.
HCone face_difference(const HCone& k, const FaceDescriptor& f1,
                      const FaceDescriptor& f2);

/// One branch ((F1 - F2)°, F1 - F2) of the limiting normal cone to gph N_C.
struct NormalBranch {
  HCone polarPart;
  HCone conePart;

  bool operator==(const NormalBranch&) const = default;
};

std::vector<NormalBranch> limiting_normal_gph(const HPolyhedron& c,
                                              const RVector& z,
                                              const RVector& zstar);

}  // namespace mpecstat

#endif  // MPECSTAT_CONE_HPP_
