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

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include "mpecstat/cone.hpp"
#include "mpecstat/error.hpp"

namespace mpecstat {
namespace {

// Rows vanishing on every ray of the subset (lineality is annihilated by all
// rows already).
IndexSet closure_of_rays(const HCone& k, const std::vector<RVector>& rays,
                         const std::vector<std::size_t>& subset) {
  IndexSet c;
  for (std::size_t i = 0; i < k.ineqRows.size(); ++i) {
    bool vanishes = true;
    for (std::size_t r : subset)
      if (dot(k.ineqRows[i], rays[r]) != 0) vanishes = false;
    if (vanishes) c.push_back(i);
  }
  return c;
}

bool face_less(const FaceDescriptor& a, const FaceDescriptor& b) {
  if (a.tightSet.size() != b.tightSet.size())
    return a.tightSet.size() < b.tightSet.size();
  return a.tightSet < b.tightSet;
}

}  // namespace

std::vector<FaceDescriptor> faces(const HCone& k) {
  if (k.ineqRows.size() > kMaxFaceRows) {
    throw Error(ErrorCode::kTooManyRows,
                "face enumeration is capped at " + std::to_string(kMaxFaceRows) +
                    " inequality rows");
  }
  const VCone v = h_to_v(k);
  std::vector<std::size_t> all(v.rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  std::set<IndexSet> seen;
  std::deque<std::pair<std::vector<std::size_t>, IndexSet>> queue;
  std::vector<FaceDescriptor> out;
  IndexSet top = closure_of_rays(k, v.rays, all);
  seen.insert(top);
  queue.emplace_back(all, top);
  while (!queue.empty()) {
    auto [rays, closed] = std::move(queue.front());
    queue.pop_front();
    out.push_back({closed});
    for (std::size_t i = 0; i < k.ineqRows.size(); ++i) {
      if (contains(closed, i)) continue;
      std::vector<std::size_t> sub;
      for (std::size_t r : rays)
        if (dot(k.ineqRows[i], v.rays[r]) == 0) sub.push_back(r);
      IndexSet c = closure_of_rays(k, v.rays, sub);
      if (seen.insert(c).second) queue.emplace_back(std::move(sub), std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), face_less);
  return out;
}

HCone face_cone(const HCone& k, const FaceDescriptor& f) {
  HCone c{k.dim, k.eqRows, {}};
  for (std::size_t i = 0; i < k.ineqRows.size(); ++i) {
    if (contains(f.tightSet, i)) {
      c.eqRows.push_back(k.ineqRows[i]);
    } else {
      c.ineqRows.push_back(k.ineqRows[i]);
    }
  }
  return c;
}

FaceDescriptor closure(const HCone& k, const FaceDescriptor& f) {
  const VCone v = h_to_v(face_cone(k, f));
  std::vector<std::size_t> all(v.rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return {closure_of_rays(k, v.rays, all)};
}

FaceDescriptor face_of(const HCone& k, const RVector& v) {
  auto tight = membership(k, v);
  if (!tight) throw Error(ErrorCode::kNotMember, "face_of: v not in K");
  return {*tight};
}

RVector ri_representative(const HCone& k, const FaceDescriptor& f) {
  return ri_representative(h_to_v(face_cone(k, f)));
}

HCone face_difference(const HCone& k, const FaceDescriptor& f1,
                      const FaceDescriptor& f2) {
  const IndexSet c1 = closure(k, f1).tightSet;
  const IndexSet c2 = closure(k, f2).tightSet;
  if (!is_subset(c1, c2)) {
    throw Error(ErrorCode::kNotNested, "face_difference: F2 is not inside F1");
  }
  HCone d{k.dim, k.eqRows, {}};
  for (std::size_t i : c1) d.eqRows.push_back(k.ineqRows[i]);
  for (std::size_t i : set_minus(c2, c1)) d.ineqRows.push_back(k.ineqRows[i]);
  return d;
}

std::vector<NormalBranch> limiting_normal_gph(const HPolyhedron& c,
                                              const RVector& z,
                                              const RVector& zstar) {
  const HCone crit = critical_cone(c, z, zstar);
  const auto fs = faces(crit);
  std::vector<NormalBranch> out;
  for (const auto& f1 : fs) {
    for (const auto& f2 : fs) {
      if (!is_subset(f1.tightSet, f2.tightSet)) continue;
      const HCone d = minimal(face_difference(crit, f1, f2));
      NormalBranch b{polar(d), d};
      if (std::find(out.begin(), out.end(), b) == out.end()) {
        out.push_back(std::move(b));
      }
    }
  }
  return out;
}

}  // namespace mpecstat
