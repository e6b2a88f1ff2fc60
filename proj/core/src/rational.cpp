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

#include "mpecstat/rational.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "mpecstat/error.hpp"

namespace mpecstat {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPointed: return "NotPointed";
    case ErrorCode::kNotMember: return "NotMember";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kNotNested: return "NotNested";
    case ErrorCode::kNotCritical: return "NotCritical";
    case ErrorCode::kInfeasiblePoint: return "InfeasiblePoint";
    case ErrorCode::kEmptyMultiplierSet: return "EmptyMultiplierSet";
    case ErrorCode::kUnboundedMultipliers: return "UnboundedMultipliers";
    case ErrorCode::kNotNondegenerate: return "NotNondegenerate";
    case ErrorCode::kNotTangent: return "NotTangent";
    case ErrorCode::kNotPolarMember: return "NotPolarMember";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kAssumptionNotAsserted: return "AssumptionNotAsserted";
    case ErrorCode::kInfeasibleMultiplier: return "InfeasibleMultiplier";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kTooManyRows: return "TooManyRows";
    case ErrorCode::kAuditFailure: return "AuditFailure";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kNonRationalLiteral: return "NonRationalLiteral";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  static const std::regex kPattern(R"(\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*)");
  std::match_results<std::string_view::const_iterator> match;
  if (!std::regex_match(text.begin(), text.end(), match, kPattern)) {
    throw Error(ErrorCode::kNonRationalLiteral,
                "'" + std::string(text) + "' is not an integer or p/q literal");
  }
  std::string num = match[1].str();
  if (num.front() == '+') num.erase(0, 1);
  Integer numerator(num);
  Integer denominator(1);
  if (match[2].matched) {
    denominator = Integer(match[2].str());
    if (denominator == 0) {
      throw Error(ErrorCode::kNonRationalLiteral,
                  "zero denominator in '" + std::string(text) + "'");
    }
  }
  return Rational(numerator, denominator);
}

std::string to_string(const Rational& value) { return value.str(); }

std::string to_string(const RVector& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i].str();
  }
  out << ')';
  return out.str();
}

std::string to_string(const IndexSet& s, bool oneBased) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ", ";
    out << (s[i] + (oneBased ? 1 : 0));
  }
  out << '}';
  return out.str();
}

RVector zeros(std::size_t n) { return RVector(n, Rational(0)); }

RVector unit_vector(std::size_t n, std::size_t i) {
  RVector e = zeros(n);
  e[i] = 1;
  return e;
}

bool is_zero(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Rational dot(const RVector& a, const RVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

RVector add(const RVector& a, const RVector& b) {
  RVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RVector sub(const RVector& a, const RVector& b) {
  RVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

RVector scale(const RVector& a, const Rational& s) {
  RVector r = a;
  for (auto& x : r) x *= s;
  return r;
}

RVector neg(const RVector& a) { return scale(a, Rational(-1)); }

void axpy(RVector& a, const Rational& s, const RVector& b) {
  if (s == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] != 0) a[i] += s * b[i];
  }
}

RVector concat(const RVector& a, const RVector& b) {
  RVector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

RVector slice(const RVector& a, std::size_t begin, std::size_t count) {
  return RVector(a.begin() + static_cast<std::ptrdiff_t>(begin),
                 a.begin() + static_cast<std::ptrdiff_t>(begin + count));
}

RVector primitive(const RVector& v) {
  Integer lcm_den = 1;
  for (const auto& x : v) {
    if (x != 0) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(x)));
  }
  Integer g = 0;
  std::vector<Integer> ints;
  ints.reserve(v.size());
  for (const auto& x : v) {
    Integer k = Integer(numerator(x)) * (lcm_den / Integer(denominator(x)));
    ints.push_back(k);
    g = boost::multiprecision::gcd(g, Integer(abs(k)));
  }
  RVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = g == 0 ? Rational(0) : Rational(ints[i] / g);
  }
  return out;
}

RVector primitive_signed(const RVector& v) {
  RVector p = primitive(v);
  for (const auto& x : p) {
    if (x != 0) {
      if (x < 0) p = neg(p);
      break;
    }
  }
  return p;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(r));
  return r;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(r));
  return r;
}

bool contains(const IndexSet& s, std::size_t i) {
  return std::binary_search(s.begin(), s.end(), i);
}

IndexSet range_set(std::size_t n) {
  IndexSet r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

}  // namespace mpecstat
