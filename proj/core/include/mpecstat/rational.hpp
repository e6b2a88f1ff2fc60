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

#ifndef MPECSTAT_RATIONAL_HPP_
#define MPECSTAT_RATIONAL_HPP_

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mpecstat {

/// Exact rational scalar, always in lowest terms.
using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<
    boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

using RVector = std::vector<Rational>;

/// Sorted list of 0-based indices.
using IndexSet = std::vector<std::size_t>;

/// Parses "p", "-p" or "p/q". Anything else (decimals, exponents) throws
/// Error(kNonRationalLiteral).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);
std::string to_string(const RVector& v);
std::string to_string(const IndexSet& s, bool oneBased = true);

RVector zeros(std::size_t n);
RVector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const RVector& v);

Rational dot(const RVector& a, const RVector& b);
RVector add(const RVector& a, const RVector& b);
RVector sub(const RVector& a, const RVector& b);
RVector scale(const RVector& a, const Rational& s);
RVector neg(const RVector& a);
/// a += s * b
void axpy(RVector& a, const Rational& s, const RVector& b);
RVector concat(const RVector& a, const RVector& b);
RVector slice(const RVector& a, std::size_t begin, std::size_t count);

/// Scales by a positive factor to coprime integer entries.
RVector primitive(const RVector& v);
/// primitive() followed by a sign flip making the leading nonzero positive.
RVector primitive_signed(const RVector& v);

bool is_subset(const IndexSet& a, const IndexSet& b);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_minus(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
bool contains(const IndexSet& s, std::size_t i);
IndexSet range_set(std::size_t n);

}  // namespace mpecstat

#endif  // MPECSTAT_RATIONAL_HPP_
