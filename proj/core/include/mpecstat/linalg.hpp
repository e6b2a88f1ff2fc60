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

#ifndef MPECSTAT_LINALG_HPP_
#define MPECSTAT_LINALG_HPP_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "mpecstat/rational.hpp"

namespace mpecstat {

/// Dense row-major rational matrix.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RMatrix identity(std::size_t n);
  static RMatrix from_rows(const std::vector<RVector>& rows, std::size_t cols);
  static RMatrix from_columns(const std::vector<RVector>& cols,
                              std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RVector row(std::size_t i) const;
  RVector col(std::size_t j) const;
  std::vector<RVector> row_list() const;
  void append_row(const RVector& r);

  RMatrix transpose() const;
  RVector operator*(const RVector& x) const;
  RMatrix operator*(const RMatrix& other) const;
  /// Columns [begin, begin + count).
  RMatrix col_block(std::size_t begin, std::size_t count) const;

  bool operator==(const RMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// x^T M, i.e. M^T x.
RVector transpose_times(const RMatrix& m, const RVector& x);
bool is_symmetric(const RMatrix& m);
RMatrix symmetrize(const RMatrix& m);

struct RowEchelon {
  RMatrix reduced;        // reduced row echelon form, zero rows dropped
  IndexSet pivotColumns;  // one per nonzero row
};

RowEchelon rref(const RMatrix& m);
std::size_t rank(const RMatrix& m);
std::size_t rank(const std::vector<RVector>& rows, std::size_t dim);

/// Basis of {x : M x = 0}, one vector per free column (free entry = 1).
std::vector<RVector> kernel_basis(const RMatrix& m);

struct AffineSolution {
  RVector particular;
  std::vector<RVector> kernel;
};

/// Solves A x = b; std::nullopt iff inconsistent.
std::optional<AffineSolution> solve_affine(const RMatrix& a, const RVector& b);

/// Canonical basis of span(vectors): RREF rows scaled to coprime integers.
std::vector<RVector> span_basis(const std::vector<RVector>& vectors,
                                std::size_t dim);
bool in_span(const std::vector<RVector>& vectors, const RVector& v);
/// Basis of the orthogonal complement of span(vectors).
std::vector<RVector> orthogonal_complement(const std::vector<RVector>& vectors,
                                           std::size_t dim);

/// Coefficients c with sum_k c_k vectors[k] = v, if any.
std::optional<RVector> combination_coefficients(
    const std::vector<RVector>& vectors, const RVector& v);

struct PsdResult {
  enum class Kind { kPositiveDefinite, kSemidefinite, kNotPsd };
  Kind kind = Kind::kPositiveDefinite;
  /// kNotPsd: w with A w = 0 and w^T Q w < 0.
  /// kSemidefinite: nonzero w with A w = 0 and w^T Q w = 0.
  RVector witness;

  bool psd() const { return kind != Kind::kNotPsd; }
};

/// Decides w^T Q w >= 0 on {w : A w = 0} by congruence (LDL^T with symmetric
/// pivoting) on a kernel basis. Q is symmetrized first. A may have 0 rows.
PsdResult psd_on_kernel(const RMatrix& q, const RMatrix& a);

}  // namespace mpecstat

#endif  // MPECSTAT_LINALG_HPP_
