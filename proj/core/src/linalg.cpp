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

#include "mpecstat/linalg.hpp"

#include <utility>

#include "mpecstat/error.hpp"

namespace mpecstat {

RMatrix::RMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMatrix RMatrix::from_rows(const std::vector<RVector>& rows, std::size_t cols) {
  RMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "row length mismatch");
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RMatrix RMatrix::from_columns(const std::vector<RVector>& cols,
                              std::size_t rows) {
  return from_rows(cols, rows).transpose();
}

RVector RMatrix::row(std::size_t i) const {
  return RVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RVector RMatrix::col(std::size_t j) const {
  RVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<RVector> RMatrix::row_list() const {
  std::vector<RVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

void RMatrix::append_row(const RVector& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "appended row length mismatch");
  }
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RVector RMatrix::operator*(const RVector& x) const {
  if (x.size() != cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix-vector product");
  }
  RVector y = zeros(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0 && x[j] != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

RMatrix RMatrix::operator*(const RMatrix& other) const {
  if (other.rows_ != cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix-matrix product");
  }
  RMatrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (other(k, j) != 0) p(i, j) += (*this)(i, k) * other(k, j);
    }
  return p;
}

RMatrix RMatrix::col_block(std::size_t begin, std::size_t count) const {
  RMatrix b(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, begin + j);
  return b;
}

RVector transpose_times(const RMatrix& m, const RVector& x) {
  if (x.size() != m.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "transpose product");
  }
  RVector y = zeros(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) y[j] += m(i, j) * x[i];
  }
  return y;
}

bool is_symmetric(const RMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

RMatrix symmetrize(const RMatrix& m) {
  RMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      s(i, j) = (m(i, j) + m(j, i)) / 2;
  return s;
}

RowEchelon rref(const RMatrix& input) {
  RMatrix m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IndexSet pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  RMatrix reduced(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = m(i, j);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const RMatrix& m) { return rref(m).pivotColumns.size(); }

std::size_t rank(const std::vector<RVector>& rows, std::size_t dim) {
  return rank(RMatrix::from_rows(rows, dim));
}

std::vector<RVector> kernel_basis(const RMatrix& m) {
  const RowEchelon e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> isPivot(cols, false);
  for (std::size_t c : e.pivotColumns) isPivot[c] = true;
  std::vector<RVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    RVector x = zeros(cols);
    x[f] = 1;
    for (std::size_t i = 0; i < e.pivotColumns.size(); ++i)
      x[e.pivotColumns[i]] = -e.reduced(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const RMatrix& a, const RVector& b) {
  if (a.rows() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "solve_affine: rows != len(b)");
  }
  RMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const RowEchelon e = rref(aug);
  if (!e.pivotColumns.empty() && e.pivotColumns.back() == a.cols()) {
    return std::nullopt;
  }
  RVector x = zeros(a.cols());
  for (std::size_t i = 0; i < e.pivotColumns.size(); ++i)
    x[e.pivotColumns[i]] = e.reduced(i, a.cols());
  return AffineSolution{std::move(x), kernel_basis(a)};
}

std::vector<RVector> span_basis(const std::vector<RVector>& vectors,
                                std::size_t dim) {
  const RowEchelon e = rref(RMatrix::from_rows(vectors, dim));
  std::vector<RVector> basis;
  for (std::size_t i = 0; i < e.reduced.rows(); ++i)
    basis.push_back(primitive(e.reduced.row(i)));
  return basis;
}

bool in_span(const std::vector<RVector>& vectors, const RVector& v) {
  return combination_coefficients(vectors, v).has_value();
}

std::vector<RVector> orthogonal_complement(const std::vector<RVector>& vectors,
                                           std::size_t dim) {
  return kernel_basis(RMatrix::from_rows(vectors, dim));
}

std::optional<RVector> combination_coefficients(
    const std::vector<RVector>& vectors, const RVector& v) {
  if (vectors.empty()) {
    if (is_zero(v)) return RVector{};
    return std::nullopt;
  }
  auto sol = solve_affine(RMatrix::from_columns(vectors, v.size()), v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

namespace {

Rational form(const RMatrix& q, const RVector& a, const RVector& b) {
  return dot(a, q * b);
}

}  // namespace

PsdResult psd_on_kernel(const RMatrix& qIn, const RMatrix& a) {
  if (qIn.rows() != qIn.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "psd_on_kernel: Q not square");
  }
  const std::size_t d = qIn.rows();
  if (a.cols() != d && !(a.rows() == 0)) {
    throw Error(ErrorCode::kDimensionMismatch, "psd_on_kernel: A columns");
  }
  const RMatrix q = symmetrize(qIn);
  std::vector<RVector> basis =
      a.rows() == 0 ? RMatrix::identity(d).row_list() : kernel_basis(a);

  // Congruence reduction: each positive pivot b splits the form as
  // t^2 Q(b,b) + (form on the Q-orthogonal complement of b).
  while (!basis.empty()) {
    const std::size_t k = basis.size();
    std::size_t pivot = k;
    for (std::size_t i = 0; i < k; ++i) {
      const Rational qii = form(q, basis[i], basis[i]);
      if (qii < 0) {
        return {PsdResult::Kind::kNotPsd, primitive(basis[i])};
      }
      if (qii > 0 && pivot == k) pivot = i;
    }
    if (pivot == k) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          const Rational qij = form(q, basis[i], basis[j]);
          if (qij != 0) {
            RVector w = basis[i];
            axpy(w, qij > 0 ? Rational(-1) : Rational(1), basis[j]);
            return {PsdResult::Kind::kNotPsd, primitive(w)};
          }
        }
      return {PsdResult::Kind::kSemidefinite, primitive(basis.front())};
    }
    const RVector b = basis[pivot];
    const Rational qbb = form(q, b, b);
    std::vector<RVector> rest;
    rest.reserve(k - 1);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == pivot) continue;
      RVector r = basis[i];
      axpy(r, -form(q, b, r) / qbb, b);
      rest.push_back(std::move(r));
    }
    basis = std::move(rest);
  }
  return {PsdResult::Kind::kPositiveDefinite, {}};
}

}  // namespace mpecstat
