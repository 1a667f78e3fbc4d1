// Copyright 2026 The CCEQR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cceqr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blas.hpp"
#include "cceqr/errors.hpp"

namespace cceqr {

Matrix::Matrix(Index rows, Index cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw ArgumentError("matrix dimensions must be nonnegative");
  data_.assign(static_cast<std::size_t>(rows * cols), 0.0);
}

Matrix::Matrix(Index rows, Index cols, std::vector<double> column_major)
    : data_(std::move(column_major)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw ArgumentError("matrix dimensions must be nonnegative");
  if (static_cast<Index>(data_.size()) != rows * cols)
    throw ContractError("data length " + std::to_string(data_.size()) + " != rows*cols " +
                        std::to_string(rows * cols));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
  Matrix out(m, n);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n) throw ContractError("ragged row literal");
    Index j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

Matrix Matrix::identity(Index n) {
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::copy_of(ConstMatrixView v) {
  Matrix out(v.rows(), v.cols());
  for (Index j = 0; j < v.cols(); ++j) std::ranges::copy(v.col(j), out.col(j).begin());
  return out;
}

void Matrix::swap_columns(Index a, Index b) noexcept {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * rows_, data_.begin() + (a + 1) * rows_,
                   data_.begin() + b * rows_);
}

double frobenius_norm(ConstMatrixView a) {
  double scale = 0.0;
  double ssq = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    const double c = blas::nrm2(a.rows(), &a(0, j));
    if (c == 0.0) continue;
    if (scale < c) {
      ssq = 1.0 + ssq * (scale / c) * (scale / c);
      scale = c;
    } else {
      ssq += (c / scale) * (c / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

std::vector<double> column_norms_squared(ConstMatrixView a) {
  std::vector<double> out(static_cast<std::size_t>(a.cols()));
  for (Index j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (double x : a.col(j)) s += x * x;
    out[static_cast<std::size_t>(j)] = s;
  }
  return out;
}

Matrix gather_columns(ConstMatrixView a, std::span<const Index> perm) {
  Matrix out(a.rows(), static_cast<Index>(perm.size()));
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (perm[j] < 0 || perm[j] >= a.cols())
      throw ContractError("column index " + std::to_string(perm[j]) + " out of range");
    std::ranges::copy(a.col(perm[j]), out.col(static_cast<Index>(j)).begin());
  }
  return out;
}

Matrix multiply(ConstMatrixView a, ConstMatrixView b) {
  if (a.cols() != b.rows()) throw ContractError("multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  blas::gemm(blas::Op::none, blas::Op::none, 1.0, a, b, 0.0, c.view());
  return c;
}

Matrix transpose(ConstMatrixView a) {
  Matrix t(a.cols(), a.rows());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
  return t;
}

bool all_finite(ConstMatrixView a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (double x : a.col(j))
      if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace cceqr
