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

#ifndef CCEQR_MATRIX_HPP
#define CCEQR_MATRIX_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <vector>

namespace cceqr {

using Index = std::int64_t;

/// Half-open index range [begin, end).
struct Range {
  Index begin = 0;
  Index end = 0;
  constexpr Index size() const noexcept { return end - begin; }
};

/// Non-owning column-major view with a leading dimension. `T` is `double` or
/// `const double`.
template <class T>
class BasicMatrixView {
 public:
  BasicMatrixView() = default;
  BasicMatrixView(T* data, Index rows, Index cols, Index ld)
      : data_(data), rows_(rows), cols_(cols), ld_(ld) {}

  // Mutable view -> const view.
  template <class U, class = std::enable_if_t<std::is_same_v<T, const U>>>
  BasicMatrixView(const BasicMatrixView<U>& other)  // NOLINT
      : data_(other.data()), rows_(other.rows()), cols_(other.cols()), ld_(other.ld()) {}

  T* data() const noexcept { return data_; }
  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index ld() const noexcept { return ld_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(Index i, Index j) const noexcept { return data_[i + j * ld_]; }

  std::span<T> col(Index j) const noexcept {
    return {data_ + j * ld_, static_cast<std::size_t>(rows_)};
  }

  /// Sub-block starting at (r0, c0) with the given extent. Unchecked.
  BasicMatrixView block(Index r0, Index c0, Index nr, Index nc) const noexcept {
    return {data_ + r0 + c0 * ld_, nr, nc, ld_};
  }

 private:
  T* data_ = nullptr;
  Index rows_ = 0;
  Index cols_ = 0;
  Index ld_ = 1;
};

using MatrixView = BasicMatrixView<double>;
using ConstMatrixView = BasicMatrixView<const double>;

/// Dense real matrix, column-major, contiguous (leading dimension == rows).
class Matrix {
 public:
  Matrix() = default;
  /// Zero-filled rows x cols matrix.
  Matrix(Index rows, Index cols);
  Matrix(Index rows, Index cols, std::vector<double> column_major);

  /// Row-wise literal, convenient for small fixtures: from_rows({{1,2},{3,4}}).
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(Index n);
  static Matrix copy_of(ConstMatrixView v);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::span<const double> values() const noexcept { return data_; }

  double& operator()(Index i, Index j) noexcept { return data_[i + j * rows_]; }
  double operator()(Index i, Index j) const noexcept { return data_[i + j * rows_]; }

  std::span<double> col(Index j) noexcept {
    return {data_.data() + j * rows_, static_cast<std::size_t>(rows_)};
  }
  std::span<const double> col(Index j) const noexcept {
    return {data_.data() + j * rows_, static_cast<std::size_t>(rows_)};
  }

  MatrixView view() noexcept { return {data_.data(), rows_, cols_, rows_ > 0 ? rows_ : 1}; }
  ConstMatrixView view() const noexcept {
    return {data_.data(), rows_, cols_, rows_ > 0 ? rows_ : 1};
  }
  MatrixView block(Index r0, Index c0, Index nr, Index nc) noexcept {
    return view().block(r0, c0, nr, nc);
  }
  ConstMatrixView block(Index r0, Index c0, Index nr, Index nc) const noexcept {
    return view().block(r0, c0, nr, nc);
  }

  void swap_columns(Index a, Index b) noexcept;

  bool operator==(const Matrix& other) const = default;

 private:
  std::vector<double> data_;
  Index rows_ = 0;
  Index cols_ = 0;
};

double frobenius_norm(ConstMatrixView a);
/// Squared Euclidean norm of every column.
std::vector<double> column_norms_squared(ConstMatrixView a);
/// A(:, perm). Throws ContractError if any index is out of range.
Matrix gather_columns(ConstMatrixView a, std::span<const Index> perm);
/// C = A * B, general dense product (BLAS-3).
Matrix multiply(ConstMatrixView a, ConstMatrixView b);
Matrix transpose(ConstMatrixView a);
bool all_finite(ConstMatrixView a);

}  // namespace cceqr

#endif  // CCEQR_MATRIX_HPP
