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

#include "cceqr/compact_wy.hpp"

#include <algorithm>
#include <string>

#include "blas.hpp"
#include "cceqr/errors.hpp"

namespace cceqr {

using blas::Diag;
using blas::Op;
using blas::Side;
using blas::Uplo;

CompactWY CompactWY::zeros(Index m, Index capacity) {
  if (capacity > m) throw ContractError("compact WY capacity exceeds row count");
  return CompactWY{Matrix(m, capacity), Matrix(capacity, capacity), 0};
}

Matrix compact_wy_factor(ConstMatrixView v, std::span<const double> tau) {
  const Index r = v.cols();
  if (static_cast<Index>(tau.size()) != r)
    throw ContractError("compact_wy_factor: tau length != number of reflectors");
  Matrix t(r, r);
  std::vector<double> w(static_cast<std::size_t>(r));
  for (Index i = 0; i < r; ++i) {
    const double ti = tau[static_cast<std::size_t>(i)];
    t(i, i) = ti;
    if (i == 0 || ti == 0.0) continue;
    // T(0:i, i) = -tau_i * T(0:i, 0:i) * V(:, 0:i)^T v_i
    blas::gemv(Op::trans, -ti, v.block(0, 0, v.rows(), i), &v(0, i), 0.0, w.data());
    MatrixView wcol(w.data(), i, 1, std::max<Index>(i, 1));
    blas::trmm(Side::left, Uplo::upper, Op::none, Diag::non_unit, 1.0, t.block(0, 0, i, i),
               wcol);
    for (Index k = 0; k < i; ++k) t(k, i) = w[static_cast<std::size_t>(k)];
  }
  return t;
}

CompactWY compact_wy(const HouseholderSet& hs) {
  const auto r = static_cast<Index>(hs.size());
  const Index m = r > 0 ? static_cast<Index>(hs.front().v.size()) : 0;
  CompactWY wy = CompactWY::zeros(m, r);
  std::vector<double> tau(static_cast<std::size_t>(r));
  for (Index j = 0; j < r; ++j) {
    const Reflector& h = hs[static_cast<std::size_t>(j)];
    if (static_cast<Index>(h.v.size()) != m)
      throw ContractError("compact_wy: reflectors have different lengths");
    for (Index i = 0; i < j; ++i)
      if (h.v[static_cast<std::size_t>(i)] != 0.0)
        throw ContractError("compact_wy: reflector " + std::to_string(j) +
                            " is not zero above its pivot");
    if (h.v[static_cast<std::size_t>(j)] != 1.0)
      throw ContractError("compact_wy: reflector " + std::to_string(j) +
                          " lacks a unit diagonal entry");
    std::ranges::copy(h.v, wy.V.col(j).begin());
    tau[static_cast<std::size_t>(j)] = h.tau;
  }
  wy.T = compact_wy_factor(wy.V.view(), tau);
  wy.r = r;
  return wy;
}

void apply_qt(MatrixView c, ConstMatrixView v, ConstMatrixView t) {
  const Index r = v.cols();
  if (r == 0 || c.empty()) return;
  if (v.rows() != c.rows() || t.rows() != r || t.cols() != r || v.rows() < r)
    throw ContractError("apply_qt: V, T and the target block are not conformal");

  const Index m = c.rows();
  const Index n = c.cols();
  ConstMatrixView v1 = v.block(0, 0, r, r);
  ConstMatrixView v2 = v.block(r, 0, m - r, r);
  MatrixView c1 = c.block(0, 0, r, n);
  MatrixView c2 = c.block(r, 0, m - r, n);

  // W = V^T C
  Matrix w = Matrix::copy_of(c1);
  blas::trmm(Side::left, Uplo::lower, Op::trans, Diag::unit, 1.0, v1, w.view());
  if (m > r) blas::gemm(Op::trans, Op::none, 1.0, v2, c2, 1.0, w.view());

  // W = T^T W
  blas::trmm(Side::left, Uplo::upper, Op::trans, Diag::non_unit, 1.0, t, w.view());

  // C = C - V W
  if (m > r) blas::gemm(Op::none, Op::none, -1.0, v2, w.view(), 1.0, c2);
  blas::trmm(Side::left, Uplo::lower, Op::none, Diag::unit, 1.0, v1, w.view());
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < r; ++i) c1(i, j) -= w(i, j);
}

void apply_qt_block(Matrix& m, const CompactWY& wy, Range rows, Range cols) {
  if (rows.begin < 0 || rows.end > m.rows() || rows.begin > rows.end || cols.begin < 0 ||
      cols.end > m.cols() || cols.begin > cols.end)
    throw ContractError("apply_qt_block: range outside matrix");
  if (wy.r == 0) return;
  if (rows.size() != wy.rows())
    throw ContractError("apply_qt_block: row range has " + std::to_string(rows.size()) +
                        " rows, WY factors have " + std::to_string(wy.rows()));
  apply_qt(m.block(rows.begin, cols.begin, rows.size(), cols.size()), wy.active_v(),
           wy.active_t());
}

void update_wy(CompactWY& wy, ConstMatrixView vhat, ConstMatrixView that) {
  const Index m = wy.rows();
  const Index s = wy.r;
  const Index c = vhat.cols();
  if (vhat.rows() != m || that.rows() != c || that.cols() != c)
    throw ContractError("update_wy: new factors are not conformal");
  if (s + c > wy.capacity())
    throw ContractError("update_wy: " + std::to_string(s + c) + " reflectors exceed capacity " +
                        std::to_string(wy.capacity()));
  for (Index j = 0; j < c; ++j) {
    const Index g = s + j;
    for (Index i = 0; i < g; ++i)
      if (vhat(i, j) != 0.0)
        throw ContractError("update_wy: combined V is not lower-trapezoidal (column " +
                            std::to_string(g) + ")");
    if (vhat(g, j) != 1.0)
      throw ContractError("update_wy: combined V lacks a unit diagonal (column " +
                          std::to_string(g) + ")");
  }
  if (c == 0) return;

  if (s > 0) {
    // X = V1^T Vhat; Vhat vanishes above row s so only rows s: contribute.
    Matrix x(s, c);
    blas::gemm(Op::trans, Op::none, 1.0, wy.V.block(s, 0, m - s, s), vhat.block(s, 0, m - s, c),
               0.0, x.view());
    blas::trmm(Side::left, Uplo::upper, Op::none, Diag::non_unit, 1.0, wy.T.block(0, 0, s, s),
               x.view());
    blas::trmm(Side::right, Uplo::upper, Op::none, Diag::non_unit, 1.0, that, x.view());
    for (Index j = 0; j < c; ++j)
      for (Index i = 0; i < s; ++i) wy.T(i, s + j) = -x(i, j);
  }
  for (Index j = 0; j < c; ++j) {
    for (Index i = 0; i <= j; ++i) wy.T(s + i, s + j) = that(i, j);
    std::ranges::copy(vhat.col(j), wy.V.col(s + j).begin());
  }
  wy.r = s + c;
}

Matrix form_q(const CompactWY& wy) {
  const Index m = wy.rows();
  Matrix q = Matrix::identity(m);
  if (wy.r == 0) return q;
  Matrix vt = multiply(wy.active_v(), wy.active_t());
  blas::gemm(Op::none, Op::trans, -1.0, vt.view(), wy.active_v(), 1.0, q.view());
  return q;
}

}  // namespace cceqr
