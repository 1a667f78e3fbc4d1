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

// Dense kernels on top of Eigen maps. Internal to the library; dimensions are
// assumed conformal (callers validate at the public boundary).

#ifndef CCEQR_SRC_BLAS_HPP
#define CCEQR_SRC_BLAS_HPP

#include <Eigen/Core>

#include "cceqr/matrix.hpp"

namespace cceqr::blas {

using Dense = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;
using Map = Eigen::Map<Dense, Eigen::Unaligned, Eigen::OuterStride<>>;
using ConstMap = Eigen::Map<const Dense, Eigen::Unaligned, Eigen::OuterStride<>>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

inline Map map(MatrixView a) {
  return Map(a.data(), a.rows(), a.cols(), Eigen::OuterStride<>(a.ld()));
}
inline ConstMap map(ConstMatrixView a) {
  return ConstMap(a.data(), a.rows(), a.cols(), Eigen::OuterStride<>(a.ld()));
}

enum class Op { none, trans };
enum class Side { left, right };
enum class Uplo { upper, lower };
enum class Diag { unit, non_unit };

/// C <- alpha * op(A) * op(B) + beta * C
inline void gemm(Op ta, Op tb, double alpha, ConstMatrixView a, ConstMatrixView b, double beta,
                 MatrixView c) {
  if (c.empty()) return;
  Map cm = map(c);
  if (beta == 0.0)
    cm.setZero();
  else if (beta != 1.0)
    cm *= beta;
  const Index k = ta == Op::none ? a.cols() : a.rows();
  if (k == 0 || alpha == 0.0) return;
  const ConstMap am = map(a);
  const ConstMap bm = map(b);
  if (ta == Op::none && tb == Op::none)
    cm.noalias() += alpha * am * bm;
  else if (ta == Op::trans && tb == Op::none)
    cm.noalias() += alpha * am.transpose() * bm;
  else if (ta == Op::none)
    cm.noalias() += alpha * am * bm.transpose();
  else
    cm.noalias() += alpha * am.transpose() * bm.transpose();
}

namespace detail {

template <unsigned Mode, class Tri>
void trmm_apply(Side side, double alpha, const Tri& a, Map& b) {
  if (side == Side::left) {
    Dense tmp = a.template triangularView<Mode>() * b;
    b = alpha * tmp;
  } else {
    Dense tmp = b * a.template triangularView<Mode>();
    b = alpha * tmp;
  }
}

template <class Tri>
void trmm_dispatch(Side side, bool upper, Diag diag, double alpha, const Tri& a, Map& b) {
  if (upper) {
    if (diag == Diag::unit)
      trmm_apply<Eigen::UnitUpper>(side, alpha, a, b);
    else
      trmm_apply<Eigen::Upper>(side, alpha, a, b);
  } else {
    if (diag == Diag::unit)
      trmm_apply<Eigen::UnitLower>(side, alpha, a, b);
    else
      trmm_apply<Eigen::Lower>(side, alpha, a, b);
  }
}

}  // namespace detail

/// B <- alpha * op(A) * B  (side left)  or  B <- alpha * B * op(A)  (side right),
/// A square triangular; only the `uplo` triangle of A is read.
inline void trmm(Side side, Uplo uplo, Op ta, Diag diag, double alpha, ConstMatrixView a,
                 MatrixView b) {
  if (b.empty()) return;
  Map bm = map(b);
  const ConstMap am = map(a);
  if (ta == Op::none)
    detail::trmm_dispatch(side, uplo == Uplo::upper, diag, alpha, am, bm);
  else
    detail::trmm_dispatch(side, uplo != Uplo::upper, diag, alpha, am.transpose(), bm);
}

/// y <- alpha * op(A) * x + beta * y
inline void gemv(Op ta, double alpha, ConstMatrixView a, const double* x, double beta,
                 double* y) {
  const Index ylen = ta == Op::none ? a.rows() : a.cols();
  const Index xlen = ta == Op::none ? a.cols() : a.rows();
  if (ylen == 0) return;
  VecMap ym(y, ylen);
  if (beta == 0.0)
    ym.setZero();
  else if (beta != 1.0)
    ym *= beta;
  if (xlen == 0) return;
  const ConstVecMap xm(x, xlen);
  if (ta == Op::none)
    ym.noalias() += alpha * map(a) * xm;
  else
    ym.noalias() += alpha * map(a).transpose() * xm;
}

/// A <- A + alpha * x * y^T
inline void ger(double alpha, const double* x, const double* y, MatrixView a) {
  if (a.empty()) return;
  map(a).noalias() += alpha * ConstVecMap(x, a.rows()) * ConstVecMap(y, a.cols()).transpose();
}

inline double nrm2(Index n, const double* x) { return n > 0 ? ConstVecMap(x, n).stableNorm() : 0.0; }

inline double dot(Index n, const double* x, const double* y) {
  return n > 0 ? ConstVecMap(x, n).dot(ConstVecMap(y, n)) : 0.0;
}

}  // namespace cceqr::blas

#endif  // CCEQR_SRC_BLAS_HPP
