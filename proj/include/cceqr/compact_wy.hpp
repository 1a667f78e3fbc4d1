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

#ifndef CCEQR_COMPACT_WY_HPP
#define CCEQR_COMPACT_WY_HPP

#include <span>

#include "cceqr/householder.hpp"
#include "cceqr/matrix.hpp"

namespace cceqr {

/// Q = I - V T V^T with V unit lower-trapezoidal and T upper-triangular.
///
/// Storage is preallocated to a fixed capacity: V is m x capacity and T is
/// capacity x capacity. Only the leading `r` columns of V and the leading
/// r x r block of T are meaningful; everything beyond is zero.
struct CompactWY {
  Matrix V;
  Matrix T;
  Index r = 0;

  static CompactWY zeros(Index m, Index capacity);

  Index rows() const noexcept { return V.rows(); }
  Index capacity() const noexcept { return V.cols(); }
  ConstMatrixView active_v() const noexcept { return V.block(0, 0, V.rows(), r); }
  ConstMatrixView active_t() const noexcept { return T.block(0, 0, r, r); }
};

/// Schreiber-Van Loan accumulation: T for Q = prod_i (I - tau_i v_i v_i^T).
/// V holds the reflectors as columns (unit lower-trapezoidal). Returns r x r.
Matrix compact_wy_factor(ConstMatrixView v, std::span<const double> tau);

/// Compact WY form of an ordered reflector set. The result has capacity r.
/// Throws ContractError if the vectors are not unit lower-trapezoidal.
CompactWY compact_wy(const HouseholderSet& hs);

/// block <- (I - V T V^T)^T block, LARFB-style: triangular products on the
/// leading r x r part of V and on T, general products on the rest.
/// V is block.rows() x r, T is r x r.
void apply_qt(MatrixView block, ConstMatrixView v, ConstMatrixView t);

/// Range-checked form: applies the active part of `wy` to M(rows, cols).
/// Requires rows.size() == wy.rows().
void apply_qt_block(Matrix& m, const CompactWY& wy, Range rows, Range cols);

/// Appends c reflectors to `wy`:
///   T2 = [[T1, -T1 V1^T Vhat That], [0, That]],  V2 = [V1 Vhat].
/// `vhat` is m x c, zero-padded so that V2 stays unit lower-trapezoidal;
/// `that` is c x c. Throws ContractError on capacity overflow or when the
/// combined V is not unit lower-trapezoidal.
void update_wy(CompactWY& wy, ConstMatrixView vhat, ConstMatrixView that);

/// Dense m x m matrix I - V T V^T (for tests and diagnostics).
Matrix form_q(const CompactWY& wy);

}  // namespace cceqr

#endif  // CCEQR_COMPACT_WY_HPP
