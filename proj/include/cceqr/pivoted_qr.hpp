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

// Golub-Businger column-pivoted QR and the GB(k)-form checker.
//
// A matrix R is in GB(k) form when R(:, 0:k) is upper-triangular and, for
// each i < k, |R(i,i)| = max_{j >= i} ||R(i:, j)||.

#ifndef CCEQR_PIVOTED_QR_HPP
#define CCEQR_PIVOTED_QR_HPP

#include <span>
#include <vector>

#include "cceqr/householder.hpp"
#include "cceqr/matrix.hpp"

namespace cceqr {

struct GbFactorization {
  /// A(:, perm) = Q R, zero-based column indices.
  std::vector<Index> perm;
  /// Q = H_0 H_1 ... H_{k-1}.
  HouseholderSet reflectors;
  /// m x n; entries below the diagonal of the first k columns are zero.
  Matrix R;
  Index k = 0;
  /// Relative gap (best - runner_up) / best between the two largest residual
  /// column norms at each pivot step. +inf when only one column remained.
  std::vector<double> pivot_gaps;
};

/// Pivoted QR driver used by both the reference algorithm and the CCEQR
/// candidate factorization. Factors `b` in place for `steps` pivots: on exit the
/// upper triangle holds R, entries below the diagonal of the first `steps`
/// columns hold the reflector tails (unit diagonal implicit), `perm` holds the
/// column order (indices into the original columns of b), and `tau` the scalars.
///
/// Column norms are downdated with gamma(j) -= R(i,j)^2 and recomputed from
/// scratch once gamma(j) drops below 1e-8 of its last exact value. Ties in the
/// pivot search go to the lowest current column position.
void gb_qr_inplace(MatrixView b, Index steps, std::span<Index> perm, std::span<double> tau,
                   std::vector<double>* pivot_gaps = nullptr);

/// Golub-Businger CPQR with recursive column-norm downdating.
/// Throws ArgumentError unless 1 <= k <= min(m, n).
GbFactorization gb_qr(const Matrix& a, Index k);

/// Same algorithm with every residual norm recomputed from scratch at every
/// step. Slow; used as a correctness oracle.
GbFactorization gb_qr_naive(const Matrix& a, Index k);

struct GbCheck {
  bool ok = true;
  enum class Violation { none, not_triangular, not_dominant } violation = Violation::none;
  /// Zero-based location of the first violation (row i, column j).
  Index i = -1;
  Index j = -1;
  /// Offending magnitude and the bound it broke.
  double value = 0.0;
  double bound = 0.0;
};

/// Tolerant GB(k) test: below-diagonal entries of R(:, 0:k) must not exceed
/// tol * ||R||_F, and |R(i,i)| >= (1 - tol) * max_{j >= i} ||R(i:, j)|| for i < k.
GbCheck check_gb_form(ConstMatrixView r, Index k, double tol);

}  // namespace cceqr

#endif  // CCEQR_PIVOTED_QR_HPP
