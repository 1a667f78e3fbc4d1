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

#ifndef CCEQR_HOUSEHOLDER_HPP
#define CCEQR_HOUSEHOLDER_HPP

#include <span>
#include <vector>

#include "cceqr/matrix.hpp"

namespace cceqr {

/// Elementary reflector H = I - tau * v * v^T.
///
/// `v` has full length m, with v(0..pivot-1) = 0 and v(pivot) = 1.
struct Reflector {
  std::vector<double> v;
  double tau = 0.0;
  Index pivot = 0;
};

/// Ordered reflectors; the product is H_0 * H_1 * ... * H_{r-1}.
using HouseholderSet = std::vector<Reflector>;

struct HouseholderResult {
  Reflector reflector;
  /// The value left at position `pivot` after reflecting x.
  double mu = 0.0;
};

/// Reflector that maps x to [x(0..pivot-1), mu, 0, ..., 0].
///
/// Sign convention follows LAPACK's xLARFG: mu = -sign(x(pivot)) * ||x(pivot:)||
/// with sign(0) = +1. When x(pivot+1:) is already zero, tau = 0 and mu = x(pivot).
HouseholderResult householder(std::span<const double> x, Index pivot);

/// Reflector generation on a contiguous tail, in place (xLARFG semantics):
/// on entry `alpha` is x(0) and `tail` is x(1:); on exit `alpha` holds mu and
/// `tail` holds v(1:) (v(0) = 1 implicitly). Returns tau.
double make_reflector(double& alpha, std::span<double> tail);

/// M <- (I - tau v v^T) M as one matrix-vector product plus a rank-1 update.
/// Throws ContractError when v.size() != M.rows().
void apply_reflector(MatrixView m, std::span<const double> v, double tau);
void apply_reflector(Matrix& m, std::span<const double> v, double tau);

}  // namespace cceqr

#endif  // CCEQR_HOUSEHOLDER_HPP
