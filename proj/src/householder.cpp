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

#include "cceqr/householder.hpp"

#include <cmath>
#include <string>

#include "blas.hpp"
#include "cceqr/errors.hpp"

namespace cceqr {

double make_reflector(double& alpha, std::span<double> tail) {
  const double xnorm = blas::nrm2(static_cast<Index>(tail.size()), tail.data());
  if (xnorm == 0.0) return 0.0;

  const double beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
  const double tau = (beta - alpha) / beta;
  const double scale = 1.0 / (alpha - beta);
  for (double& x : tail) x *= scale;
  alpha = beta;
  return tau;
}

HouseholderResult householder(std::span<const double> x, Index pivot) {
  const auto m = static_cast<Index>(x.size());
  if (pivot < 0 || pivot >= m)
    throw ArgumentError("householder: pivot " + std::to_string(pivot) + " outside [0, " +
                        std::to_string(m) + ")");

  HouseholderResult out;
  out.reflector.pivot = pivot;
  out.reflector.v.assign(x.size(), 0.0);
  std::span<double> v = out.reflector.v;
  for (Index i = pivot + 1; i < m; ++i) v[i] = x[i];

  double alpha = x[pivot];
  out.reflector.tau = make_reflector(alpha, v.subspan(static_cast<std::size_t>(pivot) + 1));
  if (out.reflector.tau == 0.0) {
    for (Index i = pivot + 1; i < m; ++i) v[i] = 0.0;
  }
  v[pivot] = 1.0;
  out.mu = alpha;
  return out;
}

void apply_reflector(MatrixView m, std::span<const double> v, double tau) {
  if (static_cast<Index>(v.size()) != m.rows())
    throw ContractError("apply_reflector: reflector length " + std::to_string(v.size()) +
                        " != rows " + std::to_string(m.rows()));
  if (tau == 0.0 || m.empty()) return;
  std::vector<double> w(static_cast<std::size_t>(m.cols()));
  blas::gemv(blas::Op::trans, 1.0, m, v.data(), 0.0, w.data());
  blas::ger(-tau, v.data(), w.data(), m);
}

void apply_reflector(Matrix& m, std::span<const double> v, double tau) {
  apply_reflector(m.view(), v, tau);
}

}  // namespace cceqr
