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

#include "cceqr/pivoted_qr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "blas.hpp"
#include "cceqr/errors.hpp"

namespace cceqr {
namespace {

constexpr double kRecomputeFraction = 1e-8;

void check_rank(const Matrix& a, Index k) {
  const Index kmax = std::min(a.rows(), a.cols());
  if (k < 1 || k > kmax)
    throw ArgumentError("k = " + std::to_string(k) + " outside [1, " + std::to_string(kmax) +
                        "]");
}

double sum_squares(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// Largest and runner-up of gamma[from:], lowest index wins ties.
struct PivotChoice {
  Index index;
  double gap;
};

PivotChoice choose_pivot(std::span<const double> gamma, Index from) {
  Index best = from;
  double second = -1.0;
  for (Index j = from + 1; j < static_cast<Index>(gamma.size()); ++j) {
    const double g = gamma[static_cast<std::size_t>(j)];
    if (g > gamma[static_cast<std::size_t>(best)]) {
      second = gamma[static_cast<std::size_t>(best)];
      best = j;
    } else if (g > second) {
      second = g;
    }
  }
  const double top = std::sqrt(std::max(gamma[static_cast<std::size_t>(best)], 0.0));
  double gap = std::numeric_limits<double>::infinity();
  if (second >= 0.0) gap = top > 0.0 ? (top - std::sqrt(std::max(second, 0.0))) / top : 0.0;
  return {best, gap};
}

// Reflects column i of b into R form and applies the reflector to the
// trailing columns. Returns tau.
double reflect_step(MatrixView b, Index i) {
  const Index m = b.rows();
  const Index n = b.cols();
  double alpha = b(i, i);
  auto tail = std::span<double>(&b(i, i), static_cast<std::size_t>(m - i)).subspan(1);
  const double tau = make_reflector(alpha, tail);
  if (tau != 0.0 && i + 1 < n) {
    b(i, i) = 1.0;
    apply_reflector(b.block(i, i + 1, m - i, n - i - 1),
                    std::span<const double>(&b(i, i), static_cast<std::size_t>(m - i)), tau);
  }
  b(i, i) = alpha;
  return tau;
}

void swap_columns(MatrixView b, Index x, Index y) {
  if (x == y) return;
  std::swap_ranges(b.col(x).begin(), b.col(x).end(), b.col(y).begin());
}

GbFactorization package(Matrix&& work, Index k, std::vector<Index>&& perm,
                        std::span<const double> tau, std::vector<double>&& gaps) {
  const Index m = work.rows();
  GbFactorization out;
  out.k = k;
  out.perm = std::move(perm);
  out.pivot_gaps = std::move(gaps);
  out.reflectors.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    Reflector h;
    h.pivot = i;
    h.tau = tau[static_cast<std::size_t>(i)];
    h.v.assign(static_cast<std::size_t>(m), 0.0);
    h.v[static_cast<std::size_t>(i)] = 1.0;
    if (h.tau != 0.0)
      for (Index r = i + 1; r < m; ++r) h.v[static_cast<std::size_t>(r)] = work(r, i);
    out.reflectors.push_back(std::move(h));
    for (Index r = i + 1; r < m; ++r) work(r, i) = 0.0;
  }
  out.R = std::move(work);
  return out;
}

}  // namespace

void gb_qr_inplace(MatrixView b, Index steps, std::span<Index> perm, std::span<double> tau,
                   std::vector<double>* pivot_gaps) {
  const Index m = b.rows();
  const Index n = b.cols();
  if (steps < 0 || steps > std::min(m, n))
    throw ArgumentError("gb_qr_inplace: steps outside [0, min(m, n)]");
  if (static_cast<Index>(perm.size()) != n || static_cast<Index>(tau.size()) < steps)
    throw ContractError("gb_qr_inplace: workspace sizes do not match the block");

  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<double> gamma(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) gamma[static_cast<std::size_t>(j)] = sum_squares(b.col(j));
  std::vector<double> exact = gamma;
  if (pivot_gaps) pivot_gaps->clear();

  for (Index i = 0; i < steps; ++i) {
    const PivotChoice pc = choose_pivot(gamma, i);
    if (pivot_gaps) pivot_gaps->push_back(pc.gap);
    const Index jmax = pc.index;
    if (jmax != i) {
      swap_columns(b, i, jmax);
      std::swap(gamma[static_cast<std::size_t>(i)], gamma[static_cast<std::size_t>(jmax)]);
      std::swap(exact[static_cast<std::size_t>(i)], exact[static_cast<std::size_t>(jmax)]);
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(jmax)]);
    }
    tau[static_cast<std::size_t>(i)] = reflect_step(b, i);

    for (Index j = i + 1; j < n; ++j) {
      auto& g = gamma[static_cast<std::size_t>(j)];
      const double rij = b(i, j);
      g = std::max(g - rij * rij, 0.0);
      if (g < kRecomputeFraction * exact[static_cast<std::size_t>(j)]) {
        g = sum_squares(std::span<const double>(&b(0, j) + i + 1,
                                                static_cast<std::size_t>(m - i - 1)));
        exact[static_cast<std::size_t>(j)] = g;
      }
    }
  }
}

GbFactorization gb_qr(const Matrix& a, Index k) {
  check_rank(a, k);
  Matrix work = a;
  std::vector<Index> perm(static_cast<std::size_t>(a.cols()));
  std::vector<double> tau(static_cast<std::size_t>(k));
  std::vector<double> gaps;
  gb_qr_inplace(work.view(), k, perm, tau, &gaps);
  return package(std::move(work), k, std::move(perm), tau, std::move(gaps));
}

GbFactorization gb_qr_naive(const Matrix& a, Index k) {
  check_rank(a, k);
  const Index m = a.rows();
  const Index n = a.cols();
  Matrix work = a;
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<double> tau(static_cast<std::size_t>(k));
  std::vector<double> gaps;
  std::vector<double> norms(static_cast<std::size_t>(n));

  for (Index i = 0; i < k; ++i) {
    for (Index j = i; j < n; ++j)
      norms[static_cast<std::size_t>(j)] =
          sum_squares(std::span<const double>(&work(i, j), static_cast<std::size_t>(m - i)));
    const PivotChoice pc = choose_pivot(norms, i);
    gaps.push_back(pc.gap);
    if (pc.index != i) {
      work.swap_columns(i, pc.index);
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pc.index)]);
    }
    tau[static_cast<std::size_t>(i)] = reflect_step(work.view(), i);
  }
  return package(std::move(work), k, std::move(perm), tau, std::move(gaps));
}

GbCheck check_gb_form(ConstMatrixView r, Index k, double tol) {
  const Index m = r.rows();
  const Index n = r.cols();
  if (k < 0 || k > std::min(m, n))
    throw ArgumentError("check_gb_form: k outside [0, min(m, n)]");
  GbCheck out;
  if (k == 0) return out;

  const double below_bound = tol * frobenius_norm(r);
  for (Index j = 0; j < k; ++j) {
    for (Index i = j + 1; i < m; ++i) {
      if (std::abs(r(i, j)) > below_bound) {
        out.ok = false;
        out.violation = GbCheck::Violation::not_triangular;
        out.i = i;
        out.j = j;
        out.value = std::abs(r(i, j));
        out.bound = below_bound;
        return out;
      }
    }
  }

  // max_{j >= i} ||R(i:, j)||^2 for i < k, with its argmax. Suffix sums are
  // accumulated bottom-up per column so no cancellation enters the check.
  std::vector<double> best(static_cast<std::size_t>(k), 0.0);
  std::vector<Index> best_at(static_cast<std::size_t>(k), -1);
  std::vector<double> suffix(static_cast<std::size_t>(m) + 1);
  for (Index j = 0; j < n; ++j) {
    suffix[static_cast<std::size_t>(m)] = 0.0;
    for (Index i = m - 1; i >= 0; --i)
      suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] + r(i, j) * r(i, j);
    const Index upto = std::min(j, k - 1);
    for (Index i = 0; i <= upto; ++i) {
      if (suffix[static_cast<std::size_t>(i)] > best[static_cast<std::size_t>(i)] ||
          best_at[static_cast<std::size_t>(i)] < 0) {
        best[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i)];
        best_at[static_cast<std::size_t>(i)] = j;
      }
    }
  }
  for (Index i = 0; i < k; ++i) {
    const double diag = std::abs(r(i, i));
    const double bound = (1.0 - tol) * std::sqrt(best[static_cast<std::size_t>(i)]);
    if (diag < bound) {
      out.ok = false;
      out.violation = GbCheck::Violation::not_dominant;
      out.i = i;
      out.j = best_at[static_cast<std::size_t>(i)];
      out.value = diag;
      out.bound = bound;
      return out;
    }
  }
  return out;
}

}  // namespace cceqr
