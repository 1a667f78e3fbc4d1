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

#include "cceqr/diagnostics.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "blas.hpp"
#include "cceqr/errors.hpp"
#include "cceqr/pivoted_qr.hpp"

namespace cceqr {
namespace {

constexpr double kGbTolerance = 1e-10;
constexpr double kBoundSlack = 1e-12;

// Singular values of a, descending. Fills u with the thin left singular
// vectors when requested.
std::vector<double> singular_values(const Matrix& a, Matrix* u = nullptr) {
  const Index r = std::min(a.rows(), a.cols());
  std::vector<double> s(static_cast<std::size_t>(r));
  if (r == 0) return s;
  const unsigned options = u ? static_cast<unsigned>(Eigen::ComputeThinU) : 0u;
  const Eigen::BDCSVD<blas::Dense> svd(blas::map(a.view()), options);
  for (Index i = 0; i < r; ++i) s[static_cast<std::size_t>(i)] = svd.singularValues()(i);
  if (u) {
    *u = Matrix(a.rows(), r);
    blas::map(u->view()) = svd.matrixU();
  }
  return s;
}

void check_perm(std::span<const Index> p, Index n, Index need) {
  if (static_cast<Index>(p.size()) < need)
    throw ArgumentError("permutation shorter than k");
  for (Index j = 0; j < need; ++j) {
    const Index v = p[static_cast<std::size_t>(j)];
    if (v < 0 || v >= n) throw ContractError("permutation index " + std::to_string(v) + " out of range");
  }
}

template <class F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::ranges::sort(v);
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::cceqr_cssp: return "cceqr-cssp";
    case Algorithm::cceqr_full: return "cceqr-full";
    case Algorithm::gb: return "gb";
    case Algorithm::gb_naive: return "gb-naive";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm a : {Algorithm::cceqr_cssp, Algorithm::cceqr_full, Algorithm::gb,
                      Algorithm::gb_naive})
    if (algorithm_name(a) == name) return a;
  return std::nullopt;
}

std::string_view equivalence_name(Equivalence e) noexcept {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::mismatch: return "mismatch";
    case Equivalence::inconclusive: return "inconclusive";
  }
  return "unknown";
}

EquivalenceReport compare_with_naive(const Matrix& a, Index k, std::span<const Index> perm) {
  check_perm(perm, a.cols(), k);
  const GbFactorization naive = gb_qr_naive(a, k);
  EquivalenceReport out;
  out.perm.assign(perm.begin(), perm.begin() + k);
  out.naive_perm.assign(naive.perm.begin(), naive.perm.begin() + k);
  out.min_gap = naive.pivot_gaps.empty()
                    ? std::numeric_limits<double>::infinity()
                    : *std::ranges::min_element(naive.pivot_gaps);
  const auto diff = std::ranges::mismatch(out.perm, out.naive_perm);
  if (diff.in1 != out.perm.end()) out.first_difference = diff.in1 - out.perm.begin();
  if (out.min_gap < kTieGap)
    out.status = Equivalence::inconclusive;
  else
    out.status = out.first_difference < 0 ? Equivalence::equivalent : Equivalence::mismatch;
  return out;
}

EquivalenceReport verify_equivalence(const Matrix& a, Index k, double rho) {
  CceqrOptions options;
  options.rho = rho;
  const SelectionResult sel = select_columns(a, k, options);
  return compare_with_naive(a, k, sel.p);
}

RankRevealMetrics rank_reveal_metrics(const Matrix& a, std::span<const Index> p, Index k) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index kmax = std::min(m, n);
  if (k < 1 || k > kmax) throw ArgumentError("rank_reveal_metrics: k out of range");
  if (m * n > kSvdEntryLimit)
    throw ArgumentError("rank_reveal_metrics: " + std::to_string(m * n) +
                        " entries exceed the dense SVD limit");
  check_perm(p, n, k);

  RankRevealMetrics out;
  out.q_bound = std::ldexp(std::sqrt(static_cast<double>(std::max<Index>(n - k, 1))), static_cast<int>(std::min<Index>(k, 2000)));

  const std::vector<double> sa = singular_values(a);
  const double floor = std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(m, n)) * sa.front();

  Matrix u;
  const Matrix skeleton = gather_columns(a.view(), p.first(static_cast<std::size_t>(k)));
  const std::vector<double> ss = singular_values(skeleton, &u);
  const double sigma_k = sa[static_cast<std::size_t>(k - 1)];
  out.sigma_ratio = sigma_k > floor ? ss.back() / sigma_k : 1.0;

  if (k == kmax || sa[static_cast<std::size_t>(k)] <= floor) {
    out.zero_residual = true;
    out.residual_ratio = 0.0;
  } else {
    // Orthonormal basis for range(A(:,s)), dropping negligible directions.
    Index rank = 0;
    while (rank < static_cast<Index>(ss.size()) && ss[static_cast<std::size_t>(rank)] > floor) ++rank;
    Matrix e = a;
    if (rank > 0) {
      ConstMatrixView ur = u.block(0, 0, m, rank);
      Matrix c(rank, n);
      blas::gemm(blas::Op::trans, blas::Op::none, 1.0, ur, a.view(), 0.0, c.view());
      blas::gemm(blas::Op::none, blas::Op::none, -1.0, ur, c.view(), 1.0, e.view());
    }
    const double err = singular_values(e).front();
    out.residual_ratio = err / sa[static_cast<std::size_t>(k)];
  }
  out.bounds_ok = out.sigma_ratio * (1.0 + kBoundSlack) >= 1.0 / out.q_bound &&
                  (out.zero_residual || out.residual_ratio <= out.q_bound * (1.0 + kBoundSlack));
  return out;
}

MassCdf norm_mass_cdf(ConstMatrixView a, std::span<const double> quantiles) {
  for (double q : quantiles)
    if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("norm_mass_cdf: quantile outside [0, 1]");
  std::vector<double> mass = column_norms_squared(a);
  std::ranges::sort(mass, std::greater<>());
  std::vector<double> cumulative(mass.size() + 1, 0.0);
  std::partial_sum(mass.begin(), mass.end(), cumulative.begin() + 1);
  const double total = cumulative.back();

  MassCdf out;
  out.zero_matrix = !(total > 0.0);
  const auto n = static_cast<double>(mass.size());
  for (double q : quantiles) {
    if (out.zero_matrix) {
      out.fractions.push_back(0.0);
      continue;
    }
    const auto cols = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(q * n - 1e-9)), 0,
                                              mass.size());
    out.fractions.push_back(cumulative[cols] / total);
  }
  return out;
}

Matrix reconstruct_r(const Matrix& a, std::span<const Index> p, const CompactWY& wy) {
  Matrix r = gather_columns(a.view(), p);
  apply_qt_block(r, wy, Range{0, r.rows()}, Range{0, r.cols()});
  return r;
}

RunReport run_report(const Matrix& a, const RunOptions& options) {
  if (options.repetitions < 1) throw ArgumentError("run_report: repetitions must be >= 1");
  const Index k = options.k;
  const bool is_cceqr =
      options.algorithm == Algorithm::cceqr_cssp || options.algorithm == Algorithm::cceqr_full;

  RunReport rep;
  rep.algorithm = options.algorithm;
  rep.m = a.rows();
  rep.n = a.cols();
  rep.k = k;
  rep.rho = is_cceqr ? options.rho : 0.0;

  std::vector<double> times;
  std::optional<SelectionResult> sel;
  std::optional<GbFactorization> fac;
  for (int rep_i = 0; rep_i < options.repetitions; ++rep_i) {
    if (is_cceqr) {
      CceqrOptions co;
      co.rho = options.rho;
      co.full = options.algorithm == Algorithm::cceqr_full;
      times.push_back(timed([&] { sel = select_columns(a, k, co); }));
    } else if (options.algorithm == Algorithm::gb) {
      times.push_back(timed([&] { fac = gb_qr(a, k); }));
    } else {
      times.push_back(timed([&] { fac = gb_qr_naive(a, k); }));
    }
  }
  rep.seconds = median(times);

  Matrix r;
  if (sel) {
    rep.cycles = sel->cycles;
    rep.commits_per_cycle = sel->commits_per_cycle;
    rep.max_tracked = sel->max_tracked;
    rep.perm = sel->p;
    r = reconstruct_r(a, sel->p, sel->wy);
  } else {
    rep.cycles = k;
    rep.commits_per_cycle.assign(static_cast<std::size_t>(k), 1);
    rep.max_tracked = a.cols();
    rep.perm = fac->perm;
    r = reconstruct_r(a, fac->perm, compact_wy(fac->reflectors));
  }
  rep.gb_ok = check_gb_form(r.view(), k, kGbTolerance).ok;

  if (options.verify) {
    if (options.algorithm != Algorithm::gb_naive)
      rep.equivalence = compare_with_naive(a, k, rep.perm).status;
    if (a.rows() * a.cols() <= kSvdEntryLimit) rep.metrics = rank_reveal_metrics(a, rep.perm, k);
  }
  return rep;
}

}  // namespace cceqr
