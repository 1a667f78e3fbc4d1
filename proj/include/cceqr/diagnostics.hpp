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

#ifndef CCEQR_DIAGNOSTICS_HPP
#define CCEQR_DIAGNOSTICS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cceqr/cceqr.hpp"
#include "cceqr/compact_wy.hpp"
#include "cceqr/matrix.hpp"

namespace cceqr {

enum class Algorithm { cceqr_cssp, cceqr_full, gb, gb_naive };

std::string_view algorithm_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

enum class Equivalence { equivalent, mismatch, inconclusive };

std::string_view equivalence_name(Equivalence e) noexcept;

/// Pivot steps whose two leading residual norms differ by less than this
/// relative amount count as ties.
inline constexpr double kTieGap = 1e-10;

struct EquivalenceReport {
  Equivalence status = Equivalence::equivalent;
  std::vector<Index> perm;         ///< leading k pivots of the run under test
  std::vector<Index> naive_perm;   ///< leading k pivots of gb_qr_naive
  double min_gap = 0.0;            ///< smallest relative pivot gap of the naive run
  Index first_difference = -1;     ///< first position where the pivots differ
};

/// Compares the leading k entries of `perm` against gb_qr_naive(a, k).
/// Inconclusive whenever the naive run sees a tie.
EquivalenceReport compare_with_naive(const Matrix& a, Index k, std::span<const Index> perm);

/// Runs select_columns(a, k, rho) and compares it against gb_qr_naive.
EquivalenceReport verify_equivalence(const Matrix& a, Index k, double rho);

/// Dense SVD oracles are skipped above this many entries.
inline constexpr Index kSvdEntryLimit = 4'000'000;

struct RankRevealMetrics {
  double sigma_ratio = 0.0;     ///< sigma_min(A(:,s)) / sigma_k(A)
  double residual_ratio = 0.0;  ///< ||A - P_s A||_2 / sigma_{k+1}(A)
  double q_bound = 0.0;         ///< 2^k sqrt(max(n - k, 1))
  /// sigma_{k+1}(A) is zero (k = min(m, n) or exact rank k); residual_ratio is
  /// then reported as 0 and excluded from the bound check.
  bool zero_residual = false;
  bool bounds_ok = false;
};

/// `p` lists column indices; its first k entries form the skeleton s.
/// Throws ArgumentError when k is out of range, p is too short or holds an
/// invalid index, or m * n exceeds kSvdEntryLimit.
RankRevealMetrics rank_reveal_metrics(const Matrix& a, std::span<const Index> p, Index k);

struct MassCdf {
  std::vector<double> fractions;
  bool zero_matrix = false;
};

/// Fraction of total squared column mass held by the ceil(q n) heaviest
/// columns, for each q in `quantiles` (each in [0, 1]).
MassCdf norm_mass_cdf(ConstMatrixView a, std::span<const double> quantiles);

/// Q^T A(:, p) for the reflectors in `wy`.
Matrix reconstruct_r(const Matrix& a, std::span<const Index> p, const CompactWY& wy);

struct RunOptions {
  Algorithm algorithm = Algorithm::cceqr_cssp;
  Index k = 1;
  double rho = kDefaultRho;
  int repetitions = 1;
  /// Adds the equivalence check and, when the size allows, rank metrics.
  bool verify = false;
};

struct RunReport {
  Algorithm algorithm = Algorithm::cceqr_cssp;
  Index m = 0;
  Index n = 0;
  Index k = 0;
  double rho = 0.0;
  double seconds = 0.0;  ///< median over repetitions, factorization only
  Index cycles = 0;
  std::vector<Index> commits_per_cycle;
  Index max_tracked = 0;
  bool gb_ok = false;
  std::vector<Index> perm;
  std::optional<Equivalence> equivalence;
  std::optional<RankRevealMetrics> metrics;
};

RunReport run_report(const Matrix& a, const RunOptions& options);

}  // namespace cceqr

#endif  // CCEQR_DIAGNOSTICS_HPP
