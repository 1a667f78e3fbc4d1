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

// Collect-Commit-Expand QR.
//
// Column selection that reproduces the Golub-Businger pivot order while only
// ever rotating a small "tracked" subset of the columns. The columns of the
// working matrix are kept in three contiguous groups:
//
//   [0, s)         committed: pivots already fixed, upper-triangular in R
//   [s, s+t)       tracked:   R holds Q^T A(:,p); gamma holds squared residual
//                             norms orthogonal to the committed columns
//   [s+t, n)       untracked: R holds the original columns; gamma holds their
//                             full squared norms; mu is the largest of these
//
// Each cycle picks the b = 1 + floor(rho (t - 1)) largest tracked columns
// (collect), factors them with Golub-Businger pivoting, commits the leading
// pivots whose squared residual clears max(delta, mu) (commit), and then
// pulls untracked columns whose full norm reaches the largest remaining
// tracked residual into the tracked set (expand).

#ifndef CCEQR_CCEQR_HPP
#define CCEQR_CCEQR_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cceqr/compact_wy.hpp"
#include "cceqr/matrix.hpp"

namespace cceqr {

inline constexpr double kDefaultRho = 0.05;

struct CceqrState {
  Index s = 0;       ///< committed count
  Index t = 0;       ///< tracked count
  double mu = 0.0;   ///< largest untracked squared norm
  std::vector<double> gamma;
  std::vector<Index> p;
  CompactWY wy;      ///< m x k / k x k, zero-padded
  Matrix R;          ///< working copy of A(:, p)
  Index k = 0;
  double rho = kDefaultRho;
  bool first_cycle = true;

  Index rows() const noexcept { return R.rows(); }
  Index cols() const noexcept { return R.cols(); }
};

struct CollectOutput {
  double delta = 0.0;         ///< largest non-candidate tracked squared residual
  std::vector<Index> phat;    ///< candidate order chosen by the pivoted factorization
  std::vector<double> tauhat;
  Matrix vhat;                ///< (m - s) x depth, unit lower-trapezoidal
  Matrix rhat;                ///< depth x b, upper-trapezoidal
  Index b = 0;
};

struct SelectionResult {
  std::vector<Index> p;
  Index k = 0;
  Index cycles = 0;
  std::vector<Index> commits_per_cycle;
  /// Tracked-set size each cycle operated on (after the first-cycle shrink).
  std::vector<Index> tracked_history;
  /// max(tracked_history).
  Index max_tracked = 0;
  /// Largest s + t seen; equals n once every column has been tracked.
  Index max_covered = 0;
  /// Q^T A(:, p) in full; present only when requested.
  std::optional<Matrix> R;
  CompactWY wy;
};

enum class CycleEvent { collected, committed, expanded };

struct CceqrOptions {
  double rho = kDefaultRho;
  /// Apply Q^T to the untracked columns at the end so that R is complete.
  bool full = false;
  /// Invoked after each step of every cycle; for instrumentation and tests.
  std::function<void(const CceqrState&, CycleEvent)> observer;
};

/// p = identity, R = A, gamma = squared column norms, s = 0, t = n, mu = 0.
/// Throws ArgumentError unless 1 <= k <= min(m, n) and 0 < rho < 1.
CceqrState initialize(const Matrix& a, Index k, double rho = kDefaultRho);

/// Selects the candidate block from the tracked set, factors its residual
/// with Golub-Businger pivoting and moves the candidates (in pivot order) to
/// positions [s, s+b). On the first cycle the tracked set shrinks to the
/// candidates.
CollectOutput collect(CceqrState& state);

/// Largest i with rhat(i-1,i-1)^2 >= max(delta, mu), counting from 1.
/// Throws InvariantError when even the first pivot fails the threshold.
Index acceptance_count(std::span<const double> rhat_diag, double delta, double mu);
Index acceptance_count(const Matrix& rhat, double delta, double mu);

/// Applies the accepted reflectors to the tracked block, folds them into the
/// global WY factors, downdates tracked residual norms and advances s and t.
/// Returns the largest remaining tracked squared residual (0 if none remain).
double commit(CceqrState& state, const CollectOutput& co);

/// Moves untracked columns with gamma >= threshold into the tracked set,
/// rotating them by the accumulated Q^T and downdating their norms. When
/// nothing clears the threshold, retries at 0.9 times the largest untracked
/// norm. Afterwards mu is the largest norm left untracked (0 if none).
/// Requires s < k and s + t < n.
void expand(CceqrState& state, double threshold);

/// Full driver. Returns after s reaches k.
SelectionResult select_columns(const Matrix& a, Index k, const CceqrOptions& options = {});

}  // namespace cceqr

#endif  // CCEQR_CCEQR_HPP
