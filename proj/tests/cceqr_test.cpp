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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "cceqr/cceqr.hpp"
#include "cceqr/diagnostics.hpp"
#include "cceqr/errors.hpp"
#include "cceqr/matrixgen.hpp"
#include "cceqr/pivoted_qr.hpp"
#include "oracles.hpp"

namespace cceqr {
namespace {

using testing::random_matrix;

TEST(Initialize, IdentityState) {
  CceqrState st = initialize(Matrix::identity(3), 2);
  EXPECT_EQ(st.gamma, (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(st.s, 0);
  EXPECT_EQ(st.t, 3);
  EXPECT_EQ(st.mu, 0.0);
  EXPECT_EQ(st.p, (std::vector<Index>{0, 1, 2}));
  EXPECT_TRUE(st.first_cycle);
  EXPECT_EQ(st.wy.V.rows(), 3);
  EXPECT_EQ(st.wy.V.cols(), 2);
  EXPECT_EQ(st.wy.r, 0);
}

TEST(Initialize, ColumnNorms) {
  CceqrState st = initialize(Matrix::from_rows({{3, 0}, {4, 0}}), 1);
  EXPECT_EQ(st.gamma, (std::vector<double>{25, 0}));
}

TEST(Initialize, RangeErrors) {
  Matrix a(3, 5);
  EXPECT_THROW(initialize(a, 0), ArgumentError);
  EXPECT_THROW(initialize(a, 4), ArgumentError);
  EXPECT_THROW(initialize(a, 2, 0.0), ArgumentError);
  EXPECT_THROW(initialize(a, 2, 1.0), ArgumentError);
}

TEST(Collect, SingleTrackedColumn) {
  CceqrState st = initialize(Matrix::from_rows({{1}, {2}}), 1);
  CollectOutput co = collect(st);
  EXPECT_EQ(co.b, 1);
  EXPECT_EQ(co.delta, 0.0);
}

TEST(Collect, CandidateCount) {
  std::mt19937_64 rng(30);
  CceqrState st = initialize(random_matrix(4, 101, rng), 4, 0.05);
  CollectOutput co = collect(st);
  EXPECT_EQ(co.b, 6);
  EXPECT_EQ(st.t, 6);
}

TEST(Collect, SortAndSelect) {
  // gamma = [1, 9, 4] so the candidates are columns 1 and 2 and delta = 1.
  CceqrState st = initialize(Matrix::from_rows({{1, 0, 0}, {0, 3, 0}, {0, 0, 2}}), 2, 0.5);
  CollectOutput co = collect(st);
  EXPECT_EQ(co.b, 2);
  EXPECT_DOUBLE_EQ(co.delta, 1.0);
  EXPECT_DOUBLE_EQ(st.mu, 1.0);
  EXPECT_EQ(st.t, 2);
  EXPECT_EQ(st.p[0], 1);
  EXPECT_EQ(st.p[1], 2);
  EXPECT_EQ(st.p[2], 0);
  EXPECT_DOUBLE_EQ(st.gamma[2], 1.0);
  EXPECT_NEAR(std::abs(co.rhat(0, 0)), 3.0, 1e-15);
  EXPECT_NEAR(std::abs(co.rhat(1, 1)), 2.0, 1e-15);
}

TEST(Collect, TiesByLowestIndex) {
  CceqrState st = initialize(Matrix::identity(4), 4, 0.34);
  CollectOutput co = collect(st);
  EXPECT_EQ(co.b, 2);
  EXPECT_EQ(st.p[0], 0);
  EXPECT_EQ(st.p[1], 1);
}

TEST(AcceptanceCount, Examples) {
  std::vector<double> d = {3, 2, 1};
  EXPECT_EQ(acceptance_count(d, 3, 5), 1);
  EXPECT_EQ(acceptance_count(d, 0, 0), 3);
  std::vector<double> e = {3, 2, 2};
  EXPECT_EQ(acceptance_count(e, 4, 2), 3);
}

TEST(AcceptanceCount, MatrixOverload) {
  Matrix r = Matrix::from_rows({{3, 1, 1}, {0, 2, 1}, {0, 0, 1}});
  EXPECT_EQ(acceptance_count(r, 3, 5), 1);
}

TEST(AcceptanceCount, FirstPivotMustClear) {
  std::vector<double> d = {1, 0.5};
  EXPECT_THROW(acceptance_count(d, 4, 0), InvariantError);
  // Rounding-level shortfalls on the first pivot are tolerated.
  std::vector<double> close = {1.0 - 1e-14};
  EXPECT_EQ(acceptance_count(close, 1.0, 0.0), 1);
}

TEST(Commit, DowndatesResidualNorms) {
  // Column 1 = (3, 4, 0): after committing column 0 = 10 e0 its residual is 16.
  Matrix a = Matrix::from_rows({{10, 3, 0}, {0, 4, 0}, {0, 0, 1}});
  CceqrState st = initialize(a, 1, 0.5);
  CollectOutput co = collect(st);
  ASSERT_EQ(co.b, 2);
  EXPECT_DOUBLE_EQ(co.delta, 1.0);
  const double m = commit(st, co);
  EXPECT_EQ(st.s, 1);
  EXPECT_EQ(st.t, 1);
  EXPECT_NEAR(st.gamma[1], 16.0, 1e-12);
  EXPECT_NEAR(m, 16.0, 1e-12);
  EXPECT_DOUBLE_EQ(st.gamma[2], 1.0);  // untracked keeps its full norm
}

TEST(Commit, LastTrackedCommitted) {
  Matrix a = Matrix::from_rows({{3, 0}, {0, 2}});
  CceqrState st = initialize(a, 2, 0.5);
  CollectOutput co = collect(st);
  EXPECT_EQ(co.b, 1);
  EXPECT_EQ(commit(st, co), 0.0);
  EXPECT_EQ(st.s, 1);
  EXPECT_EQ(st.t, 0);
}

TEST(Commit, OneCycleGivesGbForm) {
  std::mt19937_64 rng(31);
  Matrix a = random_matrix(4, 10, rng);
  CceqrState st = initialize(a, 4, 0.5);
  CollectOutput co = collect(st);
  commit(st, co);
  ASSERT_GE(st.s, 1);
  for (Index j = 0; j < st.s; ++j)
    for (Index i = j + 1; i < 4; ++i) EXPECT_EQ(st.R(i, j), 0.0);
  Matrix r = reconstruct_r(a, st.p, st.wy);
  EXPECT_TRUE(check_gb_form(r.view(), st.s, 1e-10).ok);
}

TEST(Expand, ThresholdSemantics) {
  // Untracked norms 10, 5, 1; threshold 6 moves only the first.
  Matrix a(3, 4);
  a(0, 0) = 10;
  a(0, 1) = std::sqrt(10.0);
  a(1, 2) = std::sqrt(5.0);
  a(2, 3) = 1;
  CceqrState st = initialize(a, 3, 0.01);
  CollectOutput co = collect(st);
  ASSERT_EQ(st.t, 1);
  commit(st, co);
  expand(st, 6.0);
  EXPECT_EQ(st.t, 1);
  EXPECT_EQ(st.p[1], 1);
  EXPECT_DOUBLE_EQ(st.mu, 5.0);
}

TEST(Expand, FallbackThreshold) {
  Matrix a(3, 4);
  a(0, 0) = 10;
  a(1, 1) = std::sqrt(10.0);
  a(1, 2) = std::sqrt(5.0);
  a(2, 3) = 1;
  CceqrState st = initialize(a, 3, 0.01);
  CollectOutput co = collect(st);
  commit(st, co);
  expand(st, 20.0);
  EXPECT_EQ(st.t, 1);
  EXPECT_EQ(st.p[1], 1);
  EXPECT_DOUBLE_EQ(st.mu, 5.0);
}

TEST(Expand, ZeroThresholdTakesEverything) {
  std::mt19937_64 rng(32);
  Matrix a = random_matrix(3, 9, rng);
  CceqrState st = initialize(a, 3, 0.01);
  CollectOutput co = collect(st);
  commit(st, co);
  expand(st, 0.0);
  EXPECT_EQ(st.s + st.t, 9);
  EXPECT_EQ(st.mu, 0.0);
}

TEST(Expand, PreconditionChecked) {
  CceqrState st = initialize(Matrix::identity(2), 2);
  EXPECT_THROW(expand(st, 0.0), InvariantError);
}

TEST(SelectColumns, IdentityAnyOrder) {
  Matrix a = Matrix::identity(4);
  CceqrOptions o;
  o.rho = 0.5;
  SelectionResult res = select_columns(a, 4, o);
  std::vector<Index> p = res.p;
  std::ranges::sort(p);
  EXPECT_EQ(p, (std::vector<Index>{0, 1, 2, 3}));
  EXPECT_TRUE(check_gb_form(reconstruct_r(a, res.p, res.wy).view(), 4, 1e-10).ok);
}

TEST(SelectColumns, LargestColumnFirst) {
  for (double rho : {0.01, 0.5, 0.99}) {
    CceqrOptions o;
    o.rho = rho;
    EXPECT_EQ(select_columns(Matrix::from_rows({{0, 3}, {0, 4}}), 1, o).p[0], 1);
  }
}

TEST(SelectColumns, MatchesNaiveOnRandom) {
  std::mt19937_64 rng(33);
  Matrix a = random_matrix(10, 500, rng);
  CceqrOptions o;
  o.rho = 0.02;
  SelectionResult res = select_columns(a, 10, o);
  GbFactorization g = gb_qr_naive(a, 10);
  ASSERT_GT(*std::ranges::min_element(g.pivot_gaps), 1e-10);
  EXPECT_EQ(std::vector<Index>(res.p.begin(), res.p.begin() + 10),
            std::vector<Index>(g.perm.begin(), g.perm.begin() + 10));
}

TEST(SelectColumns, Statistics) {
  std::mt19937_64 rng(34);
  Matrix a = random_matrix(12, 300, rng);
  SelectionResult res = select_columns(a, 12);
  Index total = 0;
  for (Index c : res.commits_per_cycle) {
    EXPECT_GE(c, 1);
    total += c;
  }
  EXPECT_EQ(total, 12);
  EXPECT_LE(res.cycles, 12);
  EXPECT_EQ(static_cast<Index>(res.tracked_history.size()), res.cycles);
  EXPECT_EQ(res.max_tracked, *std::ranges::max_element(res.tracked_history));
  EXPECT_LE(res.max_covered, 300);
  EXPECT_FALSE(res.R.has_value());
}

TEST(SelectColumns, FullModeMatchesReconstruction) {
  std::mt19937_64 rng(35);
  Matrix a = random_matrix(9, 200, rng);
  CceqrOptions o;
  o.full = true;
  SelectionResult res = select_columns(a, 9, o);
  ASSERT_TRUE(res.R.has_value());
  Matrix r = testing::naive_matmul(testing::naive_transpose(form_q(res.wy)),
                                   gather_columns(a.view(), res.p));
  double err = 0.0;
  for (Index j = 0; j < 200; ++j)
    for (Index i = 0; i < 9; ++i) err += std::pow(r(i, j) - (*res.R)(i, j), 2);
  EXPECT_LE(std::sqrt(err), 1e-10 * frobenius_norm(a.view()));
  EXPECT_TRUE(check_gb_form(res.R->view(), 9, 1e-10).ok);
}

TEST(SelectColumns, HadamardCommitsOnePerCycle) {
  Matrix a = gen_hadamard_adversary(3, 7);
  CceqrOptions o;
  o.rho = 0.01;
  SelectionResult res = select_columns(a, 8, o);
  EXPECT_EQ(res.cycles, 8);
  EXPECT_EQ(res.max_covered, 128);
}

TEST(SelectColumns, RankDeficientInput) {
  // Only two independent directions; the rest of the skeleton is zero residual.
  Matrix a(4, 6);
  for (Index j = 0; j < 6; ++j) {
    a(0, j) = 1.0 + static_cast<double>(j);
    a(1, j) = static_cast<double>(j % 2);
  }
  SelectionResult res = select_columns(a, 4);
  EXPECT_TRUE(check_gb_form(reconstruct_r(a, res.p, res.wy).view(), 4, 1e-10).ok);
}

// Checks the cycle invariants through the observer hook.
class Invariants : public ::testing::TestWithParam<int> {};

TEST_P(Invariants, HoldAfterEveryStep) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(100 + GetParam()));
  const Index m = std::uniform_int_distribution<Index>(3, 12)(rng);
  const Index n = std::uniform_int_distribution<Index>(40, 400)(rng);
  const double rho = std::array{0.01, 0.05, 0.2}[static_cast<std::size_t>(GetParam() % 3)];
  const Matrix a = random_matrix(m, n, rng);
  const std::vector<double> original = column_norms_squared(a.view());
  const double scale = std::pow(frobenius_norm(a.view()), 2);
  Index last_s = 0;

  CceqrOptions o;
  o.rho = rho;
  o.observer = [&](const CceqrState& st, CycleEvent ev) {
    ASSERT_LE(st.s, st.k);
    ASSERT_LE(st.s + st.t, n);
    for (double g : st.gamma) ASSERT_GE(g, 0.0);
    for (Index j = st.s; j < st.s + st.t; ++j) {
      double res = 0.0;
      for (Index i = st.s; i < m; ++i) res += st.R(i, j) * st.R(i, j);
      ASSERT_NEAR(st.gamma[static_cast<std::size_t>(j)], res, 1e-8 * scale) << "tracked " << j;
    }
    for (Index j = st.s + st.t; j < n; ++j)
      ASSERT_EQ(st.gamma[static_cast<std::size_t>(j)],
                original[static_cast<std::size_t>(st.p[static_cast<std::size_t>(j)])]);
    if (ev == CycleEvent::committed) {
      ASSERT_GT(st.s, last_s);
      last_s = st.s;
      Matrix r = reconstruct_r(a, st.p, st.wy);
      ASSERT_TRUE(check_gb_form(r.view(), st.s, 1e-10).ok) << "s = " << st.s;
    }
    if (ev == CycleEvent::expanded || ev == CycleEvent::collected) {
      double top = 0.0;
      for (Index j = st.s; j < st.s + st.t; ++j) top = std::max(top, st.gamma[static_cast<std::size_t>(j)]);
      if (ev == CycleEvent::expanded) {
        ASSERT_GE(top * (1 + 1e-10), st.mu);
      }
    }
  };
  SelectionResult res = select_columns(a, m, o);
  EXPECT_EQ(last_s, m);
  EXPECT_LE(res.cycles, m);
}

INSTANTIATE_TEST_SUITE_P(Random, Invariants, ::testing::Range(0, 24));

}  // namespace
}  // namespace cceqr
