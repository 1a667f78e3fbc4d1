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

#include <cmath>
#include <numeric>
#include <random>

#include "cceqr/diagnostics.hpp"
#include "cceqr/errors.hpp"
#include "cceqr/matrixgen.hpp"
#include "oracles.hpp"

namespace cceqr {
namespace {

TEST(Names, RoundTrip) {
  for (Algorithm a : {Algorithm::cceqr_cssp, Algorithm::cceqr_full, Algorithm::gb,
                      Algorithm::gb_naive})
    EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  EXPECT_EQ(algorithm_name(Algorithm::gb_naive), "gb-naive");
  EXPECT_FALSE(parse_algorithm("qr").has_value());
  EXPECT_EQ(equivalence_name(Equivalence::inconclusive), "inconclusive");
}

TEST(Equivalence, DistinctNorms) {
  Matrix a = Matrix::from_rows({{3, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 1, 0}});
  EquivalenceReport r = verify_equivalence(a, 3, 0.5);
  EXPECT_EQ(r.status, Equivalence::equivalent);
  EXPECT_EQ(r.perm, (std::vector<Index>{0, 1, 2}));
  EXPECT_EQ(r.first_difference, -1);
}

TEST(Equivalence, TiesAreInconclusive) {
  EquivalenceReport r = verify_equivalence(Matrix::identity(2), 2, 0.5);
  EXPECT_EQ(r.status, Equivalence::inconclusive);
  EXPECT_LT(r.min_gap, kTieGap);
}

TEST(Equivalence, DetectsWrongOrder) {
  Matrix a = Matrix::from_rows({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  std::vector<Index> perm = {1, 0, 2};
  EquivalenceReport r = compare_with_naive(a, 2, perm);
  EXPECT_EQ(r.status, Equivalence::mismatch);
  EXPECT_EQ(r.first_difference, 0);
}

TEST(Equivalence, RandomWideMatrices) {
  int mismatches = 0;
  int inconclusive = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Matrix a = gen_gaussian(10, 300, seed);
    const double rho = 0.01 + 0.2 * static_cast<double>(seed % 5) / 4.0;
    EquivalenceReport r = verify_equivalence(a, 10, rho);
    if (r.status == Equivalence::mismatch) ++mismatches;
    if (r.status == Equivalence::inconclusive) ++inconclusive;
  }
  EXPECT_EQ(mismatches, 0);
  EXPECT_LT(inconclusive, 100);
}

TEST(RankMetrics, OrthogonalSquare) {
  std::mt19937_64 rng(5);
  HouseholderSet hs = testing::random_reflectors(6, 6, rng);
  Matrix q = testing::explicit_product(hs, 6);
  std::vector<Index> p(6);
  std::iota(p.begin(), p.end(), Index{0});
  RankRevealMetrics mt = rank_reveal_metrics(q, p, 6);
  EXPECT_NEAR(mt.sigma_ratio, 1.0, 1e-10);
  EXPECT_TRUE(mt.zero_residual);
  EXPECT_EQ(mt.residual_ratio, 0.0);
  EXPECT_TRUE(mt.bounds_ok);
}

TEST(RankMetrics, Diagonal) {
  Matrix a = Matrix::from_rows({{2, 0}, {0, 1}});
  std::vector<Index> p = {0, 1};
  RankRevealMetrics mt = rank_reveal_metrics(a, p, 1);
  EXPECT_NEAR(mt.sigma_ratio, 1.0, 1e-12);
  EXPECT_NEAR(mt.residual_ratio, 1.0, 1e-12);
  EXPECT_FALSE(mt.zero_residual);
  EXPECT_NEAR(mt.q_bound, 2.0, 1e-12);
}

TEST(RankMetrics, BoundsHoldForPivotedSelection) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Matrix a = gen_gaussian(8, 40, seed);
    SelectionResult sel = select_columns(a, 4);
    RankRevealMetrics mt = rank_reveal_metrics(a, sel.p, 4);
    EXPECT_TRUE(mt.bounds_ok) << seed;
    EXPECT_GT(mt.sigma_ratio, 0.0);
    EXPECT_LE(mt.sigma_ratio, 1.0 + 1e-12);
    EXPECT_GE(mt.residual_ratio, 1.0 - 1e-12);
  }
}

TEST(RankMetrics, Errors) {
  Matrix a = gen_gaussian(3, 5, 0);
  std::vector<Index> p = {0, 1, 2, 3, 4};
  EXPECT_THROW(rank_reveal_metrics(a, p, 0), ArgumentError);
  EXPECT_THROW(rank_reveal_metrics(a, p, 4), ArgumentError);
  std::vector<Index> bad = {0, 9};
  EXPECT_THROW(rank_reveal_metrics(a, bad, 2), ContractError);
  Matrix big(2001, 2000);
  EXPECT_THROW(rank_reveal_metrics(big, p, 1), ArgumentError);
}

TEST(MassCdf, Uniform) {
  Matrix a(2, 10);
  for (Index j = 0; j < 10; ++j) a(0, j) = 1.0;
  std::vector<double> q = {0.1, 0.5, 1.0};
  MassCdf c = norm_mass_cdf(a.view(), q);
  EXPECT_FALSE(c.zero_matrix);
  EXPECT_NEAR(c.fractions[0], 0.1, 1e-12);
  EXPECT_NEAR(c.fractions[1], 0.5, 1e-12);
  EXPECT_NEAR(c.fractions[2], 1.0, 1e-12);
}

TEST(MassCdf, PointMass) {
  Matrix a(1, 50);
  a(0, 17) = 4.0;
  std::vector<double> q = {0.02};
  EXPECT_NEAR(norm_mass_cdf(a.view(), q).fractions[0], 1.0, 1e-12);
}

TEST(MassCdf, ZeroMatrix) {
  Matrix a(3, 4);
  std::vector<double> q = {0.5};
  MassCdf c = norm_mass_cdf(a.view(), q);
  EXPECT_TRUE(c.zero_matrix);
  EXPECT_EQ(c.fractions[0], 0.0);
  std::vector<double> bad = {1.5};
  EXPECT_THROW(norm_mass_cdf(a.view(), bad), ArgumentError);
}

class RunReportAlgo : public ::testing::TestWithParam<Algorithm> {};

TEST_P(RunReportAlgo, Invariants) {
  Matrix a = gen_gaussian(12, 200, 3);
  RunOptions opt;
  opt.algorithm = GetParam();
  opt.k = 10;
  opt.rho = 0.1;
  opt.repetitions = 3;
  opt.verify = true;
  RunReport r = run_report(a, opt);
  EXPECT_TRUE(r.gb_ok);
  EXPECT_EQ(r.m, 12);
  EXPECT_EQ(r.n, 200);
  EXPECT_LE(r.cycles, r.k);
  EXPECT_GE(r.cycles, 1);
  EXPECT_EQ(std::accumulate(r.commits_per_cycle.begin(), r.commits_per_cycle.end(), Index{0}),
            10);
  EXPECT_GE(r.seconds, 0.0);
  EXPECT_EQ(r.perm.size(), 200u);
  ASSERT_TRUE(r.metrics.has_value());
  EXPECT_TRUE(r.metrics->bounds_ok);
  if (GetParam() != Algorithm::gb_naive) {
    ASSERT_TRUE(r.equivalence.has_value());
    EXPECT_NE(*r.equivalence, Equivalence::mismatch);
  }
}

INSTANTIATE_TEST_SUITE_P(All, RunReportAlgo,
                         ::testing::Values(Algorithm::cceqr_cssp, Algorithm::cceqr_full,
                                           Algorithm::gb, Algorithm::gb_naive));

TEST(RunReport, RejectsBadOptions) {
  Matrix a = gen_gaussian(4, 8, 0);
  RunOptions opt;
  opt.k = 5;
  EXPECT_THROW(run_report(a, opt), ArgumentError);
  opt.k = 2;
  opt.repetitions = 0;
  EXPECT_THROW(run_report(a, opt), ArgumentError);
}

TEST(Reconstruct, MatchesFullR) {
  Matrix a = gen_gaussian(7, 30, 8);
  CceqrOptions opt;
  opt.full = true;
  SelectionResult sel = select_columns(a, 5, opt);
  Matrix r = reconstruct_r(a, sel.p, sel.wy);
  EXPECT_LT(testing::max_abs_diff(r, *sel.R), 1e-12 * testing::fro(a));
}

}  // namespace
}  // namespace cceqr
