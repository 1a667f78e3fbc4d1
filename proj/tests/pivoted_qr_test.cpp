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
#include <random>

#include "cceqr/compact_wy.hpp"
#include "cceqr/errors.hpp"
#include "cceqr/pivoted_qr.hpp"
#include "oracles.hpp"

namespace cceqr {
namespace {

using testing::fro;
using testing::random_matrix;

std::vector<Index> head(const std::vector<Index>& p, Index k) {
  return {p.begin(), p.begin() + k};
}

double reconstruction_error(const Matrix& a, const GbFactorization& f) {
  Matrix r = testing::explicit_qt_times(f.reflectors, gather_columns(a.view(), f.perm));
  double err = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) err += std::pow(r(i, j) - f.R(i, j), 2);
  return std::sqrt(err);
}

TEST(GbQr, DiagonalAlreadyOrdered) {
  Matrix a = Matrix::from_rows({{2, 0}, {0, 1}});
  GbFactorization f = gb_qr(a, 2);
  EXPECT_EQ(f.perm, (std::vector<Index>{0, 1}));
  EXPECT_DOUBLE_EQ(std::abs(f.R(0, 0)), 2.0);
  EXPECT_DOUBLE_EQ(std::abs(f.R(1, 1)), 1.0);
}

TEST(GbQr, PicksLargerColumn) {
  Matrix a = Matrix::from_rows({{0, 3}, {0, 4}});
  GbFactorization f = gb_qr(a, 1);
  EXPECT_EQ(f.perm[0], 1);
  EXPECT_NEAR(std::abs(f.R(0, 0)), 5.0, 1e-14);
  GbFactorization g = gb_qr_naive(a, 1);
  EXPECT_EQ(g.perm, f.perm);
  EXPECT_LT(testing::max_abs_diff(g.R, f.R), 1e-14);
}

TEST(GbQr, IdentityTiesGoToLowestIndex) {
  GbFactorization f = gb_qr_naive(Matrix::identity(4), 4);
  EXPECT_EQ(f.perm, (std::vector<Index>{0, 1, 2, 3}));
  for (Index i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(f.R(i, i)), 1.0, 1e-15);
  EXPECT_EQ(gb_qr(Matrix::identity(4), 4).perm, f.perm);
}

TEST(GbQr, RankOutOfRange) {
  Matrix a(3, 5);
  EXPECT_THROW(gb_qr(a, 0), ArgumentError);
  EXPECT_THROW(gb_qr(a, 4), ArgumentError);
  EXPECT_THROW(gb_qr_naive(a, 4), ArgumentError);
}

TEST(GbQr, Random8x30MatchesNaive) {
  std::mt19937_64 rng(20);
  Matrix a = random_matrix(8, 30, rng);
  GbFactorization f = gb_qr(a, 8);
  GbFactorization g = gb_qr_naive(a, 8);
  EXPECT_TRUE(check_gb_form(f.R.view(), 8, 1e-10).ok);
  EXPECT_EQ(head(f.perm, 8), head(g.perm, 8));
}

TEST(GbQr, Random6x12EqualsNaiveWhenTieFree) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a = random_matrix(6, 12, rng);
    GbFactorization g = gb_qr_naive(a, 6);
    if (*std::ranges::min_element(g.pivot_gaps) < 1e-10) continue;
    EXPECT_EQ(gb_qr(a, 6).perm, g.perm) << "trial " << trial;
  }
}

TEST(GbQr, OutputProperties) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<Index> mdist(2, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = mdist(rng);
    const Index n = std::uniform_int_distribution<Index>(m, 200)(rng);
    Matrix a = random_matrix(m, n, rng);
    GbFactorization f = gb_qr(a, m);
    ASSERT_TRUE(check_gb_form(f.R.view(), m, 1e-10).ok) << "trial " << trial;

    std::vector<Index> sorted = f.perm;
    std::ranges::sort(sorted);
    for (Index j = 0; j < n; ++j) ASSERT_EQ(sorted[static_cast<std::size_t>(j)], j);

    const double scale = frobenius_norm(a.view());
    for (Index j = 0; j < m; ++j)
      for (Index i = j + 1; i < m; ++i) ASSERT_LE(std::abs(f.R(i, j)), 1e-12 * scale);
    for (Index i = 1; i < m; ++i)
      ASSERT_GE(std::abs(f.R(i - 1, i - 1)) * (1 + 1e-12), std::abs(f.R(i, i)));
    if (trial % 20 == 0) {
      ASSERT_LE(reconstruction_error(a, f), 1e-10 * scale);
    }
  }
}

TEST(GbQr, DowndateRecomputesAfterCancellation) {
  // Column 1 is almost parallel to column 0, so its residual after the first
  // step is tiny and the downdated value is all rounding error.
  Matrix a = Matrix::from_rows({{1, 1, 0}, {0, 1e-9, 0.5}, {0, 0, 0.5}});
  GbFactorization f = gb_qr(a, 3);
  GbFactorization g = gb_qr_naive(a, 3);
  EXPECT_EQ(f.perm, g.perm);
  EXPECT_TRUE(check_gb_form(f.R.view(), 3, 1e-10).ok);
}

TEST(GbQr, InplaceStepsValidated) {
  Matrix b(3, 2);
  std::vector<Index> perm(2);
  std::vector<double> tau(3);
  EXPECT_THROW(gb_qr_inplace(b.view(), 3, perm, tau), ArgumentError);
}

TEST(CheckGbForm, IdentityPasses) {
  for (Index n : {1, 3, 6})
    for (Index k = 0; k <= n; ++k) EXPECT_TRUE(check_gb_form(Matrix::identity(n).view(), k, 1e-10).ok);
}

TEST(CheckGbForm, DominanceViolation) {
  Matrix r = Matrix::from_rows({{1, 0}, {0, 2}});
  GbCheck c = check_gb_form(r.view(), 2, 1e-10);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.violation, GbCheck::Violation::not_dominant);
  EXPECT_EQ(c.i, 0);
  EXPECT_EQ(c.j, 1);
  EXPECT_DOUBLE_EQ(c.value, 1.0);
}

TEST(CheckGbForm, TriangularityViolation) {
  Matrix r = Matrix::from_rows({{3, 0}, {1, 1}});
  GbCheck c = check_gb_form(r.view(), 1, 1e-10);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.violation, GbCheck::Violation::not_triangular);
  EXPECT_EQ(c.i, 1);
  EXPECT_EQ(c.j, 0);
}

TEST(CheckGbForm, NaiveOutputPasses) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = random_matrix(7, 25, rng);
    EXPECT_TRUE(check_gb_form(gb_qr_naive(a, 7).R.view(), 7, 1e-10).ok);
  }
}

TEST(CheckGbForm, RankOutOfRange) {
  Matrix r = Matrix::identity(3);
  EXPECT_THROW(check_gb_form(r.view(), 4, 1e-10), ArgumentError);
}

}  // namespace
}  // namespace cceqr
