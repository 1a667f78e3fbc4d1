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

#include "cceqr/matrixgen.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "blas.hpp"
#include "cceqr/errors.hpp"

namespace cceqr {
namespace {

constexpr Index kMaxAdversaryEntries = Index{1} << 28;
constexpr Index kMaxDenseKernel = 10000;
constexpr double kRankFloor = 1e-12;

class Normals {
 public:
  explicit Normals(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  Index below(Index bound) {
    return std::min(static_cast<Index>(uniform() * static_cast<double>(bound)), bound - 1);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

void check_spec(const MixtureSpec& s) {
  if (s.m < 1) throw ArgumentError("mixture: m must be >= 1");
  if (s.n < s.m) throw ArgumentError("mixture: n must be >= m");
  if (!(s.ell >= 0.0) || !std::isfinite(s.ell)) throw ArgumentError("mixture: ell must be >= 0");
  if (!(s.sigma2 > 0.0) || !std::isfinite(s.sigma2))
    throw ArgumentError("mixture: sigma2 must be > 0");
  if (s.oversample < 1) throw ArgumentError("mixture: oversample must be >= 1");
  if (s.method == MixtureMethod::dense && s.n > kMaxDenseKernel)
    throw ArgumentError("mixture: dense path limited to n <= " + std::to_string(kMaxDenseKernel));
}

// Points are stored one per column (m x n).
Matrix draw_points(const MixtureSpec& s, std::vector<Index>& labels) {
  Normals rng(s.seed);
  Matrix x(s.m, s.n);
  labels.resize(static_cast<std::size_t>(s.n));
  for (Index j = 0; j < s.n; ++j) {
    const Index label = rng.below(s.m);
    labels[static_cast<std::size_t>(j)] = label;
    for (Index i = 0; i < s.m; ++i) x(i, j) = rng.next();
    x(label, j) += s.ell;
  }
  return x;
}

double kernel(const Matrix& x, Index a, Index b, double sigma2) {
  double d2 = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    const double d = x(i, a) - x(i, b);
    d2 += d * d;
  }
  return std::exp(-d2 / (2.0 * sigma2));
}

// Top `count` eigenpairs of the symmetric matrix `a` (lower triangle used).
// Eigenvalues come back in descending order, eigenvectors as the columns of
// the returned matrix.
Matrix top_eigenvectors(const Matrix& a, Index count, std::vector<double>& values) {
  const Index n = a.rows();
  const Eigen::SelfAdjointEigenSolver<blas::Dense> eig(blas::map(a.view()));
  if (eig.info() != Eigen::Success) throw DegenerateKernelError("symmetric eigensolver failed");
  Matrix out(n, count);
  values.resize(static_cast<std::size_t>(count));
  for (Index j = 0; j < count; ++j) {
    const Index src = n - 1 - j;
    values[static_cast<std::size_t>(j)] = eig.eigenvalues()(src);
    blas::map(out.block(0, j, n, 1)) = eig.eigenvectors().col(src);
  }
  return out;
}

void check_spectrum(const std::vector<double>& values) {
  if (values.empty() || !(values.back() > kRankFloor * values.front()))
    throw DegenerateKernelError("kernel matrix has numerical rank below m");
}

// Rows of w get the sign that makes their largest-magnitude entry positive.
void fix_signs(Matrix& w) {
  for (Index i = 0; i < w.rows(); ++i) {
    Index at = 0;
    for (Index j = 1; j < w.cols(); ++j)
      if (std::abs(w(i, j)) > std::abs(w(i, at))) at = j;
    if (w(i, at) < 0.0)
      for (Index j = 0; j < w.cols(); ++j) w(i, j) = -w(i, j);
  }
}

Matrix dense_path(const MixtureSpec& s, const Matrix& x) {
  const Index n = s.n;
  Matrix k(n, n);
  for (Index j = 0; j < n; ++j) {
    k(j, j) = 1.0;
    for (Index i = j + 1; i < n; ++i) k(i, j) = k(j, i) = kernel(x, i, j, s.sigma2);
  }
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] += k(i, j);
  for (Index j = 0; j < n; ++j)
    for (Index i = j; i < n; ++i)
      k(i, j) /= std::sqrt(d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)]);

  std::vector<double> values;
  Matrix v = top_eigenvectors(k, s.m, values);
  check_spectrum(values);
  return transpose(v.view());
}

Matrix compressed_path(const MixtureSpec& s, const Matrix& x) {
  const Index n = s.n;
  const Index rank = std::min(s.oversample * s.m, n);

  // Pivoted partial Cholesky: K ~ L L^T with L n x r.
  Matrix l(n, rank);
  std::vector<double> residual(static_cast<std::size_t>(n), 1.0);
  std::vector<double> lp(static_cast<std::size_t>(rank));
  Index r = 0;
  for (; r < rank; ++r) {
    const auto best = std::ranges::max_element(residual);
    const auto p = static_cast<Index>(best - residual.begin());
    const double pivot = *best;
    if (!(pivot > kRankFloor)) break;
    auto col = l.col(r);
    for (Index i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = kernel(x, i, p, s.sigma2);
    for (Index q = 0; q < r; ++q) lp[static_cast<std::size_t>(q)] = l(p, q);
    blas::gemv(blas::Op::none, -1.0, l.block(0, 0, n, r), lp.data(), 1.0, col.data());
    const double scale = 1.0 / std::sqrt(pivot);
    for (Index i = 0; i < n; ++i) {
      col[static_cast<std::size_t>(i)] *= scale;
      auto& res = residual[static_cast<std::size_t>(i)];
      res = std::max(res - col[static_cast<std::size_t>(i)] * col[static_cast<std::size_t>(i)], 0.0);
    }
    residual[static_cast<std::size_t>(p)] = 0.0;
  }
  if (r < s.m) throw DegenerateKernelError("kernel matrix has numerical rank below m");
  ConstMatrixView lr = l.block(0, 0, n, r);

  // Degrees of L L^T plus the diagonal the approximation misses.
  std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  std::vector<double> colsum(static_cast<std::size_t>(r));
  std::vector<double> degree(residual);
  blas::gemv(blas::Op::trans, 1.0, lr, ones.data(), 0.0, colsum.data());
  blas::gemv(blas::Op::none, 1.0, lr, colsum.data(), 1.0, degree.data());

  Matrix f(n, r);
  for (Index i = 0; i < n; ++i) {
    const double di = degree[static_cast<std::size_t>(i)];
    if (!(di > 0.0)) throw DegenerateKernelError("kernel degree vanished");
    const double scale = 1.0 / std::sqrt(di);
    for (Index j = 0; j < r; ++j) f(i, j) = l(i, j) * scale;
  }

  // Left singular vectors of F from the eigenvectors of F^T F.
  Matrix gram(r, r);
  blas::gemm(blas::Op::trans, blas::Op::none, 1.0, f.view(), f.view(), 0.0, gram.view());
  std::vector<double> values;
  Matrix u = top_eigenvectors(gram, s.m, values);
  check_spectrum(values);
  for (Index j = 0; j < s.m; ++j) {
    const double scale = 1.0 / std::sqrt(values[static_cast<std::size_t>(j)]);
    for (Index i = 0; i < r; ++i) u(i, j) *= scale;
  }
  Matrix w(s.m, n);
  blas::gemm(blas::Op::trans, blas::Op::trans, 1.0, u.view(), f.view(), 0.0, w.view());
  return w;
}

}  // namespace

Matrix gen_gaussian(Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ArgumentError("gen_gaussian: m and n must be >= 1");
  Normals rng(seed);
  Matrix a(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) a(i, j) = rng.next();
  return a;
}

Matrix gen_hadamard_unscaled(int kexp, int rexp) {
  if (kexp < 1 || kexp > rexp || rexp > 30)
    throw ArgumentError("hadamard: need 1 <= kexp <= rexp <= 30 (got kexp=" +
                        std::to_string(kexp) + ", rexp=" + std::to_string(rexp) + ")");
  if ((Index{1} << (kexp + rexp)) > kMaxAdversaryEntries)
    throw ArgumentError("hadamard: 2^" + std::to_string(kexp + rexp) + " entries is too large");
  const Index m = Index{1} << kexp;
  const Index n = Index{1} << rexp;
  const Index per_group = n / m;
  Matrix a(m, n);
  // Column c holds Sylvester column g + q m, g = c / per_group, q = c % per_group.
  // On the first m rows only the low bits g matter, so each group is colinear.
  for (Index c = 0; c < n; ++c) {
    const Index g = c / per_group;
    for (Index i = 0; i < m; ++i)
      a(i, c) = (std::popcount(static_cast<std::uint64_t>(i & g)) & 1) ? -1.0 : 1.0;
  }
  return a;
}

Matrix gen_hadamard_adversary(int kexp, int rexp) {
  Matrix a = gen_hadamard_unscaled(kexp, rexp);
  const Index n = a.cols();
  for (Index c = 0; c < n; ++c) {
    const double scale = 1.0 + 1000.0 * static_cast<double>(n - c) * 0x1.0p-52;
    for (double& v : a.col(c)) v *= scale;
  }
  return a;
}

MixtureSample gen_mixture(const MixtureSpec& spec) {
  check_spec(spec);
  MixtureSample out;
  const Matrix x = draw_points(spec, out.labels);
  out.method = spec.method;
  if (out.method == MixtureMethod::automatic)
    out.method = spec.n <= kDenseMixtureLimit ? MixtureMethod::dense : MixtureMethod::compressed;
  out.W = out.method == MixtureMethod::dense ? dense_path(spec, x) : compressed_path(spec, x);
  fix_signs(out.W);
  return out;
}

Matrix gen_mixture_eigvecs(const MixtureSpec& spec) { return gen_mixture(spec).W; }

}  // namespace cceqr
