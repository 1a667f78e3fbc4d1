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

// Seeded test-matrix families.
//
// Random numbers come from std::mt19937_64 seeded with the caller's seed.
// Uniforms use the top 53 bits of each draw; normals are produced in pairs by
// the Box-Muller transform. Both steps are written out here rather than taken
// from <random> distributions so fixtures are identical across standard
// libraries.

#ifndef CCEQR_MATRIXGEN_HPP
#define CCEQR_MATRIXGEN_HPP

#include <cstdint>
#include <vector>

#include "cceqr/matrix.hpp"

namespace cceqr {

/// m x n with i.i.d. standard normal entries, filled column by column.
Matrix gen_gaussian(Index m, Index n, std::uint64_t seed);

/// First 2^kexp rows of the 2^rexp Sylvester-Hadamard matrix. Columns are
/// reordered so each colinear group is contiguous, then column j (zero-based)
/// is scaled by 1 + 1000 (n - j) 2^-52.
/// Throws ArgumentError unless 1 <= kexp <= rexp <= 30 and the matrix has at
/// most 2^28 entries.
Matrix gen_hadamard_adversary(int kexp, int rexp);

/// Same matrix without the column scaling.
Matrix gen_hadamard_unscaled(int kexp, int rexp);

enum class MixtureMethod { automatic, dense, compressed };

struct MixtureSpec {
  Index m = 20;          ///< mixture components and ambient dimension
  Index n = 1000;        ///< sample size
  double ell = 6.0;      ///< component means are ell * e_i
  double sigma2 = 5.0;   ///< Gaussian kernel variance
  std::uint64_t seed = 0;
  MixtureMethod method = MixtureMethod::automatic;
  /// Partial Cholesky rank is oversample * m (compressed path).
  Index oversample = 5;
};

/// Largest n for which `automatic` still uses the dense eigensolver.
inline constexpr Index kDenseMixtureLimit = 2000;

struct MixtureSample {
  Matrix W;                   ///< m x n, rows orthonormal
  std::vector<Index> labels;  ///< component of each point
  MixtureMethod method = MixtureMethod::dense;
};

/// Leading m eigenvectors (as rows) of the degree-normalized Gaussian kernel
/// matrix of n points drawn from the mixture. The dense path solves the full
/// n x n eigenproblem. The compressed path runs a pivoted partial Cholesky of
/// rank oversample * m and takes the left singular vectors of the degree
/// scaled factor; degrees include the residual diagonal of the Cholesky
/// approximation.
/// Throws ArgumentError on an invalid spec and DegenerateKernelError when the
/// kernel has numerical rank below m.
MixtureSample gen_mixture(const MixtureSpec& spec);

/// gen_mixture(spec).W
Matrix gen_mixture_eigvecs(const MixtureSpec& spec);

}  // namespace cceqr

#endif  // CCEQR_MATRIXGEN_HPP
