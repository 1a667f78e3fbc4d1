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

#ifndef CCEQR_ERRORS_HPP
#define CCEQR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cceqr {

/// A caller-supplied value is outside its documented range (k, rho, sizes).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands are not conformal, or an index range falls outside a matrix.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal algorithmic invariant failed. Seeing one of these is a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix file: bad magic, bad dimensions, short payload, non-finite data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The kernel matrix of a mixture sample lost rank (e.g. duplicated points).
class DegenerateKernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cceqr

#endif  // CCEQR_ERRORS_HPP
