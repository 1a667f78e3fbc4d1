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

// Fixture file formats.
//
// Binary ("PQR1"):
//   bytes 0..3    magic "PQR1"
//   bytes 4..11   rows, int64 little-endian
//   bytes 12..19  cols, int64 little-endian
//   bytes 20..    rows*cols IEEE-754 binary64 values, little-endian, column-major
//
// Text: one matrix row per line, entries separated by whitespace. Blank lines
// and lines starting with '#' are ignored.

#ifndef CCEQR_MATRIX_IO_HPP
#define CCEQR_MATRIX_IO_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>

#include "cceqr/matrix.hpp"

namespace cceqr {

inline constexpr char kMatrixMagic[4] = {'P', 'Q', 'R', '1'};
inline constexpr std::size_t kMatrixHeaderBytes = 20;

void write_matrix(std::ostream& out, const Matrix& a);
void write_matrix(const std::filesystem::path& path, const Matrix& a);
Matrix read_matrix(std::istream& in);
Matrix read_matrix(const std::filesystem::path& path);

Matrix read_matrix_text(std::istream& in);
Matrix read_matrix_text(const std::filesystem::path& path);

}  // namespace cceqr

#endif  // CCEQR_MATRIX_IO_HPP
