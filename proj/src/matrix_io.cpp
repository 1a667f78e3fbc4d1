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

#include "cceqr/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "cceqr/errors.hpp"

namespace cceqr {
namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

bool get_u64(std::istream& in, std::uint64_t& v) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return true;
}

void check_writable_shape(const Matrix& a) {
  if (a.rows() <= 0 || a.cols() <= 0)
    throw ContractError("matrix files require positive dimensions");
}

}  // namespace

void write_matrix(std::ostream& out, const Matrix& a) {
  check_writable_shape(a);
  out.write(kMatrixMagic, sizeof kMatrixMagic);
  put_u64(out, static_cast<std::uint64_t>(a.rows()));
  put_u64(out, static_cast<std::uint64_t>(a.cols()));
  for (double x : a.values()) put_u64(out, std::bit_cast<std::uint64_t>(x));
  if (!out) throw IoError("failed writing matrix payload");
}

void write_matrix(const std::filesystem::path& path, const Matrix& a) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_matrix(out, a);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Matrix read_matrix(std::istream& in) {
  char magic[4] = {};
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMatrixMagic, sizeof magic) != 0)
    throw FormatError("missing PQR1 magic");
  std::uint64_t urows = 0, ucols = 0;
  if (!get_u64(in, urows) || !get_u64(in, ucols)) throw FormatError("truncated header");
  const auto rows = static_cast<Index>(urows);
  const auto cols = static_cast<Index>(ucols);
  if (rows <= 0 || cols <= 0) throw FormatError("nonpositive dimensions in header");
  if (rows > std::numeric_limits<Index>::max() / cols / 8)
    throw FormatError("dimensions overflow");

  std::vector<double> data(static_cast<std::size_t>(rows * cols));
  for (double& x : data) {
    std::uint64_t bits = 0;
    if (!get_u64(in, bits)) throw FormatError("truncated payload");
    x = std::bit_cast<double>(bits);
  }
  Matrix a(rows, cols, std::move(data));
  if (!all_finite(a.view())) throw FormatError("non-finite entry in matrix file");
  return a;
}

Matrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_matrix(in);
}

Matrix read_matrix_text(std::istream& in) {
  std::vector<double> row_major;
  Index rows = 0;
  Index cols = -1;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    Index count = 0;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw FormatError("bad number '" + tok + "' on row " + std::to_string(rows + 1));
      }
      if (used != tok.size()) throw FormatError("bad number '" + tok + "'");
      row_major.push_back(v);
      ++count;
    }
    if (cols < 0) cols = count;
    if (count != cols) throw FormatError("row " + std::to_string(rows + 1) + " has " +
                                         std::to_string(count) + " entries, expected " +
                                         std::to_string(cols));
    ++rows;
  }
  if (rows == 0 || cols <= 0) throw FormatError("empty text matrix");
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = row_major[static_cast<std::size_t>(i * cols + j)];
  if (!all_finite(a.view())) throw FormatError("non-finite entry in text matrix");
  return a;
}

Matrix read_matrix_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_matrix_text(in);
}

}  // namespace cceqr
