/*
 * Copyright 2026 The msrcode Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "msr/linalg.h"

#include <utility>

namespace msr {
namespace {

// row[dst] ^= factor * row[src], from column `from` onward.
void AddScaledRow(std::span<Symbol> dst, std::span<const Symbol> src,
                  Symbol factor, std::size_t from, const GaloisField& gf) {
  for (std::size_t c = from; c < dst.size(); ++c) {
    if (src[c] != 0) dst[c] ^= gf.Mul(factor, src[c]);
  }
}

void ScaleRow(std::span<Symbol> row, Symbol factor, const GaloisField& gf) {
  for (auto& v : row) v = gf.Mul(v, factor);
}

void SwapRows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = m.row(a);
  auto rb = m.row(b);
  for (std::size_t c = 0; c < ra.size(); ++c) std::swap(ra[c], rb[c]);
}

}  // namespace

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::size_t Rank(const Matrix& input, const GaloisField& gf) {
  Matrix m = input;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    SwapRows(m, rank, pivot);
    ScaleRow(m.row(rank), gf.Inv(m.at(rank, col)), gf);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const Symbol f = m.at(r, col);
      if (f != 0) AddScaledRow(m.row(r), m.row(rank), f, col, gf);
    }
    ++rank;
  }
  return rank;
}

Matrix Invert(const Matrix& input, const GaloisField& gf) {
  if (input.rows() != input.cols()) {
    throw std::invalid_argument("Invert: matrix is not square");
  }
  const std::size_t n = input.rows();
  Matrix m = input;
  Matrix inv = Matrix::Identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularMatrix();
    SwapRows(m, col, pivot);
    SwapRows(inv, col, pivot);
    const Symbol s = gf.Inv(m.at(col, col));
    ScaleRow(m.row(col), s, gf);
    ScaleRow(inv.row(col), s, gf);
    for (std::size_t r = 0; r < n; ++r) {
      const Symbol f = m.at(r, col);
      if (r == col || f == 0) continue;
      AddScaledRow(m.row(r), m.row(col), f, col, gf);
      AddScaledRow(inv.row(r), inv.row(col), f, 0, gf);
    }
  }
  return inv;
}

std::vector<Symbol> Solve(const Matrix& m, std::span<const Symbol> rhs,
                          const GaloisField& gf) {
  if (m.rows() != m.cols() || rhs.size() != m.rows()) {
    throw std::invalid_argument("Solve: shape mismatch");
  }
  const std::size_t n = m.rows();
  // Augmented elimination; cheaper than forming the inverse.
  Matrix a(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a.at(r, c) = m.at(r, c);
    a.at(r, n) = rhs[r];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularMatrix();
    SwapRows(a, col, pivot);
    ScaleRow(a.row(col), gf.Inv(a.at(col, col)), gf);
    for (std::size_t r = 0; r < n; ++r) {
      const Symbol f = a.at(r, col);
      if (r != col && f != 0) AddScaledRow(a.row(r), a.row(col), f, col, gf);
    }
  }
  std::vector<Symbol> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = a.at(r, n);
  return x;
}

void MultiplyInto(const Matrix& m, std::span<const Symbol> x,
                  std::span<Symbol> out, const GaloisField& gf) {
  if (x.size() != m.cols() || out.size() != m.rows()) {
    throw std::invalid_argument("Multiply: shape mismatch");
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Symbol acc = 0;
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) acc ^= gf.Mul(row[c], x[c]);
    out[r] = acc;
  }
}

std::vector<Symbol> Multiply(const Matrix& m, std::span<const Symbol> x,
                             const GaloisField& gf) {
  std::vector<Symbol> out(m.rows());
  MultiplyInto(m, x, out, gf);
  return out;
}

}  // namespace msr
