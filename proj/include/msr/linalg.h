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

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "msr/field.h"

namespace msr {

class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix() : std::runtime_error("matrix is singular over GF(2^m)") {}
};

/// Dense row-major matrix of field symbols.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Symbol& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Symbol at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Symbol> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Symbol> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

/// Row rank by Gauss-Jordan elimination. Pivot = first nonzero entry at or
/// below the current row, scanning columns left to right.
std::size_t Rank(const Matrix& m, const GaloisField& gf);

/// Inverse of a square matrix; throws SingularMatrix.
Matrix Invert(const Matrix& m, const GaloisField& gf);

/// Unique x with m * x = rhs; throws SingularMatrix or std::invalid_argument
/// on shape mismatch.
std::vector<Symbol> Solve(const Matrix& m, std::span<const Symbol> rhs,
                          const GaloisField& gf);

std::vector<Symbol> Multiply(const Matrix& m, std::span<const Symbol> x,
                             const GaloisField& gf);

/// out = m * x without allocating.
void MultiplyInto(const Matrix& m, std::span<const Symbol> x,
                  std::span<Symbol> out, const GaloisField& gf);

}  // namespace msr
