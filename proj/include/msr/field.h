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

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace msr {

/// A symbol of GF(2^m). Always fits in two bytes since m <= 16.
using Symbol = std::uint16_t;

inline constexpr int kMinFieldDegree = 1;
inline constexpr int kMaxFieldDegree = 16;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("GF(2^m): inverse of zero") {}
};

/// Fixed reduction polynomial for each degree, as a bitmask including the
/// x^m term. All entries are primitive, so x generates the multiplicative
/// group for m >= 2.
///
///   m   polynomial                 mask
///   1   x + 1                      0x3
///   2   x^2 + x + 1                0x7
///   3   x^3 + x + 1                0xb
///   4   x^4 + x + 1                0x13
///   5   x^5 + x^2 + 1              0x25
///   6   x^6 + x + 1                0x43
///   7   x^7 + x^3 + 1              0x89
///   8   x^8 + x^4 + x^3 + x^2 + 1  0x11d
///   9   x^9 + x^4 + 1              0x211
///   10  x^10 + x^3 + 1             0x409
///   11  x^11 + x^2 + 1             0x805
///   12  x^12 + x^6 + x^4 + x + 1   0x1053
///   13  x^13 + x^4 + x^3 + x + 1   0x201b
///   14  x^14 + x^10 + x^6 + x + 1  0x4443
///   15  x^15 + x + 1               0x8003
///   16  x^16 + x^12 + x^3 + x + 1  0x1100b
std::uint32_t DefaultPolynomial(int m);

/// True iff `poly` has degree exactly m and no factor of degree 1..m/2 over
/// GF(2). Exhaustive trial division; m <= 16 keeps it cheap.
bool IsIrreducible(std::uint32_t poly, int m);

/// GF(2^m) with log/antilog tables. Immutable after construction.
class GaloisField {
 public:
  /// Field for degree m using DefaultPolynomial(m).
  static GaloisField Build(int m);

  /// Throws FieldError if m is out of range or poly is not irreducible of
  /// degree m.
  GaloisField(int m, std::uint32_t poly);

  int degree() const { return m_; }
  std::uint32_t polynomial() const { return poly_; }
  std::uint32_t size() const { return 1u << m_; }
  /// Order of the multiplicative group, 2^m - 1.
  std::uint32_t order() const { return size() - 1; }
  /// Smallest element of multiplicative order 2^m - 1.
  Symbol generator() const { return generator_; }

  bool Contains(std::uint32_t v) const { return v < size(); }

  static Symbol Add(Symbol a, Symbol b) { return a ^ b; }
  Symbol Mul(Symbol a, Symbol b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Symbol Inv(Symbol a) const;
  Symbol Div(Symbol a, Symbol b) const { return Mul(a, Inv(b)); }
  Symbol Pow(Symbol a, std::uint64_t e) const;

 private:
  int m_;
  std::uint32_t poly_;
  Symbol generator_ = 1;
  // exp_ is doubled in length so Mul never reduces the log sum.
  std::vector<Symbol> exp_;
  std::vector<std::uint32_t> log_;
};

/// Z_q, used for row/column index arithmetic. q need not be a prime power.
struct IndexRing {
  int q;

  explicit IndexRing(int modulus);
  /// (a - b) mod q in [0, q).
  int Sub(int a, int b) const { return ((a - b) % q + q) % q; }
};

}  // namespace msr
