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

#include "msr/field.h"

#include <array>
#include <bit>
#include <string>

namespace msr {
namespace {

constexpr std::array<std::uint32_t, kMaxFieldDegree + 1> kDefaultPolys = {
    0,      0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x89,   0x11d,
    0x211,  0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003, 0x1100b};

int Degree(std::uint32_t p) { return p == 0 ? -1 : std::bit_width(p) - 1; }

// Remainder of carry-less division a mod b.
std::uint32_t PolyMod(std::uint32_t a, std::uint32_t b) {
  const int db = Degree(b);
  for (int da = Degree(a); da >= db; da = Degree(a)) a ^= b << (da - db);
  return a;
}

std::uint32_t MulMod(std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                     int m) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << m)) a ^= poly;
  }
  return r;
}

void CheckDegree(int m) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree) {
    throw FieldError("GF(2^m): m=" + std::to_string(m) +
                     " outside [1, 16]");
  }
}

}  // namespace

std::uint32_t DefaultPolynomial(int m) {
  CheckDegree(m);
  return kDefaultPolys[static_cast<std::size_t>(m)];
}

bool IsIrreducible(std::uint32_t poly, int m) {
  if (m < 1 || Degree(poly) != m) return false;
  for (std::uint32_t f = 2; Degree(f) <= m / 2; ++f) {
    if (PolyMod(poly, f) == 0) return false;
  }
  return true;
}

GaloisField GaloisField::Build(int m) {
  return GaloisField(m, DefaultPolynomial(m));
}

GaloisField::GaloisField(int m, std::uint32_t poly) : m_(m), poly_(poly) {
  CheckDegree(m);
  if (!IsIrreducible(poly, m)) {
    throw FieldError("GF(2^m): polynomial " + std::to_string(poly) +
                     " is not irreducible of degree " + std::to_string(m));
  }
  const std::uint32_t ord = order();
  for (std::uint32_t g = 1; g < size(); ++g) {
    std::uint32_t x = g;
    std::uint32_t k = 1;
    while (x != 1) {
      x = MulMod(x, g, poly_, m_);
      ++k;
    }
    if (k == ord) {
      generator_ = static_cast<Symbol>(g);
      break;
    }
  }

  exp_.assign(2 * static_cast<std::size_t>(ord), 0);
  log_.assign(size(), 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < ord; ++i) {
    exp_[i] = static_cast<Symbol>(x);
    exp_[i + ord] = static_cast<Symbol>(x);
    log_[x] = i;
    x = MulMod(x, generator_, poly_, m_);
  }
}

Symbol GaloisField::Inv(Symbol a) const {
  if (a == 0) throw DivisionByZero();
  return exp_[(order() - log_[a]) % order()];
}

Symbol GaloisField::Pow(Symbol a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order())) % order()];
}

IndexRing::IndexRing(int modulus) : q(modulus) {
  if (q < 2) throw std::invalid_argument("index ring needs q >= 2");
}

}  // namespace msr
