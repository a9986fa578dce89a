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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "msr/field.h"
#include "oracle.h"

using msr::GaloisField;
using msr::Symbol;

TEST_CASE("default polynomials") {
  CHECK(msr::DefaultPolynomial(1) == 0b11);
  CHECK(msr::DefaultPolynomial(4) == 0b10011);
  CHECK_THROWS_AS(msr::DefaultPolynomial(20), msr::FieldError);
  CHECK_THROWS_AS(msr::DefaultPolynomial(0), msr::FieldError);
  CHECK_THROWS_AS(GaloisField::Build(20), msr::FieldError);
  CHECK_THROWS_AS(GaloisField::Build(17), msr::FieldError);

  for (int m = 1; m <= 16; ++m) {
    CAPTURE(m);
    const std::uint32_t p = msr::DefaultPolynomial(m);
    CHECK(oracle::Irreducible(p, m));
    CHECK(msr::IsIrreducible(p, m));
    CHECK(GaloisField::Build(m).polynomial() == p);
  }
}

TEST_CASE("every default polynomial is primitive") {
  for (int m = 2; m <= 16; ++m) {
    CAPTURE(m);
    const std::uint32_t p = msr::DefaultPolynomial(m);
    std::uint32_t x = 2;
    std::uint32_t ord = 1;
    while (x != 1) {
      x = oracle::Mul(x, 2, p, m);
      ++ord;
    }
    CHECK(ord == (1u << m) - 1);
    CHECK(GaloisField::Build(m).generator() == 2);
  }
  CHECK(GaloisField::Build(1).generator() == 1);
}

TEST_CASE("irreducibility check rejects reducible and wrong-degree polynomials") {
  CHECK_FALSE(msr::IsIrreducible(0b10101, 4));  // (x^2+x+1)^2
  CHECK_FALSE(msr::IsIrreducible(0b10001, 4));  // (x+1)^4
  CHECK_FALSE(msr::IsIrreducible(0b1011, 4));   // degree 3
  CHECK_THROWS_AS(GaloisField(4, 0b10101), msr::FieldError);
  CHECK_NOTHROW(GaloisField(4, 0b11111));       // irreducible, not primitive
  const GaloisField f(4, 0b11111);
  CHECK(f.generator() != 2);  // x has order 5 here
  CHECK(f.Pow(f.generator(), 15) == 1);
}

TEST_CASE("add") {
  const auto gf = GaloisField::Build(4);
  CHECK(GaloisField::Add(5, 5) == 0);
  CHECK(GaloisField::Add(0, 7) == 7);
  CHECK(GaloisField::Add(0b1010, 0b0110) == (0b1010 ^ 0b0110));
  CHECK(GaloisField::Add(0b1010, 0b0110) == 0b1100);
  (void)gf;
}

TEST_CASE("mul and inv examples in GF(16)") {
  const auto gf = GaloisField::Build(4);
  CHECK(gf.Mul(1, 2) == 2);
  for (Symbol b = 0; b < 16; ++b) CHECK(gf.Mul(0, b) == 0);
  CHECK(oracle::Mul(0b0010, 0b1001, 0b10011, 4) == 0b0001);
  CHECK(gf.Mul(0b0010, 0b1001) == 0b0001);
  CHECK(gf.Inv(1) == 1);
  CHECK(gf.Inv(0b0010) == 0b1001);
  CHECK_THROWS_AS(gf.Inv(0), msr::DivisionByZero);
}

TEST_CASE("table multiply agrees with schoolbook multiply, exhaustive m <= 8") {
  for (int m = 1; m <= 8; ++m) {
    const auto gf = GaloisField::Build(m);
    for (std::uint32_t a = 0; a < gf.size(); ++a) {
      for (std::uint32_t b = 0; b < gf.size(); ++b) {
        if (gf.Mul(static_cast<Symbol>(a), static_cast<Symbol>(b)) !=
            oracle::Mul(a, b, gf.polynomial(), m)) {
          FAIL("mismatch m=" << m << " a=" << a << " b=" << b);
        }
      }
    }
  }
}

TEST_CASE("inverses, exhaustive m <= 8, and group order") {
  for (int m = 1; m <= 8; ++m) {
    const auto gf = GaloisField::Build(m);
    for (std::uint32_t a = 1; a < gf.size(); ++a) {
      const auto s = static_cast<Symbol>(a);
      REQUIRE(gf.Mul(s, gf.Inv(s)) == 1);
      REQUIRE(gf.Pow(s, gf.order()) == 1);
    }
  }
  const auto big = GaloisField::Build(16);
  for (std::uint32_t a = 1; a < big.size(); a += 97) {
    const auto s = static_cast<Symbol>(a);
    REQUIRE(big.Mul(s, big.Inv(s)) == 1);
    REQUIRE(big.Pow(s, big.order()) == 1);
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(7);
  for (int m : {3, 4, 7, 8, 12, 16}) {
    const auto gf = GaloisField::Build(m);
    std::uniform_int_distribution<std::uint32_t> d(0, gf.size() - 1);
    for (int i = 0; i < 2000; ++i) {
      const auto a = static_cast<Symbol>(d(rng));
      const auto b = static_cast<Symbol>(d(rng));
      const auto c = static_cast<Symbol>(d(rng));
      REQUIRE(gf.Mul(a, b) == gf.Mul(b, a));
      REQUIRE(GaloisField::Add(a, b) == GaloisField::Add(b, a));
      REQUIRE(gf.Mul(gf.Mul(a, b), c) == gf.Mul(a, gf.Mul(b, c)));
      REQUIRE(GaloisField::Add(GaloisField::Add(a, b), c) ==
              GaloisField::Add(a, GaloisField::Add(b, c)));
      REQUIRE(gf.Mul(a, GaloisField::Add(b, c)) ==
              GaloisField::Add(gf.Mul(a, b), gf.Mul(a, c)));
      REQUIRE(gf.Mul(a, b) == oracle::Mul(a, b, gf.polynomial(), m));
      if (b != 0) REQUIRE(gf.Mul(gf.Div(a, b), b) == a);
    }
  }
}

TEST_CASE("pow") {
  const auto gf = GaloisField::Build(8);
  CHECK(gf.Pow(0, 0) == 1);
  CHECK(gf.Pow(0, 5) == 0);
  CHECK(gf.Pow(3, 1) == 3);
  CHECK(gf.Pow(3, 2) == gf.Mul(3, 3));
  CHECK(gf.Pow(7, 255 * 1000 + 3) == gf.Pow(7, 3));
}

TEST_CASE("index ring subtraction") {
  CHECK(msr::IndexRing(2).Sub(0, 1) == 1);
  CHECK(msr::IndexRing(3).Sub(0, 1) == 2);
  CHECK(msr::IndexRing(5).Sub(3, 0) == 3);
  CHECK_THROWS_AS(msr::IndexRing(1), std::invalid_argument);
  for (int q = 2; q <= 9; ++q) {
    const msr::IndexRing ring(q);
    for (int a = 0; a < q; ++a) {
      CHECK(ring.Sub(a, 0) == a);
      CHECK(ring.Sub(a, a) == 0);
      for (int b = 0; b < q; ++b) {
        const int r = ring.Sub(a, b);
        CHECK(r >= 0);
        CHECK(r < q);
        CHECK((r + b) % q == a);
      }
    }
  }
}
