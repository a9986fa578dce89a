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

#include <cmath>
#include <set>

#include "msr/code_model.h"

using msr::CodeParams;
using msr::NodeIndex;
using msr::RowIndex;

TEST_CASE("params_new examples") {
  SUBCASE("q=2 t=3") {
    const auto p = CodeParams::Create(2, 3, 7);
    CHECK(p.n() == 6);
    CHECK(p.k() == 4);
    CHECK(p.d() == 5);
    CHECK(p.alpha() == 8);
    CHECK(p.beta() == 4);
    CHECK(p.B() == 32);
  }
  SUBCASE("q=3 t=3") {
    const auto p = CodeParams::Create(3, 3, 8);
    CHECK(p.n() == 9);
    CHECK(p.k() == 6);
    CHECK(p.d() == 8);
    CHECK(p.alpha() == 27);
    CHECK(p.beta() == 9);
    CHECK(p.B() == 162);
  }
  SUBCASE("q=2 t=2") {
    const auto p = CodeParams::Create(2, 2, 5);
    CHECK(p.n() == 4);
    CHECK(p.k() == 2);
    CHECK(p.d() == 3);
    CHECK(p.alpha() == 4);
    CHECK(p.beta() == 2);
    CHECK(p.B() == 8);
  }
}

TEST_CASE("params_new errors") {
  CHECK_THROWS_AS(CodeParams::Create(1, 3, 8), msr::ParamError);
  CHECK_THROWS_AS(CodeParams::Create(2, 1, 8), msr::ParamError);
  // GF(4) has 3 nonzero elements, n = 4.
  CHECK_THROWS_AS(CodeParams::Create(2, 2, 2), msr::ParamError);
  CHECK_NOTHROW(CodeParams::Create(2, 2, 3));
  CHECK_THROWS_AS(CodeParams::Create(2, 30, 8), msr::ParamError);
  CHECK_THROWS_AS(CodeParams::Create(2, 2, 20), msr::FieldError);
}

TEST_CASE("c0 lifecycle") {
  const auto p = CodeParams::Create(2, 2, 5);
  CHECK_FALSE(p.has_c0());
  CHECK_THROWS_AS((void)p.c0(), std::logic_error);
  CHECK_THROWS_AS((void)p.WithC0(0), msr::ParamError);
  CHECK_THROWS_AS((void)p.WithC0(32), msr::ParamError);
  const auto with = p.WithC0(3);
  CHECK(with.has_c0());
  CHECK(with.c0() == 3);
  CHECK_FALSE(p.has_c0());
}

TEST_CASE("parameter identities across a grid") {
  for (int q = 2; q <= 6; ++q) {
    for (int t = 2; t <= 4; ++t) {
      CAPTURE(q);
      CAPTURE(t);
      const auto p = CodeParams::Create(q, t, 8);
      CHECK(p.alpha() == (p.d() - p.k() + 1) * p.beta());
      CHECK(p.B() == static_cast<std::int64_t>(p.k()) * p.alpha());
      // alpha = q^t = (k / (t-1))^t = (n / t)^t; (k / t)^t is strictly
      // smaller since k / t = q (t-1) / t < q.
      CHECK(static_cast<double>(p.alpha()) ==
            std::pow(static_cast<double>(p.k()) / (t - 1), t));
      CHECK(static_cast<double>(p.alpha()) ==
            std::pow(static_cast<double>(p.n()) / t, t));
      CHECK(static_cast<double>(p.alpha()) >
            std::pow(static_cast<double>(p.k()) / t, t));
      CHECK(p.alpha() * (p.n() - p.k()) == p.constraint_count());
      CHECK(p.constraint_count() == static_cast<int>(std::pow(q, t + 1)));
    }
  }
}

TEST_CASE("row ordinals") {
  const auto p23 = CodeParams::Create(2, 3, 7);
  CHECK(msr::RowToOrdinal(RowIndex{{0, 0, 0}}, p23) == 0);
  CHECK(msr::RowToOrdinal(RowIndex{{1, 0, 1}}, p23) == 5);
  const auto p32 = CodeParams::Create(3, 2, 5);
  CHECK(msr::RowToOrdinal(RowIndex{{2, 1}}, p32) == 7);

  CHECK_THROWS_AS(msr::OrdinalToRow(8, p23), msr::ParamError);
  CHECK_THROWS_AS(msr::OrdinalToRow(-1, p23), msr::ParamError);
  CHECK_THROWS_AS(msr::RowToOrdinal(RowIndex{{0, 2, 0}}, p23), msr::ParamError);
  CHECK_THROWS_AS(msr::RowToOrdinal(RowIndex{{0, 0}}, p23), msr::ParamError);
}

TEST_CASE("row ordinal bijection, exhaustive") {
  for (auto [q, t] : {std::pair{2, 2}, {2, 3}, {3, 3}, {5, 4}, {6, 3}, {10, 4}}) {
    const auto p = CodeParams::Create(q, t, 8);
    std::set<RowIndex> seen;
    for (int ord = 0; ord < p.alpha(); ++ord) {
      const RowIndex x = msr::OrdinalToRow(ord, p);
      REQUIRE(p.ValidRow(x));
      REQUIRE(msr::RowToOrdinal(x, p) == ord);
      seen.insert(x);
    }
    CHECK(static_cast<int>(seen.size()) == p.alpha());
  }
}

TEST_CASE("node ordinals") {
  const auto p23 = CodeParams::Create(2, 3, 7);
  CHECK(msr::NodeToOrdinal({1, 0}, p23) == 0);
  CHECK(msr::NodeToOrdinal({3, 1}, p23) == 5);
  const auto p33 = CodeParams::Create(3, 3, 8);
  CHECK(msr::NodeToOrdinal({2, 2}, p33) == 5);
  CHECK_THROWS_AS(msr::NodeToOrdinal({0, 0}, p23), msr::ParamError);
  CHECK_THROWS_AS(msr::NodeToOrdinal({4, 0}, p23), msr::ParamError);
  CHECK_THROWS_AS(msr::NodeToOrdinal({1, 2}, p23), msr::ParamError);
  CHECK_THROWS_AS(msr::OrdinalToNode(6, p23), msr::ParamError);

  for (int ord = 0; ord < p33.n(); ++ord) {
    CHECK(msr::NodeToOrdinal(msr::OrdinalToNode(ord, p33), p33) == ord);
  }
}

TEST_CASE("gamma rows") {
  const auto p = CodeParams::Create(2, 3, 7);
  CHECK(msr::GammaRows({1, 0}, p) ==
        std::vector<RowIndex>{{{0, 0, 0}}, {{0, 0, 1}}, {{0, 1, 0}}, {{0, 1, 1}}});
  CHECK(msr::GammaRows({3, 1}, p) ==
        std::vector<RowIndex>{{{0, 0, 1}}, {{0, 1, 1}}, {{1, 0, 1}}, {{1, 1, 1}}});
}

TEST_CASE("gamma rows partition the row space per class") {
  for (auto [q, t] : {std::pair{2, 2}, {2, 3}, {3, 3}, {4, 2}, {3, 4}}) {
    const auto p = CodeParams::Create(q, t, 8);
    for (int i = 1; i <= t; ++i) {
      std::vector<int> hits(static_cast<std::size_t>(p.alpha()), 0);
      for (int theta = 0; theta < q; ++theta) {
        const auto rows = msr::GammaRows({i, theta}, p);
        REQUIRE(static_cast<int>(rows.size()) == p.beta());
        int prev = -1;
        for (const auto& x : rows) {
          CHECK(x.coords[static_cast<std::size_t>(i - 1)] == theta);
          const int ord = msr::RowToOrdinal(x, p);
          CHECK(ord > prev);
          prev = ord;
          ++hits[static_cast<std::size_t>(ord)];
        }
      }
      for (int h : hits) CHECK(h == 1);
    }
  }
}
