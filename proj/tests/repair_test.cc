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

#include "msr/codec.h"
#include "msr/repair.h"

using namespace msr;

namespace {

ParityCheckSystem SystemFor(int q, int t, int m) {
  const auto p = CodeParams::Create(q, t, m);
  return BuildSystem(p.WithC0(FindC0(p)));
}

CodewordArray RandomCodeword(const ParityCheckSystem& sys, std::mt19937& rng) {
  const auto& p = sys.params();
  std::uniform_int_distribution<std::uint32_t> d(0, p.field().size() - 1);
  std::vector<Symbol> msg(static_cast<std::size_t>(p.B()));
  for (auto& v : msg) v = static_cast<Symbol>(d(rng));
  return Encode(msg, sys);
}

std::vector<HelperPacket> Packets(const CodewordArray& cw, const NodeIndex& failed) {
  const auto& p = cw.params();
  std::vector<HelperPacket> out;
  for (int o = 0; o < p.n(); ++o) {
    const NodeIndex h = OrdinalToNode(o, p);
    if (h != failed) out.push_back(HelperExtract(cw.column(o), h, failed, p));
  }
  return out;
}

}  // namespace

TEST_CASE("helper_extract") {
  const auto p = CodeParams::Create(2, 3, 7);
  const std::vector<Symbol> zeros(8, 0);
  const auto pk = HelperExtract(zeros, {2, 0}, {1, 0}, p);
  CHECK(pk.entries.size() == 4);
  for (const auto& e : pk.entries) {
    CHECK(e.value == 0);
    CHECK(e.row.coords[0] == 0);
  }
  std::vector<Symbol> content(8);
  for (int i = 0; i < 8; ++i) content[static_cast<std::size_t>(i)] = static_cast<Symbol>(100 + i);
  const auto pk3 = HelperExtract(content, {1, 0}, {3, 1}, p);
  // Gamma for (3,1): ordinals 1, 3, 5, 7.
  REQUIRE(pk3.entries.size() == 4);
  for (std::size_t s = 0; s < 4; ++s) {
    CHECK(pk3.entries[s].value == 101 + 2 * s);
    CHECK(RowToOrdinal(pk3.entries[s].row, p) == static_cast<int>(1 + 2 * s));
  }
  CHECK_THROWS_AS(HelperExtract(zeros, {1, 0}, {1, 0}, p), RepairError);
  CHECK_THROWS_AS(HelperExtract(std::vector<Symbol>(7, 0), {2, 0}, {1, 0}, p), RepairError);

  const auto p33 = CodeParams::Create(3, 3, 8);
  for (int o = 1; o < p33.n(); ++o) {
    CHECK(HelperExtract(std::vector<Symbol>(27, 0), OrdinalToNode(o, p33), {1, 0}, p33)
              .entries.size() == 9);
  }
}

TEST_CASE("zero codeword repairs to zeros with d*beta downloads") {
  const auto sys = SystemFor(2, 3, 7);
  const CodewordArray zero(sys.params());
  for (int o = 0; o < 6; ++o) {
    const NodeIndex failed = OrdinalToNode(o, sys.params());
    const auto r = RepairNode(failed, Packets(zero, failed), sys);
    CHECK(r.symbols == std::vector<Symbol>(8, 0));
    CHECK(r.downloaded_total == 5 * 4);
  }
}

TEST_CASE("repair is exact for every node") {
  std::mt19937 rng(21);
  for (auto [q, t, m] : {std::tuple{2, 2, 5}, {2, 3, 7}, {3, 2, 4}, {3, 3, 8}, {4, 2, 8}}) {
    CAPTURE(q);
    CAPTURE(t);
    const auto sys = SystemFor(q, t, m);
    const auto& p = sys.params();
    for (int trial = 0; trial < 3; ++trial) {
      const auto cw = RandomCodeword(sys, rng);
      for (int o = 0; o < p.n(); ++o) {
        const NodeIndex failed = OrdinalToNode(o, p);
        const auto packets = Packets(cw, failed);
        // Help-by-transfer: each packet symbol is a stored symbol verbatim.
        for (const auto& pk : packets) {
          REQUIRE(static_cast<int>(pk.entries.size()) == p.beta());
          for (const auto& e : pk.entries) REQUIRE(e.value == cw.at(e.row, pk.helper));
        }
        const auto r = RepairNode(failed, packets, sys);
        const auto col = cw.column(o);
        REQUIRE(r.symbols == std::vector<Symbol>(col.begin(), col.end()));
        CHECK(r.downloaded_total == static_cast<std::int64_t>(p.d()) * p.beta());
        CHECK(p.beta() * (p.d() - p.k() + 1) == p.alpha());
      }
    }
  }
}

TEST_CASE("repair rejects malformed packet sets") {
  std::mt19937 rng(8);
  const auto sys = SystemFor(2, 3, 7);
  const auto cw = RandomCodeword(sys, rng);
  const NodeIndex failed{2, 1};
  const auto good = Packets(cw, failed);

  auto fewer = good;
  fewer.pop_back();
  CHECK_THROWS_AS(RepairNode(failed, fewer, sys), RepairError);

  auto dup = good;
  dup.back() = dup.front();
  CHECK_THROWS_AS(RepairNode(failed, dup, sys), RepairError);

  auto wrong_rows = good;
  wrong_rows[0].entries[0].row = OrdinalToRow(RowToOrdinal(wrong_rows[0].entries[0].row, sys.params()) ^ 4, sys.params());
  CHECK_THROWS_AS(RepairNode(failed, wrong_rows, sys), RepairError);

  auto short_packet = good;
  short_packet[1].entries.pop_back();
  CHECK_THROWS_AS(RepairNode(failed, short_packet, sys), RepairError);

  auto other_target = good;
  other_target[2].failed = {1, 0};
  CHECK_THROWS_AS(RepairNode(failed, other_target, sys), RepairError);

  auto self_help = good;
  self_help[0].helper = failed;
  CHECK_THROWS_AS(RepairNode(failed, self_help, sys), RepairError);
}

TEST_CASE("repaired column substituted back is a codeword") {
  std::mt19937 rng(13);
  const auto sys = SystemFor(3, 3, 8);
  auto cw = RandomCodeword(sys, rng);
  const NodeIndex failed{3, 2};
  const auto r = RepairNode(failed, Packets(cw, failed), sys);
  auto col = cw.column(NodeToOrdinal(failed, sys.params()));
  std::copy(r.symbols.begin(), r.symbols.end(), col.begin());
  CHECK(CheckCodeword(cw, sys));
}

TEST_CASE("bandwidth report") {
  const auto r23 = ComputeBandwidth(CodeParams::Create(2, 3, 7));
  CHECK(r23.beta == 4);
  CHECK(r23.total == 20);
  CHECK(r23.naive == 32);
  CHECK(r23.ratio == doctest::Approx(0.625));

  const auto r33 = ComputeBandwidth(CodeParams::Create(3, 3, 8));
  CHECK(r33.beta == 9);
  CHECK(r33.total == 72);
  CHECK(r33.naive == 162);
  CHECK(r33.ratio == doctest::Approx(72.0 / 162.0));
  CHECK(27 / 3 == r33.beta);

  const auto r22 = ComputeBandwidth(CodeParams::Create(2, 2, 5));
  CHECK(r22.beta == 2);
  CHECK(r22.total == 6);
  CHECK(r22.naive == 8);
}
