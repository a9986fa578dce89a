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

#include "msr/repair.h"

#include <set>
#include <string>

namespace msr {
namespace {

// Solves constraint `index` for its single unknown symbol, which must lie on
// the failed node. `known` is indexed like `buf` (node-major flat columns).
void SolveSingleUnknown(const ParityCheckSystem& sys, std::size_t index,
                        int failed_ord, std::vector<Symbol>& buf,
                        std::vector<bool>& known) {
  const GaloisField& gf = sys.params().field();
  const int alpha = sys.params().alpha();
  Symbol acc = 0;
  const FlatEntry* unknown = nullptr;
  for (const FlatEntry& e : sys.sparse_rows()[index]) {
    const auto col = static_cast<std::size_t>(e.col);
    if (known[col]) {
      acc ^= gf.Mul(e.coeff, buf[col]);
    } else if (unknown == nullptr) {
      unknown = &e;
    } else {
      throw std::logic_error("repair: constraint " + std::to_string(index) +
                             " has more than one unknown");
    }
  }
  if (unknown == nullptr) {
    throw std::logic_error("repair: constraint " + std::to_string(index) +
                           " has no unknown; symbol would be written twice");
  }
  if (unknown->col / alpha != failed_ord) {
    throw std::logic_error("repair: unknown symbol outside the failed node");
  }
  const auto col = static_cast<std::size_t>(unknown->col);
  buf[col] = gf.Div(acc, unknown->coeff);
  known[col] = true;
}

}  // namespace

HelperPacket HelperExtract(std::span<const Symbol> content,
                           const NodeIndex& helper, const NodeIndex& failed,
                           const CodeParams& p) {
  if (!p.ValidNode(helper) || !p.ValidNode(failed)) {
    throw RepairError("helper or failed node out of range");
  }
  if (helper == failed) throw RepairError("a node cannot help repair itself");
  if (content.size() != static_cast<std::size_t>(p.alpha())) {
    throw RepairError("helper content must hold alpha symbols");
  }
  HelperPacket packet{helper, failed, {}};
  packet.entries.reserve(static_cast<std::size_t>(p.beta()));
  for (int ord : GammaOrdinals(failed, p)) {
    packet.entries.push_back(
        {OrdinalToRow(ord, p), content[static_cast<std::size_t>(ord)]});
  }
  return packet;
}

RepairResult RepairNode(const NodeIndex& failed,
                        std::span<const HelperPacket> packets,
                        const ParityCheckSystem& sys) {
  const CodeParams& p = sys.params();
  if (!p.ValidNode(failed)) throw RepairError("failed node out of range");
  if (static_cast<int>(packets.size()) != p.d()) {
    throw RepairError("repair needs exactly d=" + std::to_string(p.d()) +
                      " helper packets, got " +
                      std::to_string(packets.size()));
  }
  const int failed_ord = NodeToOrdinal(failed, p);
  const std::vector<int> gamma = GammaOrdinals(failed, p);
  const auto alpha = static_cast<std::size_t>(p.alpha());

  std::vector<Symbol> buf(static_cast<std::size_t>(p.n()) * alpha, 0);
  std::vector<bool> known(buf.size(), false);
  std::set<int> helpers;
  RepairResult result{failed, {}, 0};

  // Validate every packet before any solving.
  for (const HelperPacket& pk : packets) {
    if (!p.ValidNode(pk.helper)) throw RepairError("helper out of range");
    if (pk.failed != failed) {
      throw RepairError("packet was extracted for a different failed node");
    }
    const int h = NodeToOrdinal(pk.helper, p);
    if (h == failed_ord) throw RepairError("failed node listed as a helper");
    if (!helpers.insert(h).second) throw RepairError("duplicate helper");
    if (pk.entries.size() != gamma.size()) {
      throw RepairError("packet size differs from beta");
    }
    for (std::size_t s = 0; s < gamma.size(); ++s) {
      if (!p.ValidRow(pk.entries[s].row) ||
          RowToOrdinal(pk.entries[s].row, p) != gamma[s]) {
        throw RepairError("packet rows differ from the helper-row set");
      }
    }
  }
  for (const HelperPacket& pk : packets) {
    const auto base = static_cast<std::size_t>(NodeToOrdinal(pk.helper, p)) * alpha;
    for (std::size_t s = 0; s < gamma.size(); ++s) {
      const auto col = base + static_cast<std::size_t>(gamma[s]);
      buf[col] = pk.entries[s].value;
      known[col] = true;
    }
    result.downloaded_total += static_cast<std::int64_t>(pk.entries.size());
  }

  // Phase 1: row-parities on Gamma rows.
  for (int ord : gamma) {
    SolveSingleUnknown(sys, static_cast<std::size_t>(ord), failed_ord, buf,
                       known);
  }
  // Phase 2: Delta-parities anchored on Gamma rows.
  for (int delta = 1; delta < p.q(); ++delta) {
    for (int ord : gamma) {
      SolveSingleUnknown(
          sys, static_cast<std::size_t>(delta) * alpha + static_cast<std::size_t>(ord),
          failed_ord, buf, known);
    }
  }

  const auto base = static_cast<std::size_t>(failed_ord) * alpha;
  for (std::size_t r = 0; r < alpha; ++r) {
    if (!known[base + r]) {
      throw std::logic_error("repair: row " + std::to_string(r) +
                             " of the failed node was never written");
    }
  }
  result.symbols.assign(buf.begin() + static_cast<std::ptrdiff_t>(base),
                        buf.begin() + static_cast<std::ptrdiff_t>(base + alpha));
  return result;
}

BandwidthReport ComputeBandwidth(const CodeParams& p) {
  BandwidthReport r;
  r.beta = p.beta();
  r.total = static_cast<std::int64_t>(p.d()) * p.beta();
  r.naive = p.B();
  r.ratio = static_cast<double>(r.total) / static_cast<double>(r.naive);
  return r;
}

}  // namespace msr
