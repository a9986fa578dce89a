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
#include <span>
#include <stdexcept>
#include <vector>

#include "msr/code_model.h"
#include "msr/parity_check.h"

namespace msr {

class RepairError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PacketEntry {
  RowIndex row;
  Symbol value = 0;
};

/// What one helper sends: its stored symbols on the failed node's Gamma
/// rows, verbatim and in ascending row order.
struct HelperPacket {
  NodeIndex helper;
  NodeIndex failed;
  std::vector<PacketEntry> entries;
};

struct RepairResult {
  NodeIndex node;
  /// alpha symbols in row-ordinal order.
  std::vector<Symbol> symbols;
  /// Symbols received across all packets.
  std::int64_t downloaded_total = 0;
};

/// Copies the beta symbols of `content` (the helper's alpha symbols) lying
/// on GammaRows(failed). Throws RepairError if helper == failed.
HelperPacket HelperExtract(std::span<const Symbol> content,
                           const NodeIndex& helper, const NodeIndex& failed,
                           const CodeParams& p);

/// Rebuilds the failed node from exactly d = n - 1 packets. Row-parities
/// recover the Gamma rows of the failed node; each Delta-parity anchored
/// on a Gamma row then has one unknown, the shifted entry on the failed
/// node. Throws RepairError on a wrong packet count, a duplicate or
/// missing helper, or a packet whose rows differ from Gamma.
RepairResult RepairNode(const NodeIndex& failed,
                        std::span<const HelperPacket> packets,
                        const ParityCheckSystem& sys);

struct BandwidthReport {
  int beta = 0;
  std::int64_t total = 0;   // d * beta
  std::int64_t naive = 0;   // B = k * alpha
  double ratio = 0.0;       // total / naive
};

BandwidthReport ComputeBandwidth(const CodeParams& p);

}  // namespace msr
