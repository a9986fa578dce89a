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
#include <map>
#include <span>
#include <vector>

#include "msr/code_model.h"
#include "msr/parity_check.h"

namespace msr {

/// alpha x n array of symbols, stored node-major: symbol (row r, node j)
/// lives at j * alpha + r.
class CodewordArray {
 public:
  explicit CodewordArray(CodeParams p);

  const CodeParams& params() const { return params_; }

  Symbol at(int row_ordinal, int node_ordinal) const {
    return symbols_[Offset(row_ordinal, node_ordinal)];
  }
  Symbol& at(int row_ordinal, int node_ordinal) {
    return symbols_[Offset(row_ordinal, node_ordinal)];
  }
  Symbol at(const RowIndex& x, const NodeIndex& nd) const {
    return at(RowToOrdinal(x, params_), NodeToOrdinal(nd, params_));
  }

  std::span<const Symbol> column(int node_ordinal) const;
  std::span<Symbol> column(int node_ordinal);
  std::span<const Symbol> column(const NodeIndex& nd) const {
    return column(NodeToOrdinal(nd, params_));
  }

  std::span<const Symbol> symbols() const { return symbols_; }
  std::span<Symbol> symbols() { return symbols_; }

  bool operator==(const CodewordArray& o) const {
    return symbols_ == o.symbols_;
  }

 private:
  std::size_t Offset(int row_ordinal, int node_ordinal) const {
    return static_cast<std::size_t>(node_ordinal) *
               static_cast<std::size_t>(params_.alpha()) +
           static_cast<std::size_t>(row_ordinal);
  }

  CodeParams params_;
  std::vector<Symbol> symbols_;
};

/// Systematic encode: the B message symbols fill nodes 0..k-1 (node-major,
/// then row ordinal) and the last q nodes are solved from the constraints.
/// Throws std::invalid_argument on a length mismatch and std::logic_error if
/// the system has no c0.
CodewordArray Encode(std::span<const Symbol> message,
                     const ParityCheckSystem& sys);

/// Same as Encode, writing n * alpha node-major symbols into `out`.
void EncodeInto(std::span<const Symbol> message, std::span<Symbol> out,
                const ParityCheckSystem& sys);

/// True iff every constraint sums to zero.
bool CheckCodeword(const CodewordArray& arr, const ParityCheckSystem& sys);
bool CheckCodeword(std::span<const Symbol> node_major,
                   const ParityCheckSystem& sys);

/// Recovers messages from a fixed set of k nodes. The inverse for the q
/// missing nodes is computed once at construction, so one Decoder serves
/// many stripes. Holds a reference to `sys`.
class Decoder {
 public:
  /// Throws ParamError unless `available` holds exactly k distinct valid
  /// nodes, and SingularMatrix if the missing thick columns are rank
  /// deficient.
  Decoder(const ParityCheckSystem& sys, std::vector<NodeIndex> available);
  Decoder(ParityCheckSystem&&, std::vector<NodeIndex>) = delete;

  const std::vector<NodeIndex>& available() const { return available_; }
  /// True when all available nodes are systematic and no solve is needed.
  bool systematic_only() const { return systematic_only_; }

  /// columns[s] holds the alpha symbols of available()[s].
  std::vector<Symbol> Decode(
      std::span<const std::span<const Symbol>> columns) const;

 private:
  const ParityCheckSystem& sys_;
  std::vector<NodeIndex> available_;
  std::vector<int> available_ords_;
  std::vector<int> missing_;
  bool systematic_only_ = false;
  Matrix missing_inverse_;
};

/// One-shot decode from exactly k nodes.
std::vector<Symbol> DecodeFromK(
    const std::map<NodeIndex, std::vector<Symbol>>& available,
    const ParityCheckSystem& sys);

struct MdsReport {
  std::uint64_t subsets = 0;
  int trials = 0;
  std::uint64_t decodes = 0;
  std::uint64_t failures = 0;

  bool ok() const { return failures == 0; }
};

/// Encodes `trials` random messages and decodes each from every k-subset.
/// Singular solves count as failures.
MdsReport VerifyMds(const ParityCheckSystem& sys, int trials,
                    std::uint64_t seed = 1);

}  // namespace msr
