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

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "msr/field.h"

namespace msr {

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Row label (x_1, ..., x_t), each coordinate in [0, q).
struct RowIndex {
  std::vector<int> coords;

  auto operator<=>(const RowIndex&) const = default;
};

/// Node (thick column) label (i, theta) with class i in [1, t] and
/// theta in [0, q).
struct NodeIndex {
  int i = 1;
  int theta = 0;

  auto operator<=>(const NodeIndex&) const = default;
};

/// Dimensions of an (n = tq, k = (t-1)q, d = n-1) code with
/// sub-packetization alpha = q^t.
class CodeParams {
 public:
  /// Throws ParamError for q < 2, t < 2, an oversized q^t, or a field with
  /// fewer than n nonzero elements.
  static CodeParams Create(int q, int t, int m);
  static CodeParams Create(int q, int t, GaloisField field);

  int q() const { return q_; }
  int t() const { return t_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int d() const { return d_; }
  int alpha() const { return alpha_; }
  int beta() const { return beta_; }
  /// Message size in symbols, k * alpha.
  std::int64_t B() const { return static_cast<std::int64_t>(k_) * alpha_; }
  /// Number of parity-check constraints, q^{t+1}.
  int constraint_count() const { return q_ * alpha_; }

  const GaloisField& field() const { return *field_; }
  std::shared_ptr<const GaloisField> shared_field() const { return field_; }
  IndexRing ring() const { return IndexRing(q_); }

  bool has_c0() const { return c0_.has_value(); }
  /// Throws std::logic_error when unset.
  Symbol c0() const;
  /// Copy with the shifted-entry coefficient set. c must be a nonzero field
  /// element.
  CodeParams WithC0(Symbol c) const;

  bool ValidRow(const RowIndex& x) const;
  bool ValidNode(const NodeIndex& nd) const;

 private:
  CodeParams() = default;

  int q_ = 0;
  int t_ = 0;
  int n_ = 0;
  int k_ = 0;
  int d_ = 0;
  int alpha_ = 0;
  int beta_ = 0;
  std::shared_ptr<const GaloisField> field_;
  std::optional<Symbol> c0_;
};

/// Largest supported sub-packetization.
inline constexpr int kMaxAlpha = 1 << 20;

/// Lexicographic with x_1 most significant.
int RowToOrdinal(const RowIndex& x, const CodeParams& p);
RowIndex OrdinalToRow(int ordinal, const CodeParams& p);

/// Class-major: (i - 1) * q + theta.
int NodeToOrdinal(const NodeIndex& nd, const CodeParams& p);
NodeIndex OrdinalToNode(int ordinal, const CodeParams& p);

/// Rows with x_{i0} = theta0 for failed node (i0, theta0), ascending by
/// ordinal. Always q^{t-1} of them.
std::vector<RowIndex> GammaRows(const NodeIndex& failed, const CodeParams& p);
std::vector<int> GammaOrdinals(const NodeIndex& failed, const CodeParams& p);

}  // namespace msr
