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
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "msr/code_model.h"
#include "msr/field.h"
#include "msr/linalg.h"

namespace msr {

/// One summand coeff * C(row; node) of a parity-check constraint.
struct Term {
  RowIndex row;
  NodeIndex node;
  Symbol coeff = 0;
};

/// Sum of coeff * symbol over `terms` must vanish. delta == 0 is the
/// row-parity of anchor_row; delta != 0 adds t shifted entries.
struct Constraint {
  int delta = 0;
  RowIndex anchor_row;
  std::vector<Term> terms;
};

/// Nonzero of the flattened parity-check matrix. Column index is
/// node_ordinal * alpha + row_ordinal.
struct FlatEntry {
  int col = 0;
  Symbol coeff = 0;
};

/// Thrown when no nonzero c in the field makes every thick subset full rank.
class FieldTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the number of subsets to check exceeds the configured cap.
class SubsetCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The q^{t+1} constraints of the code, i.e. H = J0 + c E with
/// J0 = hmds (x) I_alpha. Constraint (delta, x) sits at index
/// delta * alpha + row_ordinal(x). Immutable once built.
class ParityCheckSystem {
 public:
  const CodeParams& params() const { return params_; }
  const Matrix& hmds() const { return hmds_; }
  /// The coefficient on every shifted entry.
  Symbol shift_coefficient() const { return shift_coeff_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  /// Per-constraint flattened support, in term order.
  const std::vector<std::vector<FlatEntry>>& sparse_rows() const {
    return sparse_rows_;
  }

  /// Dense q^{t+1} x n*alpha matrix.
  Matrix Flatten() const;

  /// Columns belonging to `nodes`, node-major in the given order.
  Matrix ThickSubmatrix(std::span<const NodeIndex> nodes) const;
  Matrix ThickSubmatrixByOrdinal(std::span<const int> node_ordinals) const;

  /// Inverse of the thick submatrix over the last q nodes (the parity
  /// nodes of the systematic encoder). Computed on first use and shared by
  /// copies of this system. Throws SingularMatrix.
  const Matrix& ParityInverse() const;

 private:
  friend ParityCheckSystem BuildSystem(const CodeParams& p, Symbol c);

  struct Cache;

  explicit ParityCheckSystem(CodeParams p);

  CodeParams params_;
  Matrix hmds_;
  Symbol shift_coeff_ = 0;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<FlatEntry>> sparse_rows_;
  std::shared_ptr<Cache> cache_;
};

/// q x n Vandermonde matrix hmds[r][j] = a_j^r with a_j = g^{j+1} for the
/// field generator g. Every q columns are independent.
Matrix BuildHmds(const CodeParams& p);

/// System with every shifted entry carrying coefficient c. c = 0 yields
/// J0 alone and is meant for rank experiments only. When c != 0 the
/// returned system's params carry c0 = c.
ParityCheckSystem BuildSystem(const CodeParams& p, Symbol c);

/// System for params whose c0 has been set.
ParityCheckSystem BuildSystem(const CodeParams& p);

inline constexpr std::uint64_t kDefaultSubsetCap = 1'000'000;

/// C(n, r), saturating at UINT64_MAX.
std::uint64_t Binomial(int n, int r);

/// All r-subsets of [0, n) as ascending ordinal lists, in lexicographic
/// order.
std::vector<std::vector<int>> Combinations(int n, int r);

struct SubsetRankReport {
  std::uint64_t subsets_checked = 0;
  /// First (lexicographic) q-subset whose thick submatrix is rank
  /// deficient, if any.
  std::optional<std::vector<int>> deficient;

  bool ok() const { return !deficient.has_value(); }
};

/// Checks rank(ThickSubmatrix(S)) = q^{t+1} for every S with |S| = q.
/// Subsets are checked in parallel; throws SubsetCapExceeded when
/// C(n, q) > cap.
SubsetRankReport CheckThickSubsets(const ParityCheckSystem& sys,
                                   std::uint64_t cap = kDefaultSubsetCap);

/// Field size that guarantees a valid c0: C(n, k) * q^t * (q - 1) + 1.
/// Saturates at UINT64_MAX.
std::uint64_t SufficientFieldSize(int q, int t);

/// Smallest nonzero c (in integer order) for which every q-subset of thick
/// columns has full rank. Throws FieldTooSmall if none exists in the field.
Symbol FindC0(const CodeParams& p, std::uint64_t cap = kDefaultSubsetCap);

}  // namespace msr
