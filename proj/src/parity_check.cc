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

#include "msr/parity_check.h"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

namespace msr {

struct ParityCheckSystem::Cache {
  std::once_flag once;
  Matrix parity_inverse;
};

ParityCheckSystem::ParityCheckSystem(CodeParams p)
    : params_(std::move(p)), cache_(std::make_shared<Cache>()) {}

Matrix BuildHmds(const CodeParams& p) {
  const GaloisField& gf = p.field();
  if (gf.order() < static_cast<std::uint32_t>(p.n())) {
    throw ParamError("field too small for n distinct evaluation points");
  }
  Matrix h(static_cast<std::size_t>(p.q()), static_cast<std::size_t>(p.n()));
  for (int j = 0; j < p.n(); ++j) {
    const Symbol a = gf.Pow(gf.generator(), static_cast<std::uint64_t>(j + 1));
    Symbol v = 1;
    for (int r = 0; r < p.q(); ++r) {
      h.at(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) = v;
      v = gf.Mul(v, a);
    }
  }
  return h;
}

ParityCheckSystem BuildSystem(const CodeParams& p, Symbol c) {
  if (!p.field().Contains(c)) throw ParamError("c is not a field element");
  ParityCheckSystem sys(c != 0 ? p.WithC0(c) : p);
  sys.hmds_ = BuildHmds(p);
  sys.shift_coeff_ = c;

  const int q = p.q();
  const int t = p.t();
  const int n = p.n();
  const int alpha = p.alpha();
  const IndexRing ring = p.ring();
  sys.constraints_.reserve(static_cast<std::size_t>(p.constraint_count()));
  sys.sparse_rows_.reserve(static_cast<std::size_t>(p.constraint_count()));

  for (int delta = 0; delta < q; ++delta) {
    for (int ord = 0; ord < alpha; ++ord) {
      Constraint con;
      con.delta = delta;
      con.anchor_row = OrdinalToRow(ord, p);
      std::vector<FlatEntry> flat;
      for (int nd = 0; nd < n; ++nd) {
        const Symbol coeff =
            sys.hmds_.at(static_cast<std::size_t>(delta),
                         static_cast<std::size_t>(nd));
        con.terms.push_back({con.anchor_row, OrdinalToNode(nd, p), coeff});
        flat.push_back({nd * alpha + ord, coeff});
      }
      if (delta != 0 && c != 0) {
        for (int j = 1; j <= t; ++j) {
          const int xj = con.anchor_row.coords[static_cast<std::size_t>(j - 1)];
          RowIndex shifted = con.anchor_row;
          shifted.coords[static_cast<std::size_t>(j - 1)] = ring.Sub(xj, delta);
          const NodeIndex node{j, xj};
          flat.push_back({NodeToOrdinal(node, p) * alpha +
                              RowToOrdinal(shifted, p),
                          c});
          con.terms.push_back({std::move(shifted), node, c});
        }
      }
      sys.constraints_.push_back(std::move(con));
      sys.sparse_rows_.push_back(std::move(flat));
    }
  }
  return sys;
}

ParityCheckSystem BuildSystem(const CodeParams& p) {
  return BuildSystem(p, p.c0());
}

Matrix ParityCheckSystem::Flatten() const {
  const auto n_cols =
      static_cast<std::size_t>(params_.n()) * static_cast<std::size_t>(params_.alpha());
  Matrix h(sparse_rows_.size(), n_cols);
  for (std::size_t r = 0; r < sparse_rows_.size(); ++r) {
    for (const FlatEntry& e : sparse_rows_[r]) {
      Symbol& slot = h.at(r, static_cast<std::size_t>(e.col));
      // J0 and E never share a position.
      if (slot != 0) {
        throw std::logic_error("parity-check support collision in row " +
                               std::to_string(r));
      }
      slot = e.coeff;
    }
  }
  return h;
}

Matrix ParityCheckSystem::ThickSubmatrixByOrdinal(
    std::span<const int> node_ordinals) const {
  const int alpha = params_.alpha();
  std::unordered_map<int, int> slot;
  for (std::size_t s = 0; s < node_ordinals.size(); ++s) {
    if (node_ordinals[s] < 0 || node_ordinals[s] >= params_.n()) {
      throw ParamError("node ordinal out of range");
    }
    if (!slot.emplace(node_ordinals[s], static_cast<int>(s)).second) {
      throw ParamError("duplicate node in thick-column set");
    }
  }
  Matrix m(sparse_rows_.size(), node_ordinals.size() * static_cast<std::size_t>(alpha));
  for (std::size_t r = 0; r < sparse_rows_.size(); ++r) {
    for (const FlatEntry& e : sparse_rows_[r]) {
      auto it = slot.find(e.col / alpha);
      if (it == slot.end()) continue;
      m.at(r, static_cast<std::size_t>(it->second * alpha + e.col % alpha)) =
          e.coeff;
    }
  }
  return m;
}

Matrix ParityCheckSystem::ThickSubmatrix(std::span<const NodeIndex> nodes) const {
  std::vector<int> ords;
  ords.reserve(nodes.size());
  for (const NodeIndex& nd : nodes) ords.push_back(NodeToOrdinal(nd, params_));
  return ThickSubmatrixByOrdinal(ords);
}

const Matrix& ParityCheckSystem::ParityInverse() const {
  std::call_once(cache_->once, [this] {
    std::vector<int> parity(static_cast<std::size_t>(params_.q()));
    for (int s = 0; s < params_.q(); ++s) parity[static_cast<std::size_t>(s)] = params_.k() + s;
    cache_->parity_inverse =
        Invert(ThickSubmatrixByOrdinal(parity), params_.field());
  });
  return cache_->parity_inverse;
}

std::uint64_t Binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) {
    const auto num = static_cast<std::uint64_t>(n - r + i);
    // out * num / i is exact at every step; guard the multiply.
    if (out > kMax / num) return kMax;
    out = out * num / static_cast<std::uint64_t>(i);
  }
  return out;
}

std::vector<std::vector<int>> Combinations(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = r - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

SubsetRankReport CheckThickSubsets(const ParityCheckSystem& sys,
                                   std::uint64_t cap) {
  const CodeParams& p = sys.params();
  const std::uint64_t count = Binomial(p.n(), p.q());
  if (count > cap) {
    throw SubsetCapExceeded("C(" + std::to_string(p.n()) + "," +
                            std::to_string(p.q()) + ") = " +
                            std::to_string(count) +
                            " thick subsets exceeds the cap of " +
                            std::to_string(cap));
  }
  const auto subsets = Combinations(p.n(), p.q());
  const auto full = static_cast<std::size_t>(p.constraint_count());

  // Smallest deficient subset index seen so far; keeps the result
  // independent of thread scheduling.
  std::atomic<std::size_t> first_bad{subsets.size()};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < subsets.size(); i = next++) {
      if (i > first_bad.load()) break;
      const Matrix m = sys.ThickSubmatrixByOrdinal(subsets[i]);
      if (Rank(m, p.field()) != full) {
        std::size_t cur = first_bad.load();
        while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto n_threads =
      static_cast<unsigned>(std::min<std::size_t>(hw, subsets.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SubsetRankReport report;
  report.subsets_checked = subsets.size();
  if (first_bad.load() < subsets.size()) {
    report.deficient = subsets[first_bad.load()];
  }
  return report;
}

std::uint64_t SufficientFieldSize(int q, int t) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v = Binomial(t * q, (t - 1) * q);
  auto mul = [&](std::uint64_t f) {
    v = (f != 0 && v > kMax / f) ? kMax : v * f;
  };
  for (int j = 0; j < t; ++j) mul(static_cast<std::uint64_t>(q));
  mul(static_cast<std::uint64_t>(q - 1));
  return v == kMax ? kMax : v + 1;
}

Symbol FindC0(const CodeParams& p, std::uint64_t cap) {
  const std::uint64_t count = Binomial(p.n(), p.q());
  if (count > cap) {
    throw SubsetCapExceeded(std::to_string(count) +
                            " thick subsets exceeds the cap of " +
                            std::to_string(cap));
  }
  for (std::uint32_t c = 1; c < p.field().size(); ++c) {
    const auto sys = BuildSystem(p, static_cast<Symbol>(c));
    if (CheckThickSubsets(sys, cap).ok()) return static_cast<Symbol>(c);
  }
  throw FieldTooSmall(
      "no valid c0 in GF(2^" + std::to_string(p.field().degree()) +
      "); a field of size > " + std::to_string(SufficientFieldSize(p.q(), p.t())) +
      " is guaranteed to work");
}

}  // namespace msr
