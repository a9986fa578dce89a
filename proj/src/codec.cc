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

#include "msr/codec.h"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>

namespace msr {

CodewordArray::CodewordArray(CodeParams p)
    : params_(std::move(p)),
      symbols_(static_cast<std::size_t>(params_.n()) *
                   static_cast<std::size_t>(params_.alpha()),
               0) {}

std::span<const Symbol> CodewordArray::column(int node_ordinal) const {
  return std::span<const Symbol>(symbols_).subspan(
      Offset(0, node_ordinal), static_cast<std::size_t>(params_.alpha()));
}

std::span<Symbol> CodewordArray::column(int node_ordinal) {
  return std::span<Symbol>(symbols_).subspan(
      Offset(0, node_ordinal), static_cast<std::size_t>(params_.alpha()));
}

void EncodeInto(std::span<const Symbol> message, std::span<Symbol> out,
                const ParityCheckSystem& sys) {
  const CodeParams& p = sys.params();
  if (!p.has_c0()) throw std::logic_error("encode: system has no c0");
  const auto b = static_cast<std::size_t>(p.B());
  if (message.size() != b) {
    throw std::invalid_argument("encode: message has " +
                                std::to_string(message.size()) +
                                " symbols, expected " + std::to_string(b));
  }
  if (out.size() != static_cast<std::size_t>(p.n()) *
                        static_cast<std::size_t>(p.alpha())) {
    throw std::invalid_argument("encode: output size mismatch");
  }
  const GaloisField& gf = p.field();
  std::copy(message.begin(), message.end(), out.begin());

  // H_parity * parity = H_data * data; characteristic 2 drops the sign.
  const auto data_cols = static_cast<int>(b);
  const auto& rows = sys.sparse_rows();
  std::vector<Symbol> syndrome(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Symbol acc = 0;
    for (const FlatEntry& e : rows[r]) {
      if (e.col < data_cols) {
        acc ^= gf.Mul(e.coeff, message[static_cast<std::size_t>(e.col)]);
      }
    }
    syndrome[r] = acc;
  }
  MultiplyInto(sys.ParityInverse(), syndrome, out.subspan(b), gf);
}

CodewordArray Encode(std::span<const Symbol> message,
                     const ParityCheckSystem& sys) {
  CodewordArray arr(sys.params());
  EncodeInto(message, arr.symbols(), sys);
  return arr;
}

bool CheckCodeword(std::span<const Symbol> node_major,
                   const ParityCheckSystem& sys) {
  const GaloisField& gf = sys.params().field();
  for (const auto& row : sys.sparse_rows()) {
    Symbol acc = 0;
    for (const FlatEntry& e : row) {
      acc ^= gf.Mul(e.coeff, node_major[static_cast<std::size_t>(e.col)]);
    }
    if (acc != 0) return false;
  }
  return true;
}

bool CheckCodeword(const CodewordArray& arr, const ParityCheckSystem& sys) {
  if (arr.params().q() != sys.params().q() ||
      arr.params().t() != sys.params().t()) {
    throw ParamError("codeword and system parameters differ");
  }
  return CheckCodeword(arr.symbols(), sys);
}

Decoder::Decoder(const ParityCheckSystem& sys, std::vector<NodeIndex> available)
    : sys_(sys), available_(std::move(available)) {
  const CodeParams& p = sys_.params();
  if (static_cast<int>(available_.size()) != p.k()) {
    throw ParamError("decode needs exactly k=" + std::to_string(p.k()) +
                     " nodes, got " + std::to_string(available_.size()));
  }
  std::set<int> seen;
  for (const NodeIndex& nd : available_) {
    const int ord = NodeToOrdinal(nd, p);
    if (!seen.insert(ord).second) throw ParamError("duplicate node in decode");
    available_ords_.push_back(ord);
  }
  for (int ord = 0; ord < p.n(); ++ord) {
    if (!seen.contains(ord)) missing_.push_back(ord);
  }
  systematic_only_ = std::all_of(missing_.begin(), missing_.end(),
                                 [&](int ord) { return ord >= p.k(); });
  if (!systematic_only_) {
    missing_inverse_ =
        Invert(sys_.ThickSubmatrixByOrdinal(missing_), p.field());
  }
}

std::vector<Symbol> Decoder::Decode(
    std::span<const std::span<const Symbol>> columns) const {
  const CodeParams& p = sys_.params();
  const auto alpha = static_cast<std::size_t>(p.alpha());
  if (columns.size() != available_.size()) {
    throw ParamError("decode: column count mismatch");
  }
  for (const auto& col : columns) {
    if (col.size() != alpha) throw ParamError("decode: column length mismatch");
  }

  std::vector<Symbol> message(static_cast<std::size_t>(p.B()), 0);
  if (systematic_only_) {
    for (std::size_t s = 0; s < columns.size(); ++s) {
      const int ord = available_ords_[s];
      if (ord < p.k()) {
        std::copy(columns[s].begin(), columns[s].end(),
                  message.begin() + static_cast<std::ptrdiff_t>(
                                        static_cast<std::size_t>(ord) * alpha));
      }
    }
    return message;
  }

  const GaloisField& gf = p.field();
  std::vector<Symbol> full(static_cast<std::size_t>(p.n()) * alpha, 0);
  std::vector<bool> known(static_cast<std::size_t>(p.n()), false);
  for (std::size_t s = 0; s < columns.size(); ++s) {
    const auto ord = static_cast<std::size_t>(available_ords_[s]);
    known[ord] = true;
    std::copy(columns[s].begin(), columns[s].end(),
              full.begin() + static_cast<std::ptrdiff_t>(ord * alpha));
  }
  const auto& rows = sys_.sparse_rows();
  std::vector<Symbol> syndrome(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Symbol acc = 0;
    for (const FlatEntry& e : rows[r]) {
      const auto col = static_cast<std::size_t>(e.col);
      if (known[col / alpha]) acc ^= gf.Mul(e.coeff, full[col]);
    }
    syndrome[r] = acc;
  }
  const std::vector<Symbol> recovered =
      Multiply(missing_inverse_, syndrome, gf);
  for (std::size_t s = 0; s < missing_.size(); ++s) {
    std::copy_n(recovered.begin() + static_cast<std::ptrdiff_t>(s * alpha),
                alpha,
                full.begin() + static_cast<std::ptrdiff_t>(
                                   static_cast<std::size_t>(missing_[s]) * alpha));
  }
  std::copy_n(full.begin(), message.size(), message.begin());
  return message;
}

std::vector<Symbol> DecodeFromK(
    const std::map<NodeIndex, std::vector<Symbol>>& available,
    const ParityCheckSystem& sys) {
  std::vector<NodeIndex> nodes;
  std::vector<std::span<const Symbol>> columns;
  for (const auto& [nd, col] : available) {
    nodes.push_back(nd);
    columns.emplace_back(col);
  }
  const Decoder dec(sys, std::move(nodes));
  return dec.Decode(columns);
}

MdsReport VerifyMds(const ParityCheckSystem& sys, int trials,
                    std::uint64_t seed) {
  const CodeParams& p = sys.params();
  MdsReport report;
  const auto subsets = Combinations(p.n(), p.k());
  report.subsets = subsets.size();
  report.trials = std::max(trials, 0);
  if (trials <= 0) return report;

  std::vector<std::optional<Decoder>> decoders;
  decoders.reserve(subsets.size());
  for (const auto& s : subsets) {
    std::vector<NodeIndex> nodes;
    for (int ord : s) nodes.push_back(OrdinalToNode(ord, p));
    try {
      decoders.emplace_back(std::in_place, sys, std::move(nodes));
    } catch (const SingularMatrix&) {
      decoders.emplace_back(std::nullopt);
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, p.field().size() - 1);
  std::vector<Symbol> message(static_cast<std::size_t>(p.B()));
  for (int trial = 0; trial < trials; ++trial) {
    for (auto& v : message) v = static_cast<Symbol>(dist(rng));
    std::optional<CodewordArray> cw;
    try {
      cw.emplace(Encode(message, sys));
    } catch (const SingularMatrix&) {
      report.decodes += subsets.size();
      report.failures += subsets.size();
      continue;
    }
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      ++report.decodes;
      if (!decoders[i]) {
        ++report.failures;
        continue;
      }
      std::vector<std::span<const Symbol>> cols;
      for (int ord : subsets[i]) cols.push_back(cw->column(ord));
      if (decoders[i]->Decode(cols) != message) ++report.failures;
    }
  }
  return report;
}

}  // namespace msr
