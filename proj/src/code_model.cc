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

#include "msr/code_model.h"

#include <string>

namespace msr {

CodeParams CodeParams::Create(int q, int t, int m) {
  return Create(q, t, GaloisField::Build(m));
}

CodeParams CodeParams::Create(int q, int t, GaloisField field) {
  if (q < 2) {
    throw ParamError("q=" + std::to_string(q) +
                     ": need q >= 2 for any shifted parity to exist");
  }
  if (t < 2) throw ParamError("t=" + std::to_string(t) + ": need t >= 2");
  if (q > 255 || t > 255) throw ParamError("q and t must each be <= 255");

  std::int64_t alpha = 1;
  for (int j = 0; j < t; ++j) {
    alpha *= q;
    if (alpha > kMaxAlpha) {
      throw ParamError("sub-packetization q^t exceeds " +
                       std::to_string(kMaxAlpha));
    }
  }

  CodeParams p;
  p.q_ = q;
  p.t_ = t;
  p.n_ = t * q;
  p.k_ = (t - 1) * q;
  p.d_ = p.n_ - 1;
  p.alpha_ = static_cast<int>(alpha);
  p.beta_ = p.alpha_ / q;
  if (field.order() < static_cast<std::uint32_t>(p.n_)) {
    throw ParamError("GF(2^" + std::to_string(field.degree()) +
                     ") has fewer than n=" + std::to_string(p.n_) +
                     " nonzero elements");
  }
  p.field_ = std::make_shared<const GaloisField>(std::move(field));
  return p;
}

Symbol CodeParams::c0() const {
  if (!c0_) throw std::logic_error("c0 has not been set");
  return *c0_;
}

CodeParams CodeParams::WithC0(Symbol c) const {
  if (c == 0 || !field_->Contains(c)) {
    throw ParamError("c0 must be a nonzero field element");
  }
  CodeParams p = *this;
  p.c0_ = c;
  return p;
}

bool CodeParams::ValidRow(const RowIndex& x) const {
  if (static_cast<int>(x.coords.size()) != t_) return false;
  for (int c : x.coords) {
    if (c < 0 || c >= q_) return false;
  }
  return true;
}

bool CodeParams::ValidNode(const NodeIndex& nd) const {
  return nd.i >= 1 && nd.i <= t_ && nd.theta >= 0 && nd.theta < q_;
}

int RowToOrdinal(const RowIndex& x, const CodeParams& p) {
  if (!p.ValidRow(x)) throw ParamError("row index out of range");
  int ord = 0;
  for (int c : x.coords) ord = ord * p.q() + c;
  return ord;
}

RowIndex OrdinalToRow(int ordinal, const CodeParams& p) {
  if (ordinal < 0 || ordinal >= p.alpha()) {
    throw ParamError("row ordinal " + std::to_string(ordinal) +
                     " out of range");
  }
  RowIndex x{std::vector<int>(static_cast<std::size_t>(p.t()))};
  for (int j = p.t() - 1; j >= 0; --j) {
    x.coords[static_cast<std::size_t>(j)] = ordinal % p.q();
    ordinal /= p.q();
  }
  return x;
}

int NodeToOrdinal(const NodeIndex& nd, const CodeParams& p) {
  if (!p.ValidNode(nd)) {
    throw ParamError("node (" + std::to_string(nd.i) + "," +
                     std::to_string(nd.theta) + ") out of range");
  }
  return (nd.i - 1) * p.q() + nd.theta;
}

NodeIndex OrdinalToNode(int ordinal, const CodeParams& p) {
  if (ordinal < 0 || ordinal >= p.n()) {
    throw ParamError("node ordinal " + std::to_string(ordinal) +
                     " out of range");
  }
  return {ordinal / p.q() + 1, ordinal % p.q()};
}

std::vector<int> GammaOrdinals(const NodeIndex& failed, const CodeParams& p) {
  if (!p.ValidNode(failed)) throw ParamError("failed node out of range");
  // Coordinate i0 has positional weight q^{t - i0}.
  int weight = 1;
  for (int j = failed.i; j < p.t(); ++j) weight *= p.q();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(p.beta()));
  for (int ord = 0; ord < p.alpha(); ++ord) {
    if ((ord / weight) % p.q() == failed.theta) out.push_back(ord);
  }
  return out;
}

std::vector<RowIndex> GammaRows(const NodeIndex& failed, const CodeParams& p) {
  std::vector<RowIndex> rows;
  for (int ord : GammaOrdinals(failed, p)) rows.push_back(OrdinalToRow(ord, p));
  return rows;
}

}  // namespace msr
