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

#include "msr/commands.h"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "msr/codec.h"
#include "msr/parity_check.h"
#include "msr/repair.h"

namespace msr::cli {
namespace {

namespace fs = std::filesystem;

void PutSymbol(std::uint8_t* dst, Symbol v) {
  dst[0] = static_cast<std::uint8_t>(v);
  dst[1] = static_cast<std::uint8_t>(v >> 8);
}

Symbol GetSymbol(const std::uint8_t* src) {
  return static_cast<Symbol>(src[0] | (src[1] << 8));
}

std::uint64_t ShardSize(const Manifest& mf, const CodeParams& p) {
  return kShardHeaderSize + std::uint64_t{mf.stripe_count} *
                                static_cast<std::uint64_t>(p.alpha()) *
                                kSymbolBytes;
}

// Maximal runs [start, start + len) of consecutive ordinals.
std::vector<std::pair<int, int>> Runs(const std::vector<int>& ords) {
  std::vector<std::pair<int, int>> runs;
  for (int ord : ords) {
    if (!runs.empty() && runs.back().first + runs.back().second == ord) {
      ++runs.back().second;
    } else {
      runs.emplace_back(ord, 1);
    }
  }
  return runs;
}

std::string NodeName(const NodeIndex& nd) {
  return "(" + std::to_string(nd.i) + "," + std::to_string(nd.theta) + ")";
}

}  // namespace

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIo;
  if (dynamic_cast<const fs::filesystem_error*>(&e) != nullptr) return kExitIo;
  if (dynamic_cast<const VerificationError*>(&e) != nullptr ||
      dynamic_cast<const FormatError*>(&e) != nullptr ||
      dynamic_cast<const FieldTooSmall*>(&e) != nullptr ||
      dynamic_cast<const SingularMatrix*>(&e) != nullptr) {
    return kExitVerification;
  }
  return kExitUsage;
}

InitResult RunInit(int q, int t, std::optional<int> m,
                   const fs::path& out_dir) {
  if (q < 2 || t < 2) {
    throw UsageError("need q >= 2 and t >= 2 (got q=" + std::to_string(q) +
                     ", t=" + std::to_string(t) + ")");
  }
  std::vector<int> degrees;
  if (m) {
    degrees.push_back(*m);
  } else {
    for (int d = kMinFieldDegree; d <= kMaxFieldDegree; ++d) {
      if ((1L << d) - 1 >= static_cast<long>(t) * q) degrees.push_back(d);
    }
    if (degrees.empty()) {
      throw UsageError("n = " + std::to_string(t * q) +
                       " exceeds what GF(2^16) can index");
    }
  }

  InitResult result;
  for (int d : degrees) {
    const CodeParams p = CodeParams::Create(q, t, d);
    result.degrees_tried.push_back(d);
    Symbol c0 = 0;
    try {
      c0 = FindC0(p);
    } catch (const FieldTooSmall&) {
      if (d == degrees.back()) throw;
      continue;
    }
    result.manifest.q = q;
    result.manifest.t = t;
    result.manifest.m = d;
    result.manifest.reduction_poly = p.field().polynomial();
    result.manifest.c0 = c0;
    break;
  }
  fs::create_directories(out_dir);
  result.path = out_dir / kManifestName;
  result.manifest.Save(result.path);
  return result;
}

EncodeResult RunEncode(const fs::path& manifest_path, const fs::path& input,
                       const fs::path& out_dir) {
  Manifest mf = Manifest::Load(manifest_path);
  const CodeParams p = mf.Params();
  const ParityCheckSystem sys = BuildSystem(p);
  const std::vector<std::uint8_t> data = ReadFile(input);

  const std::uint64_t stripes = StripeCount(data.size(), p);
  if (stripes > 0xffffffffULL) throw UsageError("input too large");
  mf.stripe_count = static_cast<std::uint32_t>(stripes);
  mf.file_length = data.size();
  mf.checksums.clear();

  const auto alpha = static_cast<std::size_t>(p.alpha());
  const auto n = static_cast<std::size_t>(p.n());
  std::vector<std::vector<std::uint8_t>> shards(
      n, std::vector<std::uint8_t>(ShardSize(mf, p)));
  for (std::size_t j = 0; j < n; ++j) {
    const auto hdr = mf.HeaderFor(OrdinalToNode(static_cast<int>(j), p)).Serialize();
    std::copy(hdr.begin(), hdr.end(), shards[j].begin());
  }

  std::vector<Symbol> message(static_cast<std::size_t>(p.B()));
  std::vector<Symbol> codeword(n * alpha);
  for (std::uint64_t s = 0; s < stripes; ++s) {
    UnpackSymbols(data, p.field().degree(), s * message.size(), message);
    EncodeInto(message, codeword, sys);
    const std::size_t base = kShardHeaderSize + s * alpha * kSymbolBytes;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0; r < alpha; ++r) {
        PutSymbol(&shards[j][base + r * kSymbolBytes], codeword[j * alpha + r]);
      }
    }
  }

  fs::create_directories(out_dir);
  EncodeResult result;
  for (std::size_t j = 0; j < n; ++j) {
    const NodeIndex nd = OrdinalToNode(static_cast<int>(j), p);
    const fs::path path = out_dir / ShardFileName(nd);
    WriteFile(path, shards[j]);
    mf.checksums[nd] = Adler32(shards[j]);
    result.shards.push_back(path);
  }
  mf.Save(out_dir / kManifestName);
  result.manifest = std::move(mf);
  return result;
}

void RunDecode(const fs::path& manifest_path,
               const std::vector<fs::path>& shard_paths,
               const fs::path& output) {
  const Manifest mf = Manifest::Load(manifest_path);
  const CodeParams p = mf.Params();
  const ParityCheckSystem sys = BuildSystem(p);
  if (static_cast<int>(shard_paths.size()) != p.k()) {
    throw UsageError("decode needs exactly k=" + std::to_string(p.k()) +
                     " shards, got " + std::to_string(shard_paths.size()));
  }

  const auto alpha = static_cast<std::size_t>(p.alpha());
  const std::uint64_t expected_size = ShardSize(mf, p);
  std::vector<NodeIndex> nodes;
  std::vector<std::vector<Symbol>> contents;
  std::set<NodeIndex> seen;
  for (const fs::path& path : shard_paths) {
    const std::vector<std::uint8_t> bytes = ReadFile(path);
    const ShardHeader h = ShardHeader::Parse(bytes);
    mf.CheckHeader(h);
    if (!seen.insert(h.node).second) {
      throw UsageError("node " + NodeName(h.node) + " supplied twice");
    }
    if (bytes.size() != expected_size) {
      throw FormatError(path.string() + ": unexpected shard size");
    }
    auto it = mf.checksums.find(h.node);
    if (it == mf.checksums.end()) {
      throw FormatError("manifest has no checksum for node " + NodeName(h.node));
    }
    if (Adler32(bytes) != it->second) {
      throw VerificationError(path.string() + ": checksum mismatch");
    }
    std::vector<Symbol> syms((bytes.size() - kShardHeaderSize) / kSymbolBytes);
    for (std::size_t i = 0; i < syms.size(); ++i) {
      syms[i] = GetSymbol(&bytes[kShardHeaderSize + i * kSymbolBytes]);
    }
    nodes.push_back(h.node);
    contents.push_back(std::move(syms));
  }

  const Decoder decoder(sys, nodes);
  const int m = p.field().degree();
  const auto b = static_cast<std::uint64_t>(p.B());
  std::vector<std::uint8_t> out((mf.stripe_count * b * static_cast<std::uint64_t>(m) + 7) / 8, 0);
  std::vector<std::span<const Symbol>> columns(nodes.size());
  for (std::uint64_t s = 0; s < mf.stripe_count; ++s) {
    for (std::size_t c = 0; c < nodes.size(); ++c) {
      columns[c] = std::span<const Symbol>(contents[c]).subspan(s * alpha, alpha);
    }
    PackSymbols(decoder.Decode(columns), m, s * b, out);
  }
  if (out.size() < mf.file_length) {
    throw FormatError("manifest file_length exceeds the encoded payload");
  }
  out.resize(mf.file_length);
  WriteFile(output, out);
}

RepairStats RunRepair(const fs::path& manifest_path, const NodeIndex& failed,
                      const std::vector<fs::path>& helper_paths,
                      const fs::path& output) {
  const Manifest mf = Manifest::Load(manifest_path);
  const CodeParams p = mf.Params();
  if (!p.ValidNode(failed)) {
    throw UsageError("node " + NodeName(failed) + " is not part of this code");
  }
  if (static_cast<int>(helper_paths.size()) != p.d()) {
    throw UsageError("repair needs exactly d=" + std::to_string(p.d()) +
                     " helper shards, got " +
                     std::to_string(helper_paths.size()));
  }
  const ParityCheckSystem sys = BuildSystem(p);

  std::vector<CountingReader> readers;
  std::vector<NodeIndex> helper_nodes;
  std::set<NodeIndex> seen;
  for (const fs::path& path : helper_paths) {
    CountingReader reader(path);
    std::array<std::uint8_t, kShardHeaderSize> raw{};
    reader.ReadAt(0, raw);
    const ShardHeader h = ShardHeader::Parse(raw);
    mf.CheckHeader(h);
    if (h.node == failed) {
      throw UsageError("shard for the failed node given as a helper");
    }
    if (!seen.insert(h.node).second) {
      throw UsageError("node " + NodeName(h.node) + " supplied twice");
    }
    helper_nodes.push_back(h.node);
    readers.push_back(std::move(reader));
  }

  const auto alpha = static_cast<std::size_t>(p.alpha());
  const std::vector<int> gamma = GammaOrdinals(failed, p);
  const std::vector<RowIndex> gamma_rows = GammaRows(failed, p);
  const auto runs = Runs(gamma);

  std::vector<std::uint8_t> rebuilt(ShardSize(mf, p));
  const auto hdr = mf.HeaderFor(failed).Serialize();
  std::copy(hdr.begin(), hdr.end(), rebuilt.begin());

  std::vector<HelperPacket> packets(readers.size());
  for (std::size_t h = 0; h < readers.size(); ++h) {
    packets[h].helper = helper_nodes[h];
    packets[h].failed = failed;
    packets[h].entries.resize(gamma.size());
    for (std::size_t s = 0; s < gamma.size(); ++s) {
      packets[h].entries[s].row = gamma_rows[s];
    }
  }
  std::vector<std::uint8_t> run_buf;
  for (std::uint64_t s = 0; s < mf.stripe_count; ++s) {
    const std::uint64_t stripe_base = kShardHeaderSize + s * alpha * kSymbolBytes;
    for (std::size_t h = 0; h < readers.size(); ++h) {
      std::size_t slot = 0;
      for (const auto& [start, len] : runs) {
        run_buf.resize(static_cast<std::size_t>(len) * kSymbolBytes);
        readers[h].ReadAt(stripe_base + static_cast<std::uint64_t>(start) * kSymbolBytes,
                          run_buf);
        for (int i = 0; i < len; ++i) {
          packets[h].entries[slot++].value =
              GetSymbol(&run_buf[static_cast<std::size_t>(i) * kSymbolBytes]);
        }
      }
    }
    const RepairResult r = RepairNode(failed, packets, sys);
    for (std::size_t row = 0; row < alpha; ++row) {
      PutSymbol(&rebuilt[stripe_base + row * kSymbolBytes], r.symbols[row]);
    }
  }
  WriteFile(output, rebuilt);

  RepairStats stats;
  stats.failed = failed;
  for (std::size_t h = 0; h < readers.size(); ++h) {
    stats.helpers.push_back({helper_nodes[h], readers[h].bytes_read()});
    stats.bytes_read += readers[h].bytes_read();
  }
  stats.naive_bytes = static_cast<std::uint64_t>(p.k()) * ShardSize(mf, p);
  auto it = mf.checksums.find(failed);
  stats.checksum_matches = it != mf.checksums.end() && it->second == Adler32(rebuilt);
  return stats;
}

VerifyResult RunVerify(const fs::path& manifest_path, int trials) {
  if (trials < 0) throw UsageError("trials must be >= 0");
  const Manifest mf = Manifest::Load(manifest_path);
  const CodeParams p = mf.Params();
  const ParityCheckSystem sys = BuildSystem(p);

  VerifyResult v;
  const SubsetRankReport ranks = CheckThickSubsets(sys);
  v.subsets_checked = ranks.subsets_checked;
  v.ranks_ok = ranks.ok();
  try {
    v.c0_canonical = FindC0(p) == p.c0();
  } catch (const FieldTooSmall&) {
    v.c0_canonical = false;
  }
  const MdsReport mds = VerifyMds(sys, trials);
  v.decodes = mds.decodes;
  v.decode_failures = mds.failures;
  return v;
}

std::string StatsTable(const CodeParams& p) {
  const BandwidthReport bw = ComputeBandwidth(p);
  const double k_over_t = static_cast<double>(p.k()) / p.t();
  std::ostringstream os;
  os << "q=" << p.q() << " t=" << p.t() << " m=" << p.field().degree() << "\n"
     << "  n            " << p.n() << "\n"
     << "  k            " << p.k() << "\n"
     << "  d            " << p.d() << "\n"
     << "  alpha        " << p.alpha() << "\n"
     << "  beta         " << p.beta() << "\n"
     << "  B            " << p.B() << "\n"
     << "  rate         " << p.t() - 1 << "/" << p.t() << " = "
     << static_cast<double>(p.t() - 1) / p.t() << "\n"
     << "  d*beta       " << bw.total << "\n"
     << "  d*beta/B     " << bw.ratio << "\n"
     << "  (k/t)^t      " << std::pow(k_over_t, p.t()) << "  (alpha "
     << (static_cast<double>(p.alpha()) == std::pow(k_over_t, p.t()) ? "==" : "!=")
     << " (k/t)^t)\n"
     << "  (d-k+1)*beta " << (p.d() - p.k() + 1) * p.beta() << "\n";
  return os.str();
}

NodeIndex ParseNode(const std::string& text) {
  NodeIndex nd;
  char sep = 0;
  std::istringstream is(text);
  if (!(is >> nd.i >> sep >> nd.theta) || sep != ',' || !is.eof()) {
    throw UsageError("node must look like i,theta (got '" + text + "')");
  }
  return nd;
}

}  // namespace msr::cli
