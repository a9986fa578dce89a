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

#include "msr/shard.h"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace msr {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'S', 'R', 'C'};

template <typename T>
void PutLe(std::uint8_t* dst, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    dst[i] = static_cast<std::uint8_t>(v >> (8 * i));
  }
}

template <typename T>
T GetLe(const std::uint8_t* src) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(static_cast<T>(src[i]) << (8 * i));
  }
  return v;
}

std::uint32_t FullPoly(std::uint32_t stored, int m) {
  return m == 16 ? (stored | (1u << 16)) : stored;
}

std::string NodeKey(const NodeIndex& nd) {
  return "checksum." + std::to_string(nd.i) + "." + std::to_string(nd.theta);
}

std::uint64_t ParseUint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long out = std::stoull(v, &pos, 0);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw FormatError("manifest: bad value for " + key + ": '" + v + "'");
  }
}

}  // namespace

std::array<std::uint8_t, kShardHeaderSize> ShardHeader::Serialize() const {
  std::array<std::uint8_t, kShardHeaderSize> b{};
  std::copy(kMagic.begin(), kMagic.end(), b.begin());
  b[4] = kShardVersion;
  b[5] = static_cast<std::uint8_t>(q);
  b[6] = static_cast<std::uint8_t>(t);
  b[7] = static_cast<std::uint8_t>(m);
  PutLe<std::uint16_t>(&b[8], static_cast<std::uint16_t>(reduction_poly & 0xffff));
  PutLe<std::uint16_t>(&b[10], c0);
  b[12] = static_cast<std::uint8_t>(node.i);
  b[13] = static_cast<std::uint8_t>(node.theta);
  PutLe<std::uint32_t>(&b[14], stripe_count);
  PutLe<std::uint64_t>(&b[18], file_length);
  return b;
}

ShardHeader ShardHeader::Parse(std::span<const std::uint8_t> b) {
  if (b.size() < kShardHeaderSize) throw FormatError("shard header truncated");
  if (!std::equal(kMagic.begin(), kMagic.end(), b.begin())) {
    throw FormatError("shard header: bad magic");
  }
  if (b[4] != kShardVersion) {
    throw FormatError("shard header: unsupported version " +
                      std::to_string(b[4]));
  }
  ShardHeader h;
  h.q = b[5];
  h.t = b[6];
  h.m = b[7];
  h.reduction_poly = FullPoly(GetLe<std::uint16_t>(&b[8]), h.m);
  h.c0 = GetLe<std::uint16_t>(&b[10]);
  h.node = {b[12], b[13]};
  h.stripe_count = GetLe<std::uint32_t>(&b[14]);
  h.file_length = GetLe<std::uint64_t>(&b[18]);
  try {
    const auto p =
        CodeParams::Create(h.q, h.t, GaloisField(h.m, h.reduction_poly))
            .WithC0(h.c0);
    if (!p.ValidNode(h.node)) throw ParamError("node out of range");
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("shard header: ") + e.what());
  }
  return h;
}

std::string Manifest::ToText() const {
  std::ostringstream os;
  os << "# msrcode manifest\n"
     << "version=1\n"
     << "q=" << q << "\n"
     << "t=" << t << "\n"
     << "m=" << m << "\n"
     << "reduction_poly=0x" << std::hex << reduction_poly << std::dec << "\n"
     << "c0=" << c0 << "\n"
     << "stripe_count=" << stripe_count << "\n"
     << "file_length=" << file_length << "\n";
  for (const auto& [nd, sum] : checksums) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", sum);
    os << NodeKey(nd) << "=0x" << buf << "\n";
  }
  return os.str();
}

Manifest Manifest::Parse(const std::string& text) {
  Manifest mf;
  std::istringstream is(text);
  std::string line;
  bool have_q = false, have_t = false, have_m = false, have_poly = false,
       have_c0 = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("manifest: bad line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    const std::uint64_t v = ParseUint(key, val);
    if (key == "version") {
      if (v != 1) throw FormatError("manifest: unsupported version");
    } else if (key == "q") {
      mf.q = static_cast<int>(v), have_q = true;
    } else if (key == "t") {
      mf.t = static_cast<int>(v), have_t = true;
    } else if (key == "m") {
      mf.m = static_cast<int>(v), have_m = true;
    } else if (key == "reduction_poly") {
      mf.reduction_poly = static_cast<std::uint32_t>(v), have_poly = true;
    } else if (key == "c0") {
      if (v > 0xffff) throw FormatError("manifest: c0 out of range");
      mf.c0 = static_cast<Symbol>(v), have_c0 = true;
    } else if (key == "stripe_count") {
      mf.stripe_count = static_cast<std::uint32_t>(v);
    } else if (key == "file_length") {
      mf.file_length = v;
    } else if (key.rfind("checksum.", 0) == 0) {
      int i = 0, theta = 0;
      if (std::sscanf(key.c_str(), "checksum.%d.%d", &i, &theta) != 2) {
        throw FormatError("manifest: bad checksum key '" + key + "'");
      }
      mf.checksums[{i, theta}] = static_cast<std::uint32_t>(v);
    } else {
      throw FormatError("manifest: unknown key '" + key + "'");
    }
  }
  if (!(have_q && have_t && have_m && have_poly && have_c0)) {
    throw FormatError("manifest: missing one of q, t, m, reduction_poly, c0");
  }
  return mf;
}

Manifest Manifest::Load(const std::filesystem::path& path) {
  const auto bytes = ReadFile(path);
  return Parse(std::string(bytes.begin(), bytes.end()));
}

void Manifest::Save(const std::filesystem::path& path) const {
  const std::string text = ToText();
  WriteFile(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                            text.size()));
}

CodeParams Manifest::Params() const {
  return CodeParams::Create(q, t, GaloisField(m, reduction_poly)).WithC0(c0);
}

ShardHeader Manifest::HeaderFor(const NodeIndex& node) const {
  return {q, t, m, reduction_poly, c0, node, stripe_count, file_length};
}

void Manifest::CheckHeader(const ShardHeader& h) const {
  if (h.q != q || h.t != t || h.m != m || h.reduction_poly != reduction_poly ||
      h.c0 != c0 || h.stripe_count != stripe_count ||
      h.file_length != file_length) {
    throw FormatError("shard header for node (" + std::to_string(h.node.i) +
                      "," + std::to_string(h.node.theta) +
                      ") disagrees with the manifest");
  }
}

std::uint64_t StripeCount(std::uint64_t file_length, const CodeParams& p) {
  const std::uint64_t bits_per_stripe =
      static_cast<std::uint64_t>(p.B()) *
      static_cast<std::uint64_t>(p.field().degree());
  return (file_length * 8 + bits_per_stripe - 1) / bits_per_stripe;
}

void UnpackSymbols(std::span<const std::uint8_t> bytes, int m,
                   std::uint64_t first, std::span<Symbol> out) {
  const std::uint32_t mask = (1u << m) - 1;
  std::uint64_t bit = first * static_cast<std::uint64_t>(m);
  for (Symbol& s : out) {
    const std::uint64_t byte = bit / 8;
    std::uint32_t window = 0;
    for (std::uint64_t j = 0; j < 3; ++j) {
      if (byte + j < bytes.size()) window |= std::uint32_t{bytes[byte + j]} << (8 * j);
    }
    s = static_cast<Symbol>((window >> (bit % 8)) & mask);
    bit += static_cast<std::uint64_t>(m);
  }
}

void PackSymbols(std::span<const Symbol> symbols, int m, std::uint64_t first,
                 std::span<std::uint8_t> bytes) {
  std::uint64_t bit = first * static_cast<std::uint64_t>(m);
  for (Symbol s : symbols) {
    const std::uint64_t byte = bit / 8;
    const std::uint32_t window = std::uint32_t{s} << (bit % 8);
    for (std::uint64_t j = 0; j < 3; ++j) {
      if (byte + j < bytes.size()) {
        bytes[byte + j] |= static_cast<std::uint8_t>(window >> (8 * j));
      }
    }
    bit += static_cast<std::uint64_t>(m);
  }
}

std::uint32_t Adler32(std::span<const std::uint8_t> bytes) {
  uLong a = adler32(0L, Z_NULL, 0);
  // zlib takes uInt lengths.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t len = std::min(kChunk, bytes.size() - off);
    a = adler32(a, bytes.data() + off, static_cast<uInt>(len));
  }
  return static_cast<std::uint32_t>(a);
}

std::vector<std::uint8_t> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void WriteFile(const std::filesystem::path& path,
               std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

CountingReader::CountingReader(const std::filesystem::path& path)
    : path_(path), fd_(::open(path.c_str(), O_RDONLY | O_CLOEXEC)) {
  if (fd_ < 0) {
    throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
  }
}

CountingReader::~CountingReader() {
  if (fd_ >= 0) ::close(fd_);
}

CountingReader::CountingReader(CountingReader&& o) noexcept
    : path_(std::move(o.path_)), fd_(o.fd_), bytes_read_(o.bytes_read_) {
  o.fd_ = -1;
}

void CountingReader::ReadAt(std::uint64_t offset, std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    const ssize_t r = ::pread(fd_, out.data() + done, out.size() - done,
                              static_cast<off_t>(offset + done));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) throw IoError("short read from " + path_.string());
    done += static_cast<std::size_t>(r);
  }
  bytes_read_ += out.size();
}

std::string ShardFileName(const NodeIndex& node) {
  return "node_" + std::to_string(node.i) + "_" + std::to_string(node.theta) +
         ".shard";
}

}  // namespace msr
