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

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "msr/code_model.h"

namespace msr {

/// Malformed or inconsistent shard/manifest content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kShardHeaderSize = 26;
inline constexpr std::uint8_t kShardVersion = 1;
inline constexpr std::size_t kSymbolBytes = 2;

/// Fixed 26-byte little-endian shard header:
///
///   offset size field
///   0      4    magic "MSRC"
///   4      1    version (1)
///   5      1    q
///   6      1    t
///   7      1    m
///   8      2    reduction polynomial, low 16 bits (x^16 implied for m=16)
///   10     2    c0
///   12     1    node class i
///   13     1    node theta
///   14     4    stripe count
///   18     8    original file length in bytes
struct ShardHeader {
  int q = 0;
  int t = 0;
  int m = 0;
  std::uint32_t reduction_poly = 0;
  Symbol c0 = 0;
  NodeIndex node;
  std::uint32_t stripe_count = 0;
  std::uint64_t file_length = 0;

  std::array<std::uint8_t, kShardHeaderSize> Serialize() const;
  /// Throws FormatError on bad magic, version, or parameters.
  static ShardHeader Parse(std::span<const std::uint8_t> bytes);

  bool operator==(const ShardHeader&) const = default;
};

/// Plain-text key=value description of an encoded file. A manifest written
/// by `init` carries only the code parameters.
struct Manifest {
  int q = 0;
  int t = 0;
  int m = 0;
  std::uint32_t reduction_poly = 0;
  Symbol c0 = 0;
  std::uint32_t stripe_count = 0;
  std::uint64_t file_length = 0;
  /// Adler-32 of each whole shard file.
  std::map<NodeIndex, std::uint32_t> checksums;

  std::string ToText() const;
  static Manifest Parse(const std::string& text);

  static Manifest Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  /// Params with c0 applied. Throws ParamError/FieldError if invalid.
  CodeParams Params() const;
  /// Header for `node` sharing this manifest's fields.
  ShardHeader HeaderFor(const NodeIndex& node) const;
  /// Throws FormatError when `h` disagrees on any shared field.
  void CheckHeader(const ShardHeader& h) const;
};

/// Stripes needed for `file_length` bytes: each stripe carries B symbols
/// of m payload bits.
std::uint64_t StripeCount(std::uint64_t file_length, const CodeParams& p);

/// Reads symbols [first, first + out.size()) of the LSB-first m-bit symbol
/// stream over `bytes`; bits past the end read as zero.
void UnpackSymbols(std::span<const std::uint8_t> bytes, int m,
                   std::uint64_t first, std::span<Symbol> out);

/// Inverse of UnpackSymbols: ORs symbols into `bytes` (which must start
/// zeroed); bits past the end are dropped.
void PackSymbols(std::span<const Symbol> symbols, int m, std::uint64_t first,
                 std::span<std::uint8_t> bytes);

std::uint32_t Adler32(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path,
               std::span<const std::uint8_t> bytes);

/// Unbuffered positional reader that counts every byte it hands back.
class CountingReader {
 public:
  explicit CountingReader(const std::filesystem::path& path);
  ~CountingReader();
  CountingReader(const CountingReader&) = delete;
  CountingReader& operator=(const CountingReader&) = delete;
  CountingReader(CountingReader&& o) noexcept;
  CountingReader& operator=(CountingReader&&) = delete;

  /// Fills `out` from `offset`; throws IoError on a short read.
  void ReadAt(std::uint64_t offset, std::span<std::uint8_t> out);

  std::uint64_t bytes_read() const { return bytes_read_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
  std::uint64_t bytes_read_ = 0;
};

std::string ShardFileName(const NodeIndex& node);

}  // namespace msr
