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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msr/code_model.h"
#include "msr/shard.h"

namespace msr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitVerification = 2,
  kExitIo = 3,
};

/// Bad arguments or parameters.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data or code failed a consistency check.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maps an in-flight exception to the process exit status.
int ExitCodeFor(const std::exception& e);

inline constexpr const char* kManifestName = "manifest.txt";

struct InitResult {
  Manifest manifest;
  std::filesystem::path path;
  /// Field degrees tried before c0 was found, in order.
  std::vector<int> degrees_tried;
};

/// Finds c0 for (q, t) and writes a parameter-only manifest to
/// out_dir/manifest.txt. Without m, starts at the smallest field holding n
/// evaluation points and grows m until the search succeeds.
InitResult RunInit(int q, int t, std::optional<int> m,
                   const std::filesystem::path& out_dir);

struct EncodeResult {
  Manifest manifest;
  std::vector<std::filesystem::path> shards;
};

/// Stripes `input` and writes n shards plus an updated manifest into
/// out_dir.
EncodeResult RunEncode(const std::filesystem::path& manifest_path,
                       const std::filesystem::path& input,
                       const std::filesystem::path& out_dir);

/// Rebuilds the original file from exactly k shards.
void RunDecode(const std::filesystem::path& manifest_path,
               const std::vector<std::filesystem::path>& shards,
               const std::filesystem::path& output);

struct HelperRead {
  NodeIndex helper;
  std::uint64_t bytes_read = 0;
};

struct RepairStats {
  NodeIndex failed;
  std::vector<HelperRead> helpers;
  std::uint64_t bytes_read = 0;
  /// Bytes a full-file download of k shards would cost.
  std::uint64_t naive_bytes = 0;
  bool checksum_matches = false;
};

/// Rebuilds `failed` from d = n-1 helper shards, reading only header and
/// Gamma-row symbols from each.
RepairStats RunRepair(const std::filesystem::path& manifest_path,
                      const NodeIndex& failed,
                      const std::vector<std::filesystem::path>& helpers,
                      const std::filesystem::path& output);

struct VerifyResult {
  std::uint64_t subsets_checked = 0;
  bool ranks_ok = false;
  /// c0 equals the smallest valid coefficient for this field.
  bool c0_canonical = false;
  std::uint64_t decodes = 0;
  std::uint64_t decode_failures = 0;

  bool ok() const { return ranks_ok && c0_canonical && decode_failures == 0; }
};

VerifyResult RunVerify(const std::filesystem::path& manifest_path, int trials);

/// Parameter table for (q, t).
std::string StatsTable(const CodeParams& p);

NodeIndex ParseNode(const std::string& text);

}  // namespace msr::cli
