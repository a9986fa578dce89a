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

// msrcode: encode files into MSR-coded shards, decode from any k, and
// repair a single shard by reading only the helper-row symbols.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msr/code_model.h"
#include "msr/commands.h"

namespace fs = std::filesystem;
using namespace msr;
using namespace msr::cli;

namespace {

fs::path ManifestPath(const std::string& manifest, const std::string& out_dir) {
  return manifest.empty() ? fs::path(out_dir) / kManifestName : fs::path(manifest);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MSR regenerating-code shard tool"};
  app.require_subcommand(1);

  int q = 0;
  int t = 0;
  std::optional<int> m;
  int trials = 10;
  std::string out_dir = ".";
  std::string manifest;
  std::string node_text;
  std::string input;
  std::string output;
  std::vector<std::string> shards;

  auto* init = app.add_subcommand("init", "search c0 and write a parameter manifest");
  init->add_option("--q", q, "index modulus (q >= 2)")->required();
  init->add_option("--t", t, "rate parameter (t >= 2)")->required();
  init->add_option("--m", m, "field degree; default grows from the smallest valid one");
  init->add_option("--out-dir", out_dir, "directory for manifest.txt");

  auto* encode = app.add_subcommand("encode", "split a file into n shards");
  encode->add_option("input", input, "file to encode")->required();
  encode->add_option("--manifest", manifest, "parameter manifest (default <out-dir>/manifest.txt)");
  encode->add_option("--out-dir", out_dir, "directory for shards and manifest");

  auto* decode = app.add_subcommand("decode", "rebuild a file from k shards");
  decode->add_option("shards", shards, "exactly k shard files")->required();
  decode->add_option("--manifest", manifest, "manifest written by encode");
  decode->add_option("--out-dir", out_dir, "directory holding manifest.txt");
  decode->add_option("--output,-o", output, "decoded file")->required();

  auto* repair = app.add_subcommand("repair", "rebuild one shard from the n-1 others");
  repair->add_option("shards", shards, "exactly n-1 helper shard files")->required();
  repair->add_option("--node", node_text, "failed node as i,theta")->required();
  repair->add_option("--manifest", manifest, "manifest written by encode");
  repair->add_option("--out-dir", out_dir, "directory holding manifest.txt");
  repair->add_option("--output,-o", output, "rebuilt shard (default <out-dir>/node_i_theta.shard)");

  auto* verify = app.add_subcommand("verify", "check the MDS property of a manifest's code");
  verify->add_option("--manifest", manifest, "manifest to check");
  verify->add_option("--out-dir", out_dir, "directory holding manifest.txt");
  verify->add_option("--trials", trials, "random messages per k-subset")->check(CLI::NonNegativeNumber);

  auto* stats = app.add_subcommand("stats", "print code parameters and repair bandwidth");
  stats->add_option("--q", q, "index modulus");
  stats->add_option("--t", t, "rate parameter");
  stats->add_option("--m", m, "field degree");
  stats->add_option("--manifest", manifest, "read parameters from a manifest instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*init) {
      const InitResult r = RunInit(q, t, m, out_dir);
      std::cout << "m=" << r.manifest.m << " c0=" << r.manifest.c0
                << " (field degrees tried:";
      for (int d : r.degrees_tried) std::cout << ' ' << d;
      std::cout << ")\nwrote " << r.path.string() << "\n";
    } else if (*encode) {
      const EncodeResult r = RunEncode(ManifestPath(manifest, out_dir), input, out_dir);
      std::cout << "encoded " << r.manifest.file_length << " bytes into "
                << r.manifest.stripe_count << " stripes across " << r.shards.size()
                << " shards in " << out_dir << "\n";
    } else if (*decode) {
      std::vector<fs::path> paths(shards.begin(), shards.end());
      RunDecode(ManifestPath(manifest, out_dir), paths, output);
      std::cout << "wrote " << output << "\n";
    } else if (*repair) {
      const NodeIndex failed = ParseNode(node_text);
      if (output.empty()) output = (fs::path(out_dir) / ShardFileName(failed)).string();
      std::vector<fs::path> paths(shards.begin(), shards.end());
      const RepairStats r = RunRepair(ManifestPath(manifest, out_dir), failed, paths, output);
      for (const HelperRead& h : r.helpers) {
        std::cout << "  helper (" << h.helper.i << "," << h.helper.theta
                  << ") read " << h.bytes_read << " bytes\n";
      }
      std::cout << "repair read " << r.bytes_read << " bytes; naive k-shard download "
                << r.naive_bytes << " bytes ("
                << static_cast<double>(r.bytes_read) / static_cast<double>(r.naive_bytes)
                << ")\nwrote " << output << "\n";
      if (!r.checksum_matches) {
        std::cerr << "error: rebuilt shard does not match the manifest checksum\n";
        return kExitVerification;
      }
    } else if (*verify) {
      const VerifyResult r = RunVerify(ManifestPath(manifest, out_dir), trials);
      std::cout << "thick-subset ranks: " << (r.ranks_ok ? "ok" : "DEFICIENT")
                << " (" << r.subsets_checked << " subsets)\n"
                << "c0 canonical: " << (r.c0_canonical ? "yes" : "NO") << "\n"
                << "decodes: " << r.decodes << ", failures: " << r.decode_failures << "\n";
      if (!r.ok()) return kExitVerification;
    } else if (*stats) {
      if (!manifest.empty()) {
        std::cout << StatsTable(Manifest::Load(manifest).Params());
      } else {
        if (q == 0 || t == 0) throw UsageError("stats needs --q and --t, or --manifest");
        int deg = m.value_or(0);
        if (deg == 0) {
          deg = 1;
          while (deg < kMaxFieldDegree && (1L << deg) - 1 < static_cast<long>(q) * t) ++deg;
        }
        std::cout << StatsTable(CodeParams::Create(q, t, deg));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitOk;
}
