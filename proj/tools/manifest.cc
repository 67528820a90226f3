// Copyright 2026 The gecx Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "manifest.h"

#include <openssl/evp.h>

#include <fstream>
#include <memory>

#include "gecx/corpus.h"
#include "gecx/error.h"
#include "json.hpp"

namespace gecx::cli {

std::string sha256_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                               EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 unavailable");
  }
  char buffer[1 << 16];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "gecx";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["args"] = args;
  j["seed"] = seed;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& path : inputs) {
    j["inputs"].push_back({{"path", path.string()}, {"sha256", sha256_hex(path)}});
  }
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& path : outputs) j["outputs"].push_back(path.string());
  return j.dump(2) + "\n";
}

void RunManifest::write_next_to(const std::filesystem::path& output) const {
  write_file(output.string() + ".manifest.json", to_json());
}

}  // namespace gecx::cli
