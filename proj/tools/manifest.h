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

#ifndef GECX_TOOLS_MANIFEST_H_
#define GECX_TOOLS_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gecx::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to reproduce one command invocation. Written next to
// each output as `<output>.manifest.json`; contains no timestamps or host
// data, so identical runs produce identical manifests.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;

  std::string to_json() const;
  void write_next_to(const std::filesystem::path& output) const;
};

std::string sha256_hex(const std::filesystem::path& path);

}  // namespace gecx::cli

#endif  // GECX_TOOLS_MANIFEST_H_
