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

#ifndef GECX_CORPUS_H_
#define GECX_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gecx/textnorm.h"

namespace gecx {

// One `A` line of an M2 block. Token offsets index the whitespace
// tokenization of the source; a noop edit uses -1 for both.
struct GoldEdit {
  std::int64_t start_token = 0;
  std::int64_t end_token = 0;
  std::string type_tag;
  Text correction;  // empty for deletions (-NONE- in the file)
  std::size_t annotator = 0;
  std::string required = "REQUIRED";
  std::string comment = "-NONE-";

  bool is_noop() const { return start_token < 0; }
  bool operator==(const GoldEdit&) const = default;
};

struct SentencePair {
  Text source;
  Text gold;
  std::vector<GoldEdit> gold_edits;  // all annotators, file order

  bool operator==(const SentencePair&) const = default;
};

// Applies one annotator's non-noop edits to the source tokens, right to
// left. Throws FormatError for out-of-range or overlapping edits.
Text replay_edits(TextView source, const std::vector<GoldEdit>& edits,
                  std::size_t annotator);

// Gold sentences are reconstructed from `annotator`'s edits. Errors carry
// the offending line number.
std::vector<SentencePair> parse_m2(std::string_view contents,
                                   std::size_t annotator = 0);
std::string serialize_m2(const std::vector<SentencePair>& pairs);

// One `source<TAB>gold` pair per line; blank lines are skipped.
std::vector<SentencePair> parse_tsv(std::string_view contents);
std::string serialize_tsv(const std::vector<SentencePair>& pairs);

// One sentence per line; blank lines are skipped.
std::vector<Text> parse_lines(std::string_view contents);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Probabilities of each corruption, applied per word or per character.
// The defaults are generic noise levels, not tuned values.
struct CorruptionConfig {
  double substitute_char = 0.02;
  double insert_char = 0.02;
  double delete_char = 0.02;
  double swap_adjacent_chars = 0.02;
  double strip_word_diacritics = 0.05;
  double toggle_word_casing = 0.05;
  double swap_adjacent_words = 0.05;
  Text alphabet = U"abcdefghijklmnopqrstuvwxyz";
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
  // Flat `key=value` lines; `#` starts a comment line.
  static CorruptionConfig parse(std::string_view contents);
  std::string serialize() const;
};

// Lowercase character -> candidate substitutes (keyboard neighbors).
using NeighborMap = std::unordered_map<char32_t, Text>;
// Lines of `<char>\t<neighbors>`.
NeighborMap parse_neighbors(std::string_view contents);

// Samples a corrupted source for `gold` with config.seed.
SentencePair corrupt(TextView gold, const CorruptionConfig& config,
                     const NeighborMap* neighbors = nullptr);
// Sentence i uses seed `config.seed ^ i`.
std::vector<SentencePair> corrupt_all(const std::vector<Text>& golds,
                                      const CorruptionConfig& config,
                                      const NeighborMap* neighbors = nullptr);

}  // namespace gecx

#endif  // GECX_CORPUS_H_
