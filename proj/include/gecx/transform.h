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

// Transformation dictionaries: induction from a parallel corpus, encoding of
// gold corrections as per-unit labels, and decoding labels back to text, for
// character or string transformations applied to subwords or whole words.

#ifndef GECX_TRANSFORM_H_
#define GECX_TRANSFORM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gecx/align.h"
#include "gecx/editscript.h"
#include "gecx/textnorm.h"
#include "gecx/tokenizer.h"

namespace gecx {

struct GranularityMode {
  enum class Grain { kChar, kString };
  enum class Unit { kSubword, kWord };
  Grain grain = Grain::kChar;
  Unit unit = Unit::kSubword;

  bool operator==(const GranularityMode&) const = default;
};

// "char-at-subword", "char-at-word", "string-at-subword", "string-at-word".
std::string to_string(GranularityMode mode);
GranularityMode parse_granularity(std::string_view name);
std::array<GranularityMode, 4> all_granularities();

using LabelId = std::uint32_t;
inline constexpr LabelId kUncorrectableId = 0;
inline constexpr LabelId kKeepId = 1;
inline constexpr std::size_t kNoThreshold =
    std::numeric_limits<std::size_t>::max();

class TransformationDictionary {
 public:
  struct Entry {
    Transformation transformation;
    std::string serialized;
    std::uint64_t count = 0;
  };

  // Keeps transformations seen at least `min_count` times and orders them by
  // descending count, then serialized form. UNCORRECTABLE and KEEP always
  // take ids 0 and 1.
  static TransformationDictionary from_counts(
      GranularityMode mode, CasingMode casing, std::size_t min_count,
      const std::unordered_map<std::string, std::uint64_t>& counts);

  GranularityMode mode() const { return mode_; }
  CasingMode casing() const { return casing_; }
  std::size_t min_count() const { return min_count_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& entry(LabelId id) const { return entries_.at(id); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::optional<LabelId> find(std::string_view serialized) const;

  // The two special entries plus the `max_entries` most frequent others.
  TransformationDictionary truncated(std::size_t max_entries) const;

  // Header `mode=<m> casing=<c> min_count=<n>`, then `<id>\t<count>\t<t>`.
  std::string serialize() const;
  static TransformationDictionary parse(std::string_view utf8_contents);
  void save(const std::filesystem::path& path) const;
  static TransformationDictionary load(const std::filesystem::path& path);

 private:
  TransformationDictionary() = default;
  void index();

  GranularityMode mode_;
  CasingMode casing_ = CasingMode::kCased;
  std::size_t min_count_ = 1;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, LabelId> ids_;
};

// A unit (subword or word) paired with the gold text aligned to it.
struct UnitPair {
  Text unit;
  Text gold;
  Text surface;  // source text the unit was produced from
};

struct SourceUnit {
  Text text;
  Text surface;
};

// A tokenized source aligned to its gold sentence. Gold spans include the
// leading space of word-initial pieces, so the gold sentence is aligned
// with a single space prepended.
struct AlignedSentence {
  SubwordSequence subwords;
  CasingMode casing = CasingMode::kCased;
  Text gold;
  std::optional<Alignment> alignment;  // empty when alignment failed
  std::string diagnostic;
};

AlignedSentence prepare(TextView source, TextView gold,
                        const Tokenizer& tokenizer);

std::vector<SourceUnit> source_units(const SubwordSequence& seq,
                               GranularityMode::Unit unit);
// Requires a successful alignment.
std::vector<UnitPair> unit_pairs(const AlignedSentence& sentence,
                                 GranularityMode::Unit unit);

Transformation build_transformation(TextView unit, TextView gold,
                                    GranularityMode mode, CasingMode casing);

struct InductionReport {
  std::size_t authentic_pairs = 0;
  std::size_t synthetic_pairs = 0;
  std::size_t skipped_pairs = 0;
  std::vector<std::string> diagnostics;
};

// Counts the mode's transformation for every unit of the authentic pairs
// and of the first `synthetic_limit` synthetic pairs, then thresholds.
// Pairs that cannot be aligned are skipped and reported.
TransformationDictionary induce(const std::vector<AlignedSentence>& authentic,
                                const std::vector<AlignedSentence>& synthetic,
                                GranularityMode mode, std::size_t min_count,
                                std::size_t synthetic_limit,
                                InductionReport* report = nullptr);

struct LabeledSentence {
  std::vector<Text> units;
  std::vector<LabelId> labels;
};

// Direct lookup of the built transformation, then a search over all entries
// in seeded random order for one producing the gold span, then UNCORRECTABLE.
LabeledSentence encode(const AlignedSentence& sentence,
                       const TransformationDictionary& dict,
                       std::uint64_t seed);
LabeledSentence encode(TextView source, TextView gold,
                       const Tokenizer& tokenizer,
                       const TransformationDictionary& dict,
                       std::uint64_t seed);

// Applies one label per unit. UNCORRECTABLE and inapplicable labels keep the
// unit's source text. Throws std::out_of_range for unknown ids and
// std::invalid_argument when the label count does not match the units.
Text apply_labels(const std::vector<SourceUnit>& units,
                  const std::vector<LabelId>& labels,
                  const TransformationDictionary& dict);
Text apply_labels(TextView source, const std::vector<LabelId>& labels,
                  const Tokenizer& tokenizer,
                  const TransformationDictionary& dict);

}  // namespace gecx

#endif  // GECX_TRANSFORM_H_
