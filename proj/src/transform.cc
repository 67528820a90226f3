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

#include "gecx/transform.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gecx/error.h"
#include "gecx/parallel.h"
#include "gecx/rng.h"

namespace gecx {
namespace {

std::size_t parse_size(std::string_view text, std::string_view what,
                       std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("invalid " + std::string(what) + " '" +
                          std::string(text) + "'",
                      line);
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string to_string(GranularityMode mode) {
  std::string out = mode.grain == GranularityMode::Grain::kChar ? "char" : "string";
  out += mode.unit == GranularityMode::Unit::kSubword ? "-at-subword" : "-at-word";
  return out;
}

GranularityMode parse_granularity(std::string_view name) {
  for (GranularityMode mode : all_granularities()) {
    if (to_string(mode) == name) return mode;
  }
  throw FormatError("unknown transformation mode '" + std::string(name) + "'");
}

std::array<GranularityMode, 4> all_granularities() {
  using G = GranularityMode::Grain;
  using U = GranularityMode::Unit;
  return {GranularityMode{G::kChar, U::kSubword},
          GranularityMode{G::kChar, U::kWord},
          GranularityMode{G::kString, U::kSubword},
          GranularityMode{G::kString, U::kWord}};
}

TransformationDictionary TransformationDictionary::from_counts(
    GranularityMode mode, CasingMode casing, std::size_t min_count,
    const std::unordered_map<std::string, std::uint64_t>& counts) {
  if (min_count == 0) throw std::invalid_argument("min_count must be >= 1");
  TransformationDictionary dict;
  dict.mode_ = mode;
  dict.casing_ = casing;
  dict.min_count_ = min_count;

  const std::string uncorrectable = gecx::serialize(Uncorrectable{});
  const std::string keep = gecx::serialize(StringTransformation{});
  auto count_of = [&](const std::string& key) -> std::uint64_t {
    auto it = counts.find(key);
    return it == counts.end() ? 0 : it->second;
  };
  dict.entries_.push_back({Uncorrectable{}, uncorrectable, count_of(uncorrectable)});
  dict.entries_.push_back({StringTransformation{}, keep, count_of(keep)});

  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (const auto& [serialized, count] : counts) {
    if (serialized == uncorrectable || serialized == keep) continue;
    if (count < min_count) continue;
    kept.emplace_back(serialized, count);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (auto& [serialized, count] : kept) {
    dict.entries_.push_back(
        {parse_transformation(serialized), std::move(serialized), count});
  }
  dict.index();
  return dict;
}

void TransformationDictionary::index() {
  ids_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    ids_.emplace(entries_[i].serialized, static_cast<LabelId>(i));
  }
}

std::optional<LabelId> TransformationDictionary::find(
    std::string_view serialized) const {
  auto it = ids_.find(std::string(serialized));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TransformationDictionary TransformationDictionary::truncated(
    std::size_t max_entries) const {
  TransformationDictionary dict = *this;
  if (dict.entries_.size() > max_entries + 2) {
    dict.entries_.resize(max_entries + 2);
    dict.index();
  }
  return dict;
}

std::string TransformationDictionary::serialize() const {
  std::string out = "mode=" + to_string(mode_) + " casing=" +
                    std::string(to_string(casing_)) +
                    " min_count=" + std::to_string(min_count_) + "\n";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out += std::to_string(i);
    out += '\t';
    out += std::to_string(entries_[i].count);
    out += '\t';
    out += entries_[i].serialized;
    out += '\n';
  }
  return out;
}

TransformationDictionary TransformationDictionary::parse(
    std::string_view utf8_contents) {
  std::vector<std::string_view> lines = split(utf8_contents, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw FormatError("dictionary file is empty");

  TransformationDictionary dict;
  const std::vector<std::string_view> header = split(lines[0], ' ');
  if (header.size() != 3 || header[0].substr(0, 5) != "mode=" ||
      header[1].substr(0, 7) != "casing=" ||
      header[2].substr(0, 10) != "min_count=") {
    throw FormatError("malformed dictionary header", 1);
  }
  dict.mode_ = parse_granularity(header[0].substr(5));
  dict.casing_ = parse_casing(header[1].substr(7));
  dict.min_count_ = parse_size(header[2].substr(10), "min_count", 1);
  if (dict.min_count_ == 0) throw FormatError("min_count must be >= 1", 1);

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::vector<std::string_view> fields = split(lines[i], '\t');
    if (fields.size() != 3) {
      throw FormatError("expected <id>\\t<count>\\t<transformation>", line_no);
    }
    if (parse_size(fields[0], "id", line_no) != i - 1) {
      throw FormatError("dictionary ids must be consecutive from 0", line_no);
    }
    Entry entry;
    entry.count = parse_size(fields[1], "count", line_no);
    try {
      entry.transformation = parse_transformation(fields[2]);
    } catch (const FormatError& e) {
      throw FormatError(e.what(), line_no);
    }
    entry.serialized = std::string(fields[2]);
    dict.entries_.push_back(std::move(entry));
  }
  if (dict.entries_.size() < 2 ||
      !std::holds_alternative<Uncorrectable>(dict.entries_[0].transformation) ||
      !is_keep(dict.entries_[1].transformation)) {
    throw FormatError("dictionary must start with UNCORRECTABLE and KEEP");
  }
  dict.index();
  if (dict.ids_.size() != dict.entries_.size()) {
    throw FormatError("duplicate dictionary entries");
  }
  return dict;
}

void TransformationDictionary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize();
  if (!out) throw Error("failed writing " + path.string());
}

TransformationDictionary TransformationDictionary::load(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open dictionary " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

AlignedSentence prepare(TextView source, TextView gold,
                        const Tokenizer& tokenizer) {
  AlignedSentence sentence;
  sentence.subwords = tokenizer.tokenize(source);
  sentence.casing = tokenizer.casing();
  sentence.gold = join(split_whitespace(nfc(gold)), U" ");
  try {
    sentence.alignment = align(sentence.subwords, U" " + sentence.gold);
  } catch (const AlignmentError& e) {
    sentence.diagnostic = e.what();
  }
  return sentence;
}

std::vector<SourceUnit> source_units(const SubwordSequence& seq,
                                     GranularityMode::Unit unit) {
  std::vector<SourceUnit> units;
  if (unit == GranularityMode::Unit::kSubword) {
    units.reserve(seq.size());
    for (const Subword& s : seq.subwords) units.push_back({s.text, s.surface});
  } else {
    for (WordGroup& w : group_words(seq)) {
      units.push_back({std::move(w.text), std::move(w.surface)});
    }
  }
  return units;
}

std::vector<UnitPair> unit_pairs(const AlignedSentence& sentence,
                                 GranularityMode::Unit unit) {
  if (!sentence.alignment) {
    throw std::invalid_argument("unit_pairs needs an aligned sentence");
  }
  const std::vector<Span>& spans = sentence.alignment->spans;
  std::vector<UnitPair> pairs;
  if (unit == GranularityMode::Unit::kSubword) {
    pairs.reserve(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) {
      const Subword& s = sentence.subwords.subwords[i];
      pairs.push_back({s.text, spans[i].text, s.surface});
    }
    return pairs;
  }
  for (const WordGroup& w : group_words(sentence.subwords)) {
    UnitPair pair{w.text, Text(), w.surface};
    for (std::size_t i = w.begin; i < w.end; ++i) pair.gold += spans[i].text;
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

Transformation build_transformation(TextView unit, TextView gold,
                                    GranularityMode mode, CasingMode casing) {
  if (mode.grain == GranularityMode::Grain::kString) {
    return build_string_transformation(unit, gold);
  }
  return make_transformation(build_char_transformation(unit, gold, casing));
}

TransformationDictionary induce(const std::vector<AlignedSentence>& authentic,
                                const std::vector<AlignedSentence>& synthetic,
                                GranularityMode mode, std::size_t min_count,
                                std::size_t synthetic_limit,
                                InductionReport* report) {
  if (authentic.empty()) throw std::invalid_argument("no authentic pairs");
  const CasingMode casing = authentic.front().casing;
  const std::size_t synthetic_used = std::min(synthetic_limit, synthetic.size());
  const std::size_t total = authentic.size() + synthetic_used;
  auto sentence_at = [&](std::size_t i) -> const AlignedSentence& {
    return i < authentic.size() ? authentic[i] : synthetic[i - authentic.size()];
  };

  std::vector<std::vector<std::string>> labels(total);
  parallel_for(total, [&](std::size_t i) {
    const AlignedSentence& sentence = sentence_at(i);
    if (sentence.casing != casing) {
      throw std::invalid_argument("mixed casing modes in induction input");
    }
    if (!sentence.alignment) return;
    for (const UnitPair& pair : unit_pairs(sentence, mode.unit)) {
      labels[i].push_back(
          gecx::serialize(build_transformation(pair.unit, pair.gold, mode, casing)));
    }
  });

  std::unordered_map<std::string, std::uint64_t> counts;
  InductionReport local;
  local.authentic_pairs = authentic.size();
  local.synthetic_pairs = synthetic_used;
  for (std::size_t i = 0; i < total; ++i) {
    const AlignedSentence& sentence = sentence_at(i);
    if (!sentence.alignment) {
      ++local.skipped_pairs;
      local.diagnostics.push_back("pair " + std::to_string(i) + ": " +
                                  sentence.diagnostic);
      continue;
    }
    for (std::string& label : labels[i]) ++counts[std::move(label)];
  }
  if (report != nullptr) *report = std::move(local);
  return TransformationDictionary::from_counts(mode, casing, min_count, counts);
}

LabeledSentence encode(const AlignedSentence& sentence,
                       const TransformationDictionary& dict,
                       std::uint64_t seed) {
  if (sentence.casing != dict.casing()) {
    throw std::invalid_argument("tokenizer casing differs from dictionary");
  }
  const GranularityMode mode = dict.mode();
  LabeledSentence labeled;
  if (!sentence.alignment) {
    for (SourceUnit& u : source_units(sentence.subwords, mode.unit)) {
      labeled.units.push_back(std::move(u.text));
      labeled.labels.push_back(kUncorrectableId);
    }
    return labeled;
  }

  Rng rng(seed);
  std::vector<LabelId> order;
  for (const UnitPair& pair : unit_pairs(sentence, mode.unit)) {
    labeled.units.push_back(pair.unit);
    const std::string built =
        gecx::serialize(build_transformation(pair.unit, pair.gold, mode, dict.casing()));
    if (std::optional<LabelId> id = dict.find(built)) {
      labeled.labels.push_back(*id);
      continue;
    }
    order.resize(dict.size() - 1);
    for (std::size_t k = 0; k < order.size(); ++k) {
      order[k] = static_cast<LabelId>(k + 1);
    }
    rng.shuffle(order);
    LabelId chosen = kUncorrectableId;
    for (LabelId id : order) {
      std::optional<Text> out =
          apply_transformation(dict.entry(id).transformation, pair.unit);
      if (out && *out == pair.gold) {
        chosen = id;
        break;
      }
    }
    labeled.labels.push_back(chosen);
  }
  return labeled;
}

LabeledSentence encode(TextView source, TextView gold,
                       const Tokenizer& tokenizer,
                       const TransformationDictionary& dict,
                       std::uint64_t seed) {
  return encode(prepare(source, gold, tokenizer), dict, seed);
}

Text apply_labels(const std::vector<SourceUnit>& units,
                  const std::vector<LabelId>& labels,
                  const TransformationDictionary& dict) {
  if (units.size() != labels.size()) {
    throw std::invalid_argument("got " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(units.size()) +
                                " units");
  }
  Text out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (labels[i] >= dict.size()) {
      throw std::out_of_range("label id " + std::to_string(labels[i]) +
                              " not in dictionary");
    }
    std::optional<Text> corrected =
        apply_transformation(dict.entry(labels[i]).transformation, units[i].text);
    out += corrected ? *corrected : units[i].surface;
  }
  return Text(trim(out));
}

Text apply_labels(TextView source, const std::vector<LabelId>& labels,
                  const Tokenizer& tokenizer,
                  const TransformationDictionary& dict) {
  if (tokenizer.casing() != dict.casing()) {
    throw std::invalid_argument("tokenizer casing differs from dictionary");
  }
  return apply_labels(source_units(tokenizer.tokenize(source), dict.mode().unit),
                      labels, dict);
}

}  // namespace gecx
