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

#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <set>

#include "gecx/corpus.h"
#include "gecx/error.h"

namespace gecx {
namespace {

Tokenizer example_tokenizer(CasingMode casing) {
  auto vocab = std::make_shared<const Vocabulary>(
      std::vector<Text>{U" gathe", U"rin", U" lea", U"fes", U" the", U"s"});
  return Tokenizer(VocabGreedy{vocab}, casing);
}

std::vector<std::string> labels_as_text(const LabeledSentence& s,
                                        const TransformationDictionary& dict) {
  std::vector<std::string> out;
  for (LabelId id : s.labels) out.push_back(dict.entry(id).serialized);
  return out;
}

std::set<std::string> entry_set(const TransformationDictionary& dict) {
  std::set<std::string> out;
  for (const auto& e : dict.entries()) out.insert(e.serialized);
  return out;
}

TransformationDictionary induce_from(const std::vector<SentencePair>& pairs,
                                     const Tokenizer& tok, GranularityMode mode,
                                     std::size_t min_count) {
  std::vector<AlignedSentence> aligned;
  for (const auto& p : pairs) aligned.push_back(prepare(p.source, p.gold, tok));
  return induce(aligned, {}, mode, min_count, 0);
}

const std::vector<SentencePair> kExample{{U"gatherin leafes", U"Gathering leaves", {}}};

TEST(Granularity, NamesRoundTrip) {
  for (GranularityMode m : all_granularities()) {
    EXPECT_EQ(parse_granularity(to_string(m)), m);
  }
  EXPECT_EQ(to_string(GranularityMode{}), "char-at-subword");
  EXPECT_THROW(parse_granularity("char"), FormatError);
}

TEST(Induce, WorkedExampleAllFourRows) {
  const Tokenizer tok = example_tokenizer(CasingMode::kUncased);
  const AlignedSentence aligned = prepare(kExample[0].source, kExample[0].gold, tok);
  ASSERT_TRUE(aligned.alignment.has_value());
  auto row = [&](const char* mode) {
    const GranularityMode m = parse_granularity(mode);
    std::vector<std::string> out;
    for (const UnitPair& p : unit_pairs(aligned, m.unit)) {
      out.push_back(serialize(build_transformation(p.unit, p.gold, m, CasingMode::kUncased)));
    }
    return out;
  };
  EXPECT_EQ(row("char-at-subword"),
            (std::vector<std::string>{"CHAR upc@s2", "CHAR ins@e1=g", "KEEP",
                                      "CHAR rep@s1=v"}));
  EXPECT_EQ(row("char-at-word"),
            (std::vector<std::string>{"CHAR ins@e1=g;upc@s2", "CHAR rep@e3=v"}));
  EXPECT_EQ(row("string-at-subword"),
            (std::vector<std::string>{"REPLACE %20Gathe", "APPEND g", "KEEP",
                                      "REPLACE ves"}));
  EXPECT_EQ(row("string-at-word"),
            (std::vector<std::string>{"REPLACE %20Gathering", "REPLACE %20leaves"}));
}

TEST(Induce, WorkedExampleDictionary) {
  const Tokenizer tok = example_tokenizer(CasingMode::kUncased);
  const auto dict = induce_from(kExample, tok, GranularityMode{}, 1);
  EXPECT_EQ(entry_set(dict),
            (std::set<std::string>{"UNCORRECTABLE", "KEEP", "CHAR upc@s2",
                                   "CHAR ins@e1=g", "CHAR rep@s1=v"}));
  EXPECT_EQ(dict.entry(kUncorrectableId).serialized, "UNCORRECTABLE");
  EXPECT_EQ(dict.entry(kKeepId).serialized, "KEEP");
}

TEST(Induce, HugeThresholdLeavesOnlySpecials) {
  const Tokenizer tok = example_tokenizer(CasingMode::kCased);
  EXPECT_EQ(induce_from(kExample, tok, GranularityMode{}, kNoThreshold).size(), 2u);
}

TEST(Induce, ThresholdCountsOccurrences) {
  const Tokenizer tok = example_tokenizer(CasingMode::kCased);
  const auto once = induce_from(kExample, tok, GranularityMode{}, 1);
  const auto thrice = induce_from({kExample[0], kExample[0], kExample[0]}, tok,
                                  GranularityMode{}, 3);
  EXPECT_EQ(entry_set(once), entry_set(thrice));
  for (const auto& e : thrice.entries()) {
    if (e.serialized != "UNCORRECTABLE") EXPECT_EQ(e.count, 3u) << e.serialized;
  }
}

TEST(Induce, ThresholdsAreMonotone) {
  const Tokenizer tok(CharChunks{2}, CasingMode::kCased);
  CorruptionConfig config;
  config.seed = 4;
  std::vector<Text> golds;
  for (int i = 0; i < 60; ++i) {
    golds.push_back(i % 2 ? U"The dogs were walking home" : U"Cats like the warm sun");
  }
  const auto pairs = corrupt_all(golds, config);
  for (GranularityMode m : all_granularities()) {
    std::set<std::string> previous = entry_set(induce_from(pairs, tok, m, 1));
    for (std::size_t k = 2; k <= 4; ++k) {
      const std::set<std::string> current = entry_set(induce_from(pairs, tok, m, k));
      EXPECT_TRUE(std::includes(previous.begin(), previous.end(), current.begin(),
                                current.end()));
      previous = current;
    }
  }
}

TEST(Induce, WordModesAgreeUnderWholeWordTokenizer) {
  const Tokenizer tok(WholeWords{}, CasingMode::kCased);
  const std::vector<SentencePair> pairs{{U"he go home", U"He goes home", {}},
                                        {U"teh cat", U"the cats", {}}};
  for (auto grain : {GranularityMode::Grain::kChar, GranularityMode::Grain::kString}) {
    const auto sub = induce_from(pairs, tok, {grain, GranularityMode::Unit::kSubword}, 1);
    const auto word = induce_from(pairs, tok, {grain, GranularityMode::Unit::kWord}, 1);
    EXPECT_EQ(entry_set(sub), entry_set(word));
  }
}

TEST(Induce, SyntheticLimitCapsPooledPairs) {
  const Tokenizer tok = example_tokenizer(CasingMode::kCased);
  std::vector<AlignedSentence> synthetic;
  for (int i = 0; i < 5; ++i) synthetic.push_back(prepare(U"the cat", U"the cats", tok));
  const AlignedSentence authentic = prepare(U"the cat", U"the cat", tok);
  InductionReport report;
  const auto dict = induce({authentic}, synthetic, GranularityMode{}, 3, 2, &report);
  EXPECT_EQ(report.synthetic_pairs, 2u);
  EXPECT_EQ(dict.size(), 2u);
  EXPECT_EQ(induce({authentic}, synthetic, GranularityMode{}, 3, 3).size(), 3u);
}

TEST(Induce, SkipsUnalignablePairs) {
  const Tokenizer tok(WholeWords{}, CasingMode::kCased);
  const AlignedSentence bad = prepare(U"a", Text(60, U'x'), tok);
  EXPECT_FALSE(bad.alignment.has_value());
  EXPECT_FALSE(bad.diagnostic.empty());
  InductionReport report;
  induce({bad, prepare(U"a", U"b", tok)}, {}, GranularityMode{}, 1, 0, &report);
  EXPECT_EQ(report.skipped_pairs, 1u);
}

TEST(Dictionary, OrdersByCountThenForm) {
  const auto dict = TransformationDictionary::from_counts(
      GranularityMode{}, CasingMode::kCased, 1,
      {{"APPEND s", 5}, {"APPEND e", 5}, {"CHAR upc@s2", 9}, {"KEEP", 100}});
  ASSERT_EQ(dict.size(), 5u);
  EXPECT_EQ(dict.entry(2).serialized, "CHAR upc@s2");
  EXPECT_EQ(dict.entry(3).serialized, "APPEND e");
  EXPECT_EQ(dict.entry(4).serialized, "APPEND s");
  EXPECT_EQ(dict.entry(kKeepId).count, 100u);
  EXPECT_EQ(dict.find("APPEND s"), LabelId{4});
  EXPECT_EQ(dict.find("APPEND x"), std::nullopt);
  const auto top = dict.truncated(1);
  EXPECT_EQ(top.size(), 3u);
  EXPECT_EQ(top.entry(2).serialized, "CHAR upc@s2");
}

TEST(Dictionary, FileFormatRoundTrips) {
  const auto dict = TransformationDictionary::from_counts(
      parse_granularity("string-at-word"), CasingMode::kUncased, 2,
      {{"REPLACE %20the", 4}, {"APPEND %3B", 2}, {"PREPEND x", 1}});
  const std::string text = dict.serialize();
  EXPECT_EQ(text,
            "mode=string-at-word casing=uncased min_count=2\n"
            "0\t0\tUNCORRECTABLE\n"
            "1\t0\tKEEP\n"
            "2\t4\tREPLACE %20the\n"
            "3\t2\tAPPEND %3B\n");
}

TEST(Dictionary, ParseIsStrict) {
  const std::string good =
      "mode=char-at-subword casing=cased min_count=1\n0\t0\tUNCORRECTABLE\n1\t3\tKEEP\n"
      "2\t1\tCHAR upc@s2\n";
  const auto dict = TransformationDictionary::parse(good);
  EXPECT_EQ(dict.serialize(), good);
  for (const std::string& bad : {
           std::string("mode=char casing=cased min_count=1\n0\t0\tUNCORRECTABLE\n1\t0\tKEEP\n"),
           std::string("mode=char-at-subword casing=cased min_count=1\n0\t0\tKEEP\n"),
           std::string("mode=char-at-subword casing=cased min_count=1\n0\t0\tUNCORRECTABLE\n"
                       "1\t0\tKEEP\n3\t1\tAPPEND s\n"),
           std::string("mode=char-at-subword casing=cased min_count=1\n0\t0\tUNCORRECTABLE\n"
                       "1\t0\tKEEP\n2\t1\tAPPEND s\n3\t1\tAPPEND s\n")}) {
    EXPECT_THROW(TransformationDictionary::parse(bad), FormatError);
  }
}

TEST(Encode, WorkedExample) {
  const Tokenizer tok = example_tokenizer(CasingMode::kUncased);
  const auto dict = induce_from(kExample, tok, GranularityMode{}, 1);
  const LabeledSentence s = encode(kExample[0].source, kExample[0].gold, tok, dict, 0);
  EXPECT_EQ(s.units, (std::vector<Text>{U" gathe", U"rin", U" lea", U"fes"}));
  EXPECT_EQ(labels_as_text(s, dict),
            (std::vector<std::string>{"CHAR upc@s2", "CHAR ins@e1=g", "KEEP",
                                      "CHAR rep@s1=v"}));
  EXPECT_EQ(apply_labels(kExample[0].source, s.labels, tok, dict), U"Gathering leaves");
}

TEST(Encode, IdentityIsAllKeep) {
  const Tokenizer tok = example_tokenizer(CasingMode::kCased);
  const auto dict = induce_from(kExample, tok, GranularityMode{}, 1);
  const LabeledSentence s = encode(U"the leafes", U"the leafes", tok, dict, 1);
  for (LabelId id : s.labels) EXPECT_EQ(id, kKeepId);
}

TEST(Encode, FallsBackToUncorrectable) {
  const Tokenizer tok(WholeWords{}, CasingMode::kCased);
  const auto dict = induce_from(kExample, tok, GranularityMode{}, 1);
  const LabeledSentence s = encode(U"ab", U"zq", tok, dict, 0);
  EXPECT_EQ(s.labels, std::vector<LabelId>{kUncorrectableId});
  EXPECT_EQ(apply_labels(U"ab", s.labels, tok, dict), U"ab");
}

TEST(Encode, RandomSearchFindsEquivalentRule) {
  // The direct rule for "cat" -> "cats" is ins@e1=s; the dictionary only
  // knows APPEND-equivalent behavior through a replace-at-end rule.
  const Tokenizer tok(WholeWords{}, CasingMode::kCased);
  const auto dict = TransformationDictionary::from_counts(
      GranularityMode{}, CasingMode::kCased, 1, {{"CHAR rep@e1=ts", 1}});
  const LabeledSentence s = encode(U"cat", U"cats", tok, dict, 0);
  EXPECT_EQ(labels_as_text(s, dict), std::vector<std::string>{"CHAR rep@e1=ts"});
}

TEST(Encode, DeterministicGivenSeed) {
  const Tokenizer tok(WholeWords{}, CasingMode::kCased);
  const auto dict = TransformationDictionary::from_counts(
      GranularityMode{}, CasingMode::kCased, 1,
      {{"CHAR rep@e1=ts", 1}, {"CHAR ins@e1=s;upc@s1", 1}, {"CHAR rep@e1=ts;upc@s1", 1}});
  const LabeledSentence a = encode(U"cat dog", U"cats dog", tok, dict, 42);
  const LabeledSentence b = encode(U"cat dog", U"cats dog", tok, dict, 42);
  EXPECT_EQ(a.labels, b.labels);
}

TEST(Encode, RejectsCasingMismatch) {
  const Tokenizer cased(WholeWords{}, CasingMode::kCased);
  const Tokenizer uncased(WholeWords{}, CasingMode::kUncased);
  const auto dict = induce_from(kExample, cased, GranularityMode{}, 1);
  EXPECT_THROW(encode(U"a", U"b", uncased, dict, 0), std::invalid_argument);
}

TEST(ApplyLabels, InapplicableLabelKeepsUnit) {
  const auto dict = TransformationDictionary::from_counts(
      GranularityMode{}, CasingMode::kCased, 1, {{"CHAR rep@e9=x", 1}});
  const Tokenizer tok(WholeWords{}, CasingMode::kCased);
  EXPECT_EQ(apply_labels(U"tiny words", {2, 2}, tok, dict), U"tiny words");
  EXPECT_EQ(apply_labels(U"tiny words", {1, 1}, tok, dict), U"tiny words");
  EXPECT_THROW(apply_labels(U"tiny words", {1, 7}, tok, dict), std::out_of_range);
  EXPECT_THROW(apply_labels(U"tiny words", {1}, tok, dict), std::invalid_argument);
}

TEST(ApplyLabels, DeletedWordsLeaveNoDoubleSpaces) {
  const Tokenizer tok(WholeWords{}, CasingMode::kCased);
  std::vector<AlignedSentence> aligned{prepare(U"the the cat", U"the cat", tok)};
  const auto dict = induce(aligned, {}, GranularityMode{}, 1, 0);
  const LabeledSentence s = encode(aligned[0], dict, 0);
  EXPECT_EQ(apply_labels(U"the the cat", s.labels, tok, dict), U"the cat");
}

TEST(RoundTrip, AllModesAndCasings) {
  CorruptionConfig config;
  config.seed = 17;
  config.substitute_char = config.insert_char = config.delete_char = 0.05;
  config.toggle_word_casing = config.strip_word_diacritics = 0.2;
  const std::vector<Text> golds{U"Příliš žluťoučký kůň úpěl ďábelské ódy.",
                                U"The quick brown fox jumps over the lazy dog!",
                                U"Ein Bäcker backt frische Brötchen, oder?",
                                U"Walking and going are both fine."};
  std::vector<Text> many;
  for (int i = 0; i < 25; ++i) many.insert(many.end(), golds.begin(), golds.end());
  const auto pairs = corrupt_all(many, config);
  for (CasingMode casing : {CasingMode::kCased, CasingMode::kUncased}) {
    const Tokenizer tok(CharChunks{3}, casing);
    std::vector<AlignedSentence> aligned;
    for (const auto& p : pairs) aligned.push_back(prepare(p.source, p.gold, tok));
    for (GranularityMode m : all_granularities()) {
      const auto dict = induce(aligned, {}, m, 1, 0);
      for (std::size_t i = 0; i < aligned.size(); ++i) {
        const LabeledSentence s = encode(aligned[i], dict, i);
        ASSERT_EQ(std::count(s.labels.begin(), s.labels.end(), kUncorrectableId), 0)
            << to_string(m) << " " << to_utf8(pairs[i].source);
        EXPECT_EQ(apply_labels(pairs[i].source, s.labels, tok, dict), pairs[i].gold)
            << to_string(m) << " " << to_string(casing);
      }
    }
  }
}

}  // namespace
}  // namespace gecx
