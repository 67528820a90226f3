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


#include "gecx/editscript.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <utility>

#include "gecx/error.h"

namespace gecx {
namespace {

using Kind = StringTransformation::Kind;

// Memoized recursive edit distance, written without the library's DP.
class DistanceOracle {
 public:
  DistanceOracle(Text a, Text b) : a_(std::move(a)), b_(std::move(b)) {}
  std::size_t operator()() { return go(0, 0); }

 private:
  std::size_t go(std::size_t i, std::size_t j) {
    if (i == a_.size()) return b_.size() - j;
    if (j == b_.size()) return a_.size() - i;
    auto key = std::make_pair(i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::size_t best = go(i + 1, j + 1) + (a_[i] == b_[j] ? 0 : 1);
    best = std::min(best, go(i + 1, j) + 1);
    best = std::min(best, go(i, j + 1) + 1);
    memo_[key] = best;
    return best;
  }
  Text a_, b_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo_;
};

Text replay(TextView src, const std::vector<ScriptStep>& script) {
  // Right to left so earlier positions stay valid.
  Text out(src);
  for (auto it = script.rbegin(); it != script.rend(); ++it) {
    const std::size_t p = it->source_position - 1;
    switch (it->op) {
      case ScriptOp::kInsert: out.insert(out.begin() + p, it->payload); break;
      case ScriptOp::kReplace: out[p] = it->payload; break;
      case ScriptOp::kDelete: out.erase(out.begin() + p); break;
      case ScriptOp::kMatch: break;
    }
  }
  return out;
}

TEST(MinimalEditScript, WorkedExamples) {
  const auto fes = minimal_edit_script(U"fes", U"ves");
  ASSERT_EQ(fes.size(), 1u);
  EXPECT_EQ(fes[0].op, ScriptOp::kReplace);
  EXPECT_EQ(fes[0].source_position, 1u);
  EXPECT_EQ(fes[0].payload, U'v');

  EXPECT_TRUE(minimal_edit_script(U"abc", U"abc").empty());

  const auto rin = minimal_edit_script(U"rin", U"ring");
  ASSERT_EQ(rin.size(), 1u);
  EXPECT_EQ(rin[0].op, ScriptOp::kInsert);
  EXPECT_EQ(rin[0].source_position, 4u);
  EXPECT_EQ(rin[0].payload, U'g');
}

TEST(MinimalEditScript, PrefersReplaceOverDeleteInsert) {
  const auto s = minimal_edit_script(U"ab", U"ba");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].op, ScriptOp::kReplace);
  EXPECT_EQ(s[1].op, ScriptOp::kReplace);
}

TEST(MinimalEditScript, IsMinimalAndReplays) {
  std::mt19937 gen(3);
  for (int trial = 0; trial < 500; ++trial) {
    Text a, b;
    const int na = gen() % 9, nb = gen() % 9;
    for (int i = 0; i < na; ++i) a.push_back(U'a' + gen() % 3);
    for (int i = 0; i < nb; ++i) b.push_back(U'a' + gen() % 3);
    const auto script = minimal_edit_script(a, b);
    EXPECT_EQ(script.size(), DistanceOracle(a, b)());
    EXPECT_EQ(replay(a, script), b);
  }
}

TEST(CharTransformation, UppercaseSecondCountsLeadingSpace) {
  const CharTransformation t =
      build_char_transformation(U" gathe", U" Gathe", CasingMode::kUncased);
  EXPECT_TRUE(t.base_edits.empty());
  ASSERT_EQ(t.case_edits.size(), 1u);
  EXPECT_EQ(t.case_edits[0],
            (CharEdit{EditKind::kUppercase, Anchor::kFromStart, 2, U""}));
}

TEST(CharTransformation, ReplaceThirdFromEnd) {
  const CharTransformation t =
      build_char_transformation(U" leafes", U" leaves", CasingMode::kUncased);
  ASSERT_EQ(t.base_edits.size(), 1u);
  EXPECT_EQ(t.base_edits[0],
            (CharEdit{EditKind::kReplace, Anchor::kFromEnd, 3, U"v"}));
  EXPECT_TRUE(t.case_edits.empty());
}

TEST(CharTransformation, AppendAndReplaceFirst) {
  const CharTransformation app = build_char_transformation(U"rin", U"ring", CasingMode::kCased);
  ASSERT_EQ(app.base_edits.size(), 1u);
  EXPECT_EQ(app.base_edits[0], (CharEdit{EditKind::kInsert, Anchor::kFromEnd, 1, U"g"}));
  const CharTransformation rep = build_char_transformation(U"fes", U"ves", CasingMode::kCased);
  ASSERT_EQ(rep.base_edits.size(), 1u);
  EXPECT_EQ(rep.base_edits[0], (CharEdit{EditKind::kReplace, Anchor::kFromStart, 1, U"v"}));
}

TEST(CharTransformation, OneRuleForGoingAndWalking) {
  const CharTransformation go = build_char_transformation(U"go", U"Going", CasingMode::kCased);
  const CharTransformation walk =
      build_char_transformation(U"walk", U"Walking", CasingMode::kCased);
  EXPECT_EQ(go, walk);
  EXPECT_EQ(serialize(make_transformation(go)), serialize(make_transformation(walk)));
  EXPECT_EQ(apply_char_transformation(go, U"talk"), U"Talking");
  EXPECT_NE(build_string_transformation(U"go", U"Going"),
            build_string_transformation(U"walk", U"Walking"));
}

TEST(CharTransformation, RestoresDiacriticsInUncasedMode) {
  const CharTransformation t = build_char_transformation(U" zlutoucky", U" žluťoučký",
                                                         CasingMode::kUncased);
  EXPECT_TRUE(t.base_edits.empty());
  EXPECT_TRUE(t.case_edits.empty());
  EXPECT_EQ(t.diacritic_edits.size(), 4u);
  EXPECT_EQ(apply_char_transformation(t, U" zlutoucky"), U" žluťoučký");
  // The diacritic payload must fit the character it replaces.
  EXPECT_EQ(apply_char_transformation(t, U" abcdefghi"), std::nullopt);
}

TEST(CharTransformation, CasedModeTreatsDiacriticsAsCharacters) {
  const CharTransformation t =
      build_char_transformation(U"prilis", U"příliš", CasingMode::kCased);
  EXPECT_EQ(t.base_edits.size(), 3u);
  EXPECT_TRUE(t.diacritic_edits.empty());
  EXPECT_EQ(apply_char_transformation(t, U"prilis"), U"příliš");
}

TEST(CharTransformation, ApplyEdgeCases) {
  CharTransformation rep1;
  rep1.base_edits.push_back({EditKind::kReplace, Anchor::kFromStart, 1, U"v"});
  EXPECT_EQ(apply_char_transformation(rep1, U"fes"), U"ves");
  EXPECT_EQ(apply_char_transformation(CharTransformation{}, U"anything"), U"anything");
  CharTransformation rep3;
  rep3.base_edits.push_back({EditKind::kReplace, Anchor::kFromEnd, 3, U"v"});
  EXPECT_EQ(apply_char_transformation(rep3, U"no"), std::nullopt);
  CharTransformation twice;
  twice.base_edits.push_back({EditKind::kDelete, Anchor::kFromStart, 2, U""});
  twice.base_edits.push_back({EditKind::kReplace, Anchor::kFromEnd, 1, U"x"});
  EXPECT_EQ(apply_char_transformation(twice, U"ab"), std::nullopt);
  EXPECT_EQ(apply_char_transformation(twice, U"abc"), U"ax");
}

TEST(CharTransformation, RoundTripsRandomPairsInBothModes) {
  std::mt19937 gen(5);
  const Text alphabet = U"abcAéÉ ,ž";
  for (int trial = 0; trial < 2000; ++trial) {
    Text a, b;
    const int na = 1 + gen() % 8, nb = gen() % 9;
    for (int i = 0; i < na; ++i) a.push_back(alphabet[gen() % alphabet.size()]);
    for (int i = 0; i < nb; ++i) b.push_back(alphabet[gen() % alphabet.size()]);
    for (CasingMode mode : {CasingMode::kCased, CasingMode::kUncased}) {
      const Text unit = casing_normalize(a, mode);
      const CharTransformation t = build_char_transformation(unit, b, mode);
      EXPECT_EQ(apply_char_transformation(t, unit), b)
          << to_utf8(unit) << " -> " << to_utf8(b);
      Text lowered_unit = to_lower(strip_diacritics(unit));
      Text lowered_gold = to_lower(strip_diacritics(b));
      if (mode == CasingMode::kCased) {
        lowered_unit = to_lower(unit);
        lowered_gold = to_lower(b);
      }
      // Lowering a character costs a base edit, so minimality is only
      // exact for sources without uppercase letters.
      if (std::any_of(unit.begin(), unit.end(), [](char32_t c) { return is_upper(c); })) {
        continue;
      }
      EXPECT_EQ(t.base_edits.size(), DistanceOracle(lowered_unit, lowered_gold)())
          << to_utf8(unit) << " -> " << to_utf8(b) << " " << to_string(mode);
    }
  }
}

TEST(StringTransformation, BuildAndApply) {
  EXPECT_EQ(build_string_transformation(U" lea", U" lea").kind, Kind::kKeep);
  EXPECT_EQ(build_string_transformation(U"rin", U"ring"),
            (StringTransformation{Kind::kAppend, U"g"}));
  EXPECT_EQ(build_string_transformation(U"ing", U"ring"),
            (StringTransformation{Kind::kPrepend, U"r"}));
  EXPECT_EQ(build_string_transformation(U" gathe", U" Gathe"),
            (StringTransformation{Kind::kReplace, U" Gathe"}));
  EXPECT_EQ(apply_string_transformation({Kind::kKeep, U""}, U"x"), U"x");
  EXPECT_EQ(apply_string_transformation({Kind::kReplace, U" leaves"}, U" leafes"),
            U" leaves");
  EXPECT_EQ(apply_string_transformation({Kind::kAppend, U"g"}, U"rin"), U"ring");
  EXPECT_EQ(apply_string_transformation({Kind::kPrepend, U"r"}, U"ing"), U"ring");
}

TEST(Transformation, EmptyCharProgramIsKeep) {
  EXPECT_TRUE(is_keep(make_transformation(CharTransformation{})));
  EXPECT_EQ(serialize(make_transformation(CharTransformation{})), "KEEP");
}

TEST(Serialization, CanonicalForms) {
  EXPECT_EQ(serialize(Uncorrectable{}), "UNCORRECTABLE");
  EXPECT_EQ(serialize(StringTransformation{}), "KEEP");
  EXPECT_EQ(serialize(StringTransformation{Kind::kReplace, U" a;b%"}),
            "REPLACE %20a%3Bb%25");
  EXPECT_EQ(serialize(StringTransformation{Kind::kAppend, U"g"}), "APPEND g");
  EXPECT_EQ(serialize(make_transformation(
                build_char_transformation(U" leafes", U" Leaves", CasingMode::kCased))),
            "CHAR rep@e3=v;upc@s2");
}

TEST(Serialization, RoundTrips) {
  std::mt19937 gen(9);
  const Text alphabet = U"ab ;%\tÉé\n";
  for (int trial = 0; trial < 1000; ++trial) {
    Text a, b;
    const int na = 1 + gen() % 6, nb = gen() % 7;
    for (int i = 0; i < na; ++i) a.push_back(alphabet[gen() % alphabet.size()]);
    for (int i = 0; i < nb; ++i) b.push_back(alphabet[gen() % alphabet.size()]);
    for (const Transformation& t :
         {make_transformation(build_char_transformation(a, b, CasingMode::kCased)),
          Transformation(build_string_transformation(a, b))}) {
      const std::string s = serialize(t);
      EXPECT_EQ(parse_transformation(s), t) << s;
      EXPECT_EQ(serialize(parse_transformation(s)), s);
      EXPECT_EQ(s.find('\n'), std::string::npos);
    }
  }
}

TEST(Serialization, RejectsNonCanonicalInput) {
  for (const char* bad : {"", "keep", "KEEP ", "REPLACE", "APPEND ", "CHAR ",
                          "CHAR upc@s0", "CHAR upc@x2", "CHAR rep@s1", "CHAR del@s1=x",
                          "CHAR ins@e1=%2", "CHAR ins@e1=%2f", "CHAR upc@s01",
                          "REPLACE a b", "CHAR upc@s2;"}) {
    EXPECT_THROW(parse_transformation(bad), FormatError) << bad;
  }
}

}  // namespace
}  // namespace gecx
