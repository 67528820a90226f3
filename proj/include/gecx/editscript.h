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

#ifndef GECX_EDITSCRIPT_H_
#define GECX_EDITSCRIPT_H_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gecx/textnorm.h"

namespace gecx {

enum class ScriptOp { kMatch, kInsert, kReplace, kDelete };

// One step of a character alignment between two strings. Positions are
// 1-based. For inserts, `source_position` is the gap the character goes
// into: gap p sits before source character p, gap |src|+1 is the end.
struct ScriptStep {
  ScriptOp op = ScriptOp::kMatch;
  std::size_t source_position = 0;
  std::size_t target_position = 0;
  char32_t payload = 0;  // inserted or replacing character

  bool operator==(const ScriptStep&) const = default;
};

// Minimal unit-cost alignment of two sequences of lengths n and m, where
// equal(i, j) compares source element i with target element j (0-based).
// Backtrace runs from the end and prefers match > replace > delete > insert.
// Payloads are left zero.
template <typename Equal>
std::vector<ScriptStep> levenshtein_backtrace(std::size_t n, std::size_t m,
                                              Equal equal) {
  const std::size_t stride = m + 1;
  std::vector<std::size_t> d((n + 1) * stride);
  for (std::size_t i = 0; i <= n; ++i) d[i * stride] = i;
  for (std::size_t j = 0; j <= m; ++j) d[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = equal(i - 1, j - 1) ? 0 : 1;
      d[i * stride + j] = std::min({d[(i - 1) * stride + j - 1] + sub,
                                    d[(i - 1) * stride + j] + 1,
                                    d[i * stride + j - 1] + 1});
    }
  }
  std::vector<ScriptStep> steps;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = d[i * stride + j];
    if (i > 0 && j > 0 && equal(i - 1, j - 1) &&
        here == d[(i - 1) * stride + j - 1]) {
      steps.push_back({ScriptOp::kMatch, i, j, 0});
      --i;
      --j;
    } else if (i > 0 && j > 0 && here == d[(i - 1) * stride + j - 1] + 1) {
      steps.push_back({ScriptOp::kReplace, i, j, 0});
      --i;
      --j;
    } else if (i > 0 && here == d[(i - 1) * stride + j] + 1) {
      steps.push_back({ScriptOp::kDelete, i, j, 0});
      --i;
    } else {
      steps.push_back({ScriptOp::kInsert, i + 1, j, 0});
      --j;
    }
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

// Full alignment path (matches included) of a minimal unit-cost edit script.
std::vector<ScriptStep> edit_alignment(TextView src, TextView dst);

// The non-match steps of edit_alignment, in ascending source order.
std::vector<ScriptStep> minimal_edit_script(TextView src, TextView dst);

enum class EditKind { kInsert, kReplace, kDelete, kUppercase, kSetDiacritic };
enum class Anchor { kFromStart, kFromEnd };

struct CharEdit {
  EditKind kind = EditKind::kReplace;
  Anchor anchor = Anchor::kFromStart;
  std::size_t index = 1;  // 1-based, counted from the anchor
  Text payload;           // insert/replace text, or the composed target
                          // character of a set_diacritic

  bool operator==(const CharEdit&) const = default;
};

struct CharTransformation {
  // Address the unit before editing.
  std::vector<CharEdit> base_edits;
  // Address the result of base_edits.
  std::vector<CharEdit> case_edits;
  std::vector<CharEdit> diacritic_edits;

  bool empty() const {
    return base_edits.empty() && case_edits.empty() && diacritic_edits.empty();
  }
  bool operator==(const CharTransformation&) const = default;
};

struct StringTransformation {
  enum class Kind { kKeep, kReplace, kPrepend, kAppend };
  Kind kind = Kind::kKeep;
  Text payload;

  bool operator==(const StringTransformation&) const = default;
};

struct Uncorrectable {
  bool operator==(const Uncorrectable&) const = default;
};

using Transformation =
    std::variant<Uncorrectable, StringTransformation, CharTransformation>;

// Builds a character transformation turning `input_unit` into `gold_span`:
// a minimal edit script on lowercased (and, when uncased, undiacritized)
// forms, then uppercase edits, then diacritic edits. Edits in the first half
// of the string they address are anchored from the start, the rest from the
// end. Throws std::logic_error if the span is unreachable.
CharTransformation build_char_transformation(TextView input_unit,
                                             TextView gold_span,
                                             CasingMode casing);

// nullopt when an edit addresses a position outside the unit, two edits
// delete/replace the same position, or a diacritic payload does not fit the
// character it replaces.
std::optional<Text> apply_char_transformation(const CharTransformation& t,
                                              TextView unit);

StringTransformation build_string_transformation(TextView input_unit,
                                                 TextView gold_span);
Text apply_string_transformation(const StringTransformation& t, TextView unit);

// Empty character programs collapse to KEEP, so equal behavior means equal
// labels across granularities.
Transformation make_transformation(CharTransformation t);

// nullopt for Uncorrectable and for inapplicable character programs.
std::optional<Text> apply_transformation(const Transformation& t,
                                         TextView unit);

bool is_keep(const Transformation& t);

// Single-line UTF-8 form:
//   UNCORRECTABLE | KEEP | REPLACE <s> | PREPEND <s> | APPEND <s> |
//   CHAR <edit>(;<edit>)*
// with <edit> one of ins@{s|e}N=<s>, rep@{s|e}N=<s>, del@{s|e}N,
// upc@{s|e}N, dia@{s|e}N=<c>. Space, ';', '%', tab, CR and LF inside
// strings are percent-encoded.
std::string serialize(const Transformation& t);
// Accepts exactly the canonical forms produced by serialize; throws
// FormatError otherwise.
Transformation parse_transformation(std::string_view text);

}  // namespace gecx

#endif  // GECX_EDITSCRIPT_H_
