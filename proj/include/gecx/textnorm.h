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

// Unicode primitives shared by every other module. All text is handled as
// sequences of code points (Text); UTF-8 appears only at I/O boundaries.

#ifndef GECX_TEXTNORM_H_
#define GECX_TEXTNORM_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gecx {

using Text = std::u32string;
using TextView = std::u32string_view;

enum class CasingMode { kCased, kUncased };

std::string_view to_string(CasingMode mode);
// Accepts "cased" / "uncased"; throws FormatError otherwise.
CasingMode parse_casing(std::string_view name);

// Strict decoding: ill-formed sequences throw Utf8Error.
Text from_utf8(std::string_view bytes);
std::string to_utf8(TextView text);

// Canonical composition (NFC).
Text nfc(TextView text);

bool is_space(char32_t c);
// Unicode punctuation (P*) plus currency (Sc) and math (Sm) symbols.
bool is_punctuation(char32_t c);
// True when the character has a distinct simple lowercase mapping.
bool is_upper(char32_t c);

// Simple (one-to-one) case mappings; never change the length of a string.
char32_t to_lower(char32_t c);
char32_t to_upper(char32_t c);
Text to_lower(TextView text);

// Canonical decomposition, removal of nonspacing marks, recomposition.
Text strip_diacritics(TextView text);
// Same operation on a single code point. The result is empty for a
// standalone mark and a single character for almost everything else.
Text strip_diacritics(char32_t c);
// Convenience for the common one-to-one case: returns c itself when the
// stripped form is not exactly one character.
char32_t base_character(char32_t c);

// Lowercase, strip diacritics, fold all punctuation into '.', fold all
// whitespace into ' '. Applied per code point.
Text alignment_normalize(TextView text);

// A per-code-point normalization of `original` that remembers where each
// normalized character came from.
struct NormalizedView {
  Text original;
  Text normalized;
  // provenance[k] is the index in `original` of normalized[k]. Monotone
  // non-decreasing.
  std::vector<std::size_t> provenance;

  // Maps a normalized boundary (0..normalized.size()) to an original
  // boundary. Boundary 0 maps to 0 and the end maps to original.size().
  std::size_t original_boundary(std::size_t normalized_boundary) const;
};

NormalizedView alignment_view(TextView text);
// Cased mode: identity. Uncased mode: lowercased and undiacritized, which is
// what an uncased subword vocabulary sees.
NormalizedView casing_view(TextView text, CasingMode mode);
Text casing_normalize(TextView text, CasingMode mode);

// 1-based positions where `target` is uppercase and `lowercased` is not.
// Throws std::invalid_argument if the lengths differ.
std::vector<std::size_t> case_diff(TextView lowercased, TextView target);

TextView trim(TextView text);
std::vector<Text> split_whitespace(TextView text);
Text join(const std::vector<Text>& parts, TextView separator);

}  // namespace gecx

#endif  // GECX_TEXTNORM_H_
