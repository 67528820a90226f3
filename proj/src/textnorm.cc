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

#include "gecx/textnorm.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

#include "gecx/error.h"

namespace gecx {
namespace {

const icu::Normalizer2& nfc_instance() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
    return n;
  }();
  return *instance;
}

const icu::Normalizer2& nfd_instance() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFD normalizer unavailable");
    return n;
  }();
  return *instance;
}

icu::UnicodeString to_icu(TextView text) {
  return icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(text.data()),
      static_cast<int32_t>(text.size()));
}

Text from_icu(const icu::UnicodeString& s) {
  Text out;
  out.reserve(s.length());
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i = s.moveIndex32(i, 1);
  }
  return out;
}

bool is_nonspacing_mark(char32_t c) {
  return u_charType(static_cast<UChar32>(c)) == U_NON_SPACING_MARK;
}

Text remove_marks(const icu::UnicodeString& decomposed) {
  icu::UnicodeString kept;
  for (int32_t i = 0; i < decomposed.length();) {
    UChar32 c = decomposed.char32At(i);
    if (!is_nonspacing_mark(static_cast<char32_t>(c))) kept.append(c);
    i = decomposed.moveIndex32(i, 1);
  }
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString composed = nfc_instance().normalize(kept, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return from_icu(composed);
}

void append_alignment_form(char32_t c, Text& out) {
  if (is_space(c)) {
    out.push_back(U' ');
    return;
  }
  if (is_punctuation(c)) {
    out.push_back(U'.');
    return;
  }
  for (char32_t b : strip_diacritics(to_lower(c))) {
    if (is_space(b)) {
      out.push_back(U' ');
    } else if (is_punctuation(b)) {
      out.push_back(U'.');
    } else {
      out.push_back(to_lower(b));
    }
  }
}

void append_uncased_form(char32_t c, Text& out) {
  for (char32_t b : strip_diacritics(to_lower(c))) out.push_back(to_lower(b));
}

template <typename AppendFn>
NormalizedView build_view(TextView text, AppendFn append) {
  NormalizedView view;
  view.original = Text(text);
  view.normalized.reserve(text.size());
  view.provenance.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    append(text[i], view.normalized);
    view.provenance.resize(view.normalized.size(), i);
  }
  return view;
}

}  // namespace

std::string_view to_string(CasingMode mode) {
  return mode == CasingMode::kCased ? "cased" : "uncased";
}

CasingMode parse_casing(std::string_view name) {
  if (name == "cased") return CasingMode::kCased;
  if (name == "uncased") return CasingMode::kUncased;
  throw FormatError("unknown casing mode '" + std::string(name) + "'");
}

Text from_utf8(std::string_view bytes) {
  Text out;
  out.reserve(bytes.size());
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int32_t>(bytes.size());
  for (int32_t i = 0; i < length;) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw Utf8Error("invalid UTF-8 sequence at byte offset " +
                      std::to_string(start));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string to_utf8(TextView text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) throw Utf8Error("code point cannot be encoded as UTF-8");
    out.append(reinterpret_cast<const char*>(buf), n);
  }
  return out;
}

Text nfc(TextView text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc_instance().normalize(to_icu(text), status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return from_icu(normalized);
}

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_punctuation(char32_t c) {
  return (U_GET_GC_MASK(static_cast<UChar32>(c)) &
          (U_GC_P_MASK | U_GC_SC_MASK | U_GC_SM_MASK)) != 0;
}

bool is_upper(char32_t c) { return to_lower(c) != c; }

char32_t to_lower(char32_t c) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

char32_t to_upper(char32_t c) {
  return static_cast<char32_t>(u_toupper(static_cast<UChar32>(c)));
}

Text to_lower(TextView text) {
  Text out(text);
  for (char32_t& c : out) c = to_lower(c);
  return out;
}

Text strip_diacritics(TextView text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString decomposed = nfd_instance().normalize(to_icu(text), status);
  if (U_FAILURE(status)) throw Error("NFD normalization failed");
  return remove_marks(decomposed);
}

Text strip_diacritics(char32_t c) {
  if (c < 0x80) return Text(1, c);
  if (is_nonspacing_mark(c)) return Text();
  icu::UnicodeString decomposed;
  if (!nfd_instance().getDecomposition(static_cast<UChar32>(c), decomposed)) {
    return Text(1, c);
  }
  return remove_marks(decomposed);
}

char32_t base_character(char32_t c) {
  Text stripped = strip_diacritics(c);
  return stripped.size() == 1 ? stripped.front() : c;
}

Text alignment_normalize(TextView text) {
  Text out;
  out.reserve(text.size());
  for (char32_t c : text) append_alignment_form(c, out);
  return out;
}

std::size_t NormalizedView::original_boundary(
    std::size_t normalized_boundary) const {
  if (normalized_boundary == 0) return 0;
  if (normalized_boundary >= normalized.size()) return original.size();
  return provenance[normalized_boundary];
}

NormalizedView alignment_view(TextView text) {
  return build_view(text, append_alignment_form);
}

NormalizedView casing_view(TextView text, CasingMode mode) {
  if (mode == CasingMode::kUncased) return build_view(text, append_uncased_form);
  return build_view(text, [](char32_t c, Text& out) { out.push_back(c); });
}

Text casing_normalize(TextView text, CasingMode mode) {
  if (mode == CasingMode::kCased) return Text(text);
  Text out;
  out.reserve(text.size());
  for (char32_t c : text) append_uncased_form(c, out);
  return out;
}

std::vector<std::size_t> case_diff(TextView lowercased, TextView target) {
  if (lowercased.size() != target.size()) {
    throw std::invalid_argument("case_diff: length mismatch");
  }
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (is_upper(target[i]) && !is_upper(lowercased[i])) {
      positions.push_back(i + 1);
    }
  }
  return positions;
}

TextView trim(TextView text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

std::vector<Text> split_whitespace(TextView text) {
  std::vector<Text> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) parts.emplace_back(text.substr(start, i - start));
  }
  return parts;
}

Text join(const std::vector<Text>& parts, TextView separator) {
  Text out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

}  // namespace gecx
