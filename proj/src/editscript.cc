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

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "gecx/error.h"

namespace gecx {
namespace {

CharEdit anchored_on_source(EditKind kind, std::size_t position,
                            std::size_t length, Text payload) {
  // Gap positions run to length + 1; from the end, the final gap is 1.
  const std::size_t half = (length + 1) / 2;
  CharEdit edit{kind, Anchor::kFromStart, position, std::move(payload)};
  if (position > half) {
    edit.anchor = Anchor::kFromEnd;
    edit.index = kind == EditKind::kInsert ? length + 2 - position
                                           : length + 1 - position;
  }
  return edit;
}

std::optional<std::size_t> resolve(const CharEdit& edit, std::size_t length) {
  std::size_t limit = edit.kind == EditKind::kInsert ? length + 1 : length;
  if (edit.index < 1 || edit.index > limit) return std::nullopt;
  if (edit.anchor == Anchor::kFromStart) return edit.index;
  return limit + 1 - edit.index;
}

struct BuildAttempt {
  CharTransformation transformation;
  std::set<std::size_t> unreachable;  // 1-based target positions
};

BuildAttempt build_once(TextView unit, TextView gold, CasingMode casing,
                        const std::set<std::size_t>& forced) {
  auto fold = [casing](char32_t c) {
    char32_t lower = to_lower(c);
    return casing == CasingMode::kUncased ? to_lower(base_character(lower))
                                          : lower;
  };
  Text src(unit.size(), 0);
  Text dst(gold.size(), 0);
  std::transform(unit.begin(), unit.end(), src.begin(), fold);
  std::transform(gold.begin(), gold.end(), dst.begin(), fold);

  BuildAttempt attempt;
  CharTransformation& t = attempt.transformation;
  const std::size_t n = unit.size();
  Text current;
  current.reserve(gold.size());
  for (const ScriptStep& step : edit_alignment(src, dst)) {
    const std::size_t tp = step.target_position;
    const bool force = forced.count(tp) > 0;
    switch (step.op) {
      case ScriptOp::kMatch: {
        const char32_t u = unit[step.source_position - 1];
        const char32_t g = gold[tp - 1];
        // The later steps can only raise case, so wrongly uppercased input
        // goes through a replacement.
        if (force && u != g) {
          t.base_edits.push_back(anchored_on_source(
              EditKind::kReplace, step.source_position, n, Text(1, g)));
          current.push_back(g);
        } else if (!force && is_upper(u) && !is_upper(g)) {
          t.base_edits.push_back(anchored_on_source(
              EditKind::kReplace, step.source_position, n, Text(1, dst[tp - 1])));
          current.push_back(dst[tp - 1]);
        } else {
          current.push_back(u);
        }
        break;
      }
      case ScriptOp::kReplace:
      case ScriptOp::kInsert: {
        const char32_t c = force ? gold[tp - 1] : dst[tp - 1];
        const EditKind kind = step.op == ScriptOp::kReplace ? EditKind::kReplace
                                                            : EditKind::kInsert;
        t.base_edits.push_back(
            anchored_on_source(kind, step.source_position, n, Text(1, c)));
        current.push_back(c);
        break;
      }
      case ScriptOp::kDelete:
        t.base_edits.push_back(anchored_on_source(
            EditKind::kDelete, step.source_position, n, Text()));
        break;
    }
  }

  const std::size_t m = current.size();
  for (std::size_t pos : case_diff(current, gold)) {
    t.case_edits.push_back(
        anchored_on_source(EditKind::kUppercase, pos, m, Text()));
    current[pos - 1] = to_upper(current[pos - 1]);
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (current[k] == gold[k]) continue;
    if (strip_diacritics(current[k]) == strip_diacritics(gold[k])) {
      t.diacritic_edits.push_back(anchored_on_source(
          EditKind::kSetDiacritic, k + 1, m, Text(1, gold[k])));
    } else {
      attempt.unreachable.insert(k + 1);
    }
  }
  return attempt;
}

constexpr std::string_view kEscaped = " ;%\t\r\n";

void append_encoded(TextView text, std::string& out) {
  for (char32_t c : text) {
    if (c < 0x80 && kEscaped.find(static_cast<char>(c)) != std::string_view::npos) {
      static constexpr char kHex[] = "0123456789ABCDEF";
      out.push_back('%');
      out.push_back(kHex[(c >> 4) & 0xF]);
      out.push_back(kHex[c & 0xF]);
    } else {
      out += to_utf8(TextView(&c, 1));
    }
  }
}

// Uppercase hex only, so every escape has exactly one spelling.
int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

Text decode_string(std::string_view encoded) {
  std::string bytes;
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    char c = encoded[i];
    if (c != '%') {
      if (kEscaped.find(c) != std::string_view::npos) {
        throw FormatError("unescaped reserved character in transformation");
      }
      bytes.push_back(c);
      continue;
    }
    if (i + 2 >= encoded.size()) {
      throw FormatError("truncated percent escape in transformation");
    }
    const int hi = hex_value(encoded[i + 1]);
    const int lo = hex_value(encoded[i + 2]);
    const int value = hi * 16 + lo;
    if (hi < 0 || lo < 0 ||
        kEscaped.find(static_cast<char>(value)) == std::string_view::npos) {
      throw FormatError("invalid percent escape in transformation");
    }
    bytes.push_back(static_cast<char>(value));
    i += 2;
  }
  return from_utf8(bytes);
}

std::string_view kind_token(EditKind kind) {
  switch (kind) {
    case EditKind::kInsert: return "ins";
    case EditKind::kReplace: return "rep";
    case EditKind::kDelete: return "del";
    case EditKind::kUppercase: return "upc";
    case EditKind::kSetDiacritic: return "dia";
  }
  return "";
}

bool has_payload(EditKind kind) {
  return kind == EditKind::kInsert || kind == EditKind::kReplace ||
         kind == EditKind::kSetDiacritic;
}

void append_edit(const CharEdit& edit, std::string& out) {
  out += kind_token(edit.kind);
  out += edit.anchor == Anchor::kFromStart ? "@s" : "@e";
  out += std::to_string(edit.index);
  if (has_payload(edit.kind)) {
    out.push_back('=');
    append_encoded(edit.payload, out);
  }
}

// Edit lists are serialized base, case, diacritic; `stage` enforces it.
CharEdit parse_edit(std::string_view token, int& stage) {
  if (token.size() < 6 || token[3] != '@' ||
      (token[4] != 's' && token[4] != 'e')) {
    throw FormatError("malformed character edit '" + std::string(token) + "'");
  }
  const std::string_view name = token.substr(0, 3);
  CharEdit edit;
  int edit_stage = 0;
  if (name == "ins") {
    edit.kind = EditKind::kInsert;
  } else if (name == "rep") {
    edit.kind = EditKind::kReplace;
  } else if (name == "del") {
    edit.kind = EditKind::kDelete;
  } else if (name == "upc") {
    edit.kind = EditKind::kUppercase;
    edit_stage = 1;
  } else if (name == "dia") {
    edit.kind = EditKind::kSetDiacritic;
    edit_stage = 2;
  } else {
    throw FormatError("unknown character edit '" + std::string(name) + "'");
  }
  if (edit_stage < stage) {
    throw FormatError("character edits out of canonical order");
  }
  stage = edit_stage;
  edit.anchor = token[4] == 's' ? Anchor::kFromStart : Anchor::kFromEnd;

  std::string_view rest = token.substr(5);
  std::size_t eq = rest.find('=');
  std::string_view digits = rest.substr(0, eq);
  if (digits.empty() || digits.front() == '0' ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw FormatError("invalid edit index in '" + std::string(token) + "'");
  }
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), edit.index);
  if (ec != std::errc()) throw FormatError("edit index out of range");

  if (has_payload(edit.kind)) {
    if (eq == std::string_view::npos) {
      throw FormatError("missing payload in '" + std::string(token) + "'");
    }
    edit.payload = decode_string(rest.substr(eq + 1));
    if (edit.payload.empty()) throw FormatError("empty edit payload");
    if (edit.kind == EditKind::kSetDiacritic && edit.payload.size() != 1) {
      throw FormatError("diacritic payload must be a single character");
    }
  } else if (eq != std::string_view::npos) {
    throw FormatError("unexpected payload in '" + std::string(token) + "'");
  }
  return edit;
}

}  // namespace

std::vector<ScriptStep> edit_alignment(TextView src, TextView dst) {
  std::vector<ScriptStep> steps = levenshtein_backtrace(
      src.size(), dst.size(),
      [&](std::size_t i, std::size_t j) { return src[i] == dst[j]; });
  for (ScriptStep& step : steps) {
    if (step.op != ScriptOp::kDelete) step.payload = dst[step.target_position - 1];
  }
  return steps;
}

std::vector<ScriptStep> minimal_edit_script(TextView src, TextView dst) {
  std::vector<ScriptStep> script;
  for (const ScriptStep& step : edit_alignment(src, dst)) {
    if (step.op != ScriptOp::kMatch) script.push_back(step);
  }
  return script;
}

CharTransformation build_char_transformation(TextView input_unit,
                                             TextView gold_span,
                                             CasingMode casing) {
  std::set<std::size_t> forced;
  BuildAttempt attempt = build_once(input_unit, gold_span, casing, forced);
  if (!attempt.unreachable.empty()) {
    // Characters whose case or diacritics cannot be reached through the
    // later steps are written verbatim by the base script instead.
    attempt = build_once(input_unit, gold_span, casing, attempt.unreachable);
  }
  if (!attempt.unreachable.empty()) {
    throw std::logic_error("gold span unreachable by a character program");
  }
  return std::move(attempt.transformation);
}

std::optional<Text> apply_char_transformation(const CharTransformation& t,
                                              TextView unit) {
  const std::size_t n = unit.size();
  std::vector<const Text*> replacement(n + 2, nullptr);
  std::vector<bool> removed(n + 2, false);
  std::vector<std::vector<const Text*>> inserts(n + 2);
  for (const CharEdit& edit : t.base_edits) {
    std::optional<std::size_t> pos = resolve(edit, n);
    if (!pos) return std::nullopt;
    if (edit.kind == EditKind::kInsert) {
      inserts[*pos].push_back(&edit.payload);
      continue;
    }
    if (removed[*pos] || replacement[*pos] != nullptr) return std::nullopt;
    if (edit.kind == EditKind::kDelete) {
      removed[*pos] = true;
    } else if (edit.kind == EditKind::kReplace) {
      replacement[*pos] = &edit.payload;
    } else {
      return std::nullopt;
    }
  }

  Text out;
  out.reserve(n + 4);
  for (std::size_t p = 1; p <= n + 1; ++p) {
    for (const Text* ins : inserts[p]) out += *ins;
    if (p > n || removed[p]) continue;
    if (replacement[p] != nullptr) {
      out += *replacement[p];
    } else {
      out.push_back(unit[p - 1]);
    }
  }

  for (const CharEdit& edit : t.case_edits) {
    std::optional<std::size_t> pos = resolve(edit, out.size());
    if (!pos || edit.kind != EditKind::kUppercase) return std::nullopt;
    out[*pos - 1] = to_upper(out[*pos - 1]);
  }
  for (const CharEdit& edit : t.diacritic_edits) {
    std::optional<std::size_t> pos = resolve(edit, out.size());
    if (!pos || edit.kind != EditKind::kSetDiacritic ||
        edit.payload.size() != 1) {
      return std::nullopt;
    }
    char32_t& c = out[*pos - 1];
    if (strip_diacritics(c) != strip_diacritics(edit.payload.front())) {
      return std::nullopt;
    }
    c = edit.payload.front();
  }
  return out;
}

StringTransformation build_string_transformation(TextView input_unit,
                                                 TextView gold_span) {
  using Kind = StringTransformation::Kind;
  if (input_unit == gold_span) return {Kind::kKeep, Text()};
  if (gold_span.size() > input_unit.size()) {
    const std::size_t extra = gold_span.size() - input_unit.size();
    if (gold_span.substr(0, input_unit.size()) == input_unit) {
      return {Kind::kAppend, Text(gold_span.substr(input_unit.size()))};
    }
    if (gold_span.substr(extra) == input_unit) {
      return {Kind::kPrepend, Text(gold_span.substr(0, extra))};
    }
  }
  return {Kind::kReplace, Text(gold_span)};
}

Text apply_string_transformation(const StringTransformation& t, TextView unit) {
  switch (t.kind) {
    case StringTransformation::Kind::kKeep: return Text(unit);
    case StringTransformation::Kind::kReplace: return t.payload;
    case StringTransformation::Kind::kAppend: return Text(unit) + t.payload;
    case StringTransformation::Kind::kPrepend: return t.payload + Text(unit);
  }
  return Text(unit);
}

Transformation make_transformation(CharTransformation t) {
  if (t.empty()) return StringTransformation{};
  return t;
}

std::optional<Text> apply_transformation(const Transformation& t,
                                         TextView unit) {
  if (const auto* s = std::get_if<StringTransformation>(&t)) {
    return apply_string_transformation(*s, unit);
  }
  if (const auto* c = std::get_if<CharTransformation>(&t)) {
    return apply_char_transformation(*c, unit);
  }
  return std::nullopt;
}

bool is_keep(const Transformation& t) {
  const auto* s = std::get_if<StringTransformation>(&t);
  return s != nullptr && s->kind == StringTransformation::Kind::kKeep;
}

std::string serialize(const Transformation& t) {
  std::string out;
  if (std::holds_alternative<Uncorrectable>(t)) return "UNCORRECTABLE";
  if (const auto* s = std::get_if<StringTransformation>(&t)) {
    switch (s->kind) {
      case StringTransformation::Kind::kKeep: return "KEEP";
      case StringTransformation::Kind::kReplace: out = "REPLACE "; break;
      case StringTransformation::Kind::kPrepend: out = "PREPEND "; break;
      case StringTransformation::Kind::kAppend: out = "APPEND "; break;
    }
    append_encoded(s->payload, out);
    return out;
  }
  const auto& c = std::get<CharTransformation>(t);
  if (c.empty()) return "KEEP";
  out = "CHAR ";
  bool first = true;
  for (const auto* list : {&c.base_edits, &c.case_edits, &c.diacritic_edits}) {
    for (const CharEdit& edit : *list) {
      if (!first) out.push_back(';');
      first = false;
      append_edit(edit, out);
    }
  }
  return out;
}

Transformation parse_transformation(std::string_view text) {
  using Kind = StringTransformation::Kind;
  if (text == "UNCORRECTABLE") return Uncorrectable{};
  if (text == "KEEP") return StringTransformation{};
  auto payload_after = [&](std::string_view prefix) -> std::optional<Text> {
    if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
    return decode_string(text.substr(prefix.size()));
  };
  if (auto p = payload_after("REPLACE ")) {
    return StringTransformation{Kind::kReplace, *p};
  }
  if (auto p = payload_after("PREPEND ")) {
    if (p->empty()) throw FormatError("PREPEND needs a non-empty string");
    return StringTransformation{Kind::kPrepend, *p};
  }
  if (auto p = payload_after("APPEND ")) {
    if (p->empty()) throw FormatError("APPEND needs a non-empty string");
    return StringTransformation{Kind::kAppend, *p};
  }
  if (text.substr(0, 5) == "CHAR ") {
    CharTransformation t;
    int stage = 0;
    std::string_view rest = text.substr(5);
    while (true) {
      std::size_t semi = rest.find(';');
      CharEdit edit = parse_edit(rest.substr(0, semi), stage);
      if (edit.kind == EditKind::kUppercase) {
        t.case_edits.push_back(std::move(edit));
      } else if (edit.kind == EditKind::kSetDiacritic) {
        t.diacritic_edits.push_back(std::move(edit));
      } else {
        t.base_edits.push_back(std::move(edit));
      }
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
    return t;
  }
  throw FormatError("unrecognized transformation '" + std::string(text) + "'");
}

}  // namespace gecx
