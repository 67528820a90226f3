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

#include "gecx/corpus.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gecx/error.h"
#include "gecx/parallel.h"
#include "gecx/rng.h"

namespace gecx {
namespace {

constexpr std::string_view kNone = "-NONE-";
constexpr std::string_view kFieldSeparator = "|||";

// Splits into lines, dropping a trailing CR and the empty piece after a
// final newline.
std::vector<std::string_view> split_lines(std::string_view contents) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

Text decode_line(std::string_view bytes, std::size_t line_no) {
  try {
    return from_utf8(bytes);
  } catch (const Utf8Error& e) {
    throw FormatError(e.what(), line_no);
  }
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no,
               std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("invalid " + std::string(what) + " '" + std::string(text) + "'",
                      line_no);
  }
  return value;
}

GoldEdit parse_annotation(std::string_view body, std::size_t line_no) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = body.find(kFieldSeparator, start);
    fields.push_back(body.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + kFieldSeparator.size();
  }
  if (fields.size() != 6) {
    throw FormatError("annotation must have 6 '|||'-separated fields", line_no);
  }
  std::string_view offsets = fields[0];
  std::size_t space = offsets.find(' ');
  if (space == std::string_view::npos) {
    throw FormatError("annotation offsets must be '<start> <end>'", line_no);
  }
  GoldEdit edit;
  edit.start_token =
      parse_number<std::int64_t>(offsets.substr(0, space), line_no, "start offset");
  edit.end_token =
      parse_number<std::int64_t>(offsets.substr(space + 1), line_no, "end offset");
  const bool noop = edit.start_token == -1 && edit.end_token == -1;
  if (!noop && (edit.start_token < 0 || edit.end_token < edit.start_token)) {
    throw FormatError("invalid annotation span", line_no);
  }
  edit.type_tag = std::string(fields[1]);
  edit.correction = fields[2] == kNone ? Text() : decode_line(fields[2], line_no);
  edit.required = std::string(fields[3]);
  edit.comment = std::string(fields[4]);
  edit.annotator = parse_number<std::size_t>(fields[5], line_no, "annotator id");
  return edit;
}

char32_t toggle_case(char32_t c) {
  return is_upper(c) ? to_lower(c) : to_upper(c);
}

char32_t substitute(char32_t c, const CorruptionConfig& config,
                    const NeighborMap* neighbors, Rng& rng) {
  const Text* pool = &config.alphabet;
  if (neighbors != nullptr) {
    auto it = neighbors->find(to_lower(c));
    if (it != neighbors->end() && !it->second.empty()) pool = &it->second;
  }
  char32_t picked = (*pool)[rng.below(pool->size())];
  if (to_lower(picked) == to_lower(c) && pool->size() > 1) {
    picked = (*pool)[(pool->find(picked) + 1) % pool->size()];
  }
  return is_upper(c) ? to_upper(picked) : picked;
}

Text corrupt_chars(const Text& word, const CorruptionConfig& config,
                   const NeighborMap* neighbors, Rng& rng) {
  Text out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    char32_t c = word[k];
    if (rng.bernoulli(config.delete_char)) continue;
    if (rng.bernoulli(config.substitute_char)) {
      c = substitute(c, config, neighbors, rng);
    }
    if (k + 1 < word.size() && rng.bernoulli(config.swap_adjacent_chars)) {
      out.push_back(word[k + 1]);
      out.push_back(c);
      ++k;
    } else {
      out.push_back(c);
    }
    if (rng.bernoulli(config.insert_char)) {
      out.push_back(config.alphabet[rng.below(config.alphabet.size())]);
    }
  }
  return out.empty() ? word : out;
}

}  // namespace

Text replay_edits(TextView source, const std::vector<GoldEdit>& edits,
                  std::size_t annotator) {
  std::vector<Text> tokens = split_whitespace(source);
  std::vector<const GoldEdit*> selected;
  for (const GoldEdit& e : edits) {
    if (e.annotator == annotator && !e.is_noop()) selected.push_back(&e);
  }
  std::sort(selected.begin(), selected.end(),
            [](const GoldEdit* a, const GoldEdit* b) {
              if (a->start_token != b->start_token) {
                return a->start_token < b->start_token;
              }
              return a->end_token < b->end_token;
            });
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const GoldEdit& e = *selected[i];
    if (e.start_token < 0 || e.end_token < e.start_token ||
        e.end_token > static_cast<std::int64_t>(tokens.size())) {
      throw FormatError("edit span out of range");
    }
    if (i == 0) continue;
    const GoldEdit& prev = *selected[i - 1];
    const bool both_insertions = prev.start_token == prev.end_token &&
                                 e.start_token == e.end_token &&
                                 prev.start_token == e.start_token;
    if (e.start_token < prev.end_token || both_insertions) {
      throw FormatError("overlapping edits for annotator " +
                        std::to_string(annotator));
    }
  }
  for (auto it = selected.rbegin(); it != selected.rend(); ++it) {
    const GoldEdit& e = **it;
    std::vector<Text> replacement = split_whitespace(e.correction);
    tokens.erase(tokens.begin() + e.start_token, tokens.begin() + e.end_token);
    tokens.insert(tokens.begin() + e.start_token, replacement.begin(),
                  replacement.end());
  }
  return join(tokens, U" ");
}

std::vector<SentencePair> parse_m2(std::string_view contents,
                                   std::size_t annotator) {
  std::vector<SentencePair> pairs;
  const std::vector<std::string_view> lines = split_lines(contents);
  bool in_block = false;
  std::size_t block_line = 0;
  auto finish_block = [&] {
    SentencePair& pair = pairs.back();
    try {
      pair.gold = replay_edits(pair.source, pair.gold_edits, annotator);
    } catch (const FormatError& e) {
      throw FormatError(e.what(), block_line);
    }
    in_block = false;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (line.empty()) {
      if (in_block) finish_block();
      continue;
    }
    if (line.substr(0, 2) == "S " || line == "S") {
      if (in_block) finish_block();
      pairs.emplace_back();
      pairs.back().source = decode_line(line.substr(std::min<std::size_t>(2, line.size())), line_no);
      in_block = true;
      block_line = line_no;
    } else if (line.substr(0, 2) == "A ") {
      if (!in_block) {
        throw FormatError("annotation line outside a sentence block", line_no);
      }
      pairs.back().gold_edits.push_back(parse_annotation(line.substr(2), line_no));
    } else {
      throw FormatError("expected an 'S' or 'A' line", line_no);
    }
  }
  if (in_block) finish_block();
  return pairs;
}

std::string serialize_m2(const std::vector<SentencePair>& pairs) {
  std::string out;
  for (const SentencePair& pair : pairs) {
    out += "S ";
    out += to_utf8(pair.source);
    out += '\n';
    for (const GoldEdit& e : pair.gold_edits) {
      out += "A ";
      out += std::to_string(e.start_token);
      out += ' ';
      out += std::to_string(e.end_token);
      out += kFieldSeparator;
      out += e.type_tag;
      out += kFieldSeparator;
      out += e.correction.empty() ? std::string(kNone) : to_utf8(e.correction);
      out += kFieldSeparator;
      out += e.required;
      out += kFieldSeparator;
      out += e.comment;
      out += kFieldSeparator;
      out += std::to_string(e.annotator);
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::vector<SentencePair> parse_tsv(std::string_view contents) {
  std::vector<SentencePair> pairs;
  const std::vector<std::string_view> lines = split_lines(contents);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw FormatError("expected exactly one tab separating source and gold",
                        i + 1);
    }
    SentencePair pair;
    pair.source = decode_line(line.substr(0, tab), i + 1);
    pair.gold = decode_line(line.substr(tab + 1), i + 1);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::string serialize_tsv(const std::vector<SentencePair>& pairs) {
  std::string out;
  for (const SentencePair& pair : pairs) {
    out += to_utf8(pair.source);
    out += '\t';
    out += to_utf8(pair.gold);
    out += '\n';
  }
  return out;
}

std::vector<Text> parse_lines(std::string_view contents) {
  std::vector<Text> out;
  const std::vector<std::string_view> lines = split_lines(contents);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    out.push_back(decode_line(lines[i], i + 1));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing " + path.string());
}

void CorruptionConfig::validate() const {
  for (double p : {substitute_char, insert_char, delete_char,
                   swap_adjacent_chars, strip_word_diacritics,
                   toggle_word_casing, swap_adjacent_words}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("corruption probability outside [0, 1]");
    }
  }
  if (alphabet.empty()) throw std::invalid_argument("empty corruption alphabet");
}

CorruptionConfig CorruptionConfig::parse(std::string_view contents) {
  CorruptionConfig config;
  const std::vector<std::string_view> lines = split_lines(contents);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("expected key=value", line_no);
    }
    const std::string_view key = line.substr(0, eq);
    const std::string_view value = line.substr(eq + 1);
    auto probability = [&]() {
      double p = parse_number<double>(value, line_no, "probability");
      if (!(p >= 0.0 && p <= 1.0)) {
        throw FormatError("probability outside [0, 1]", line_no);
      }
      return p;
    };
    if (key == "substitute_char") {
      config.substitute_char = probability();
    } else if (key == "insert_char") {
      config.insert_char = probability();
    } else if (key == "delete_char") {
      config.delete_char = probability();
    } else if (key == "swap_adjacent_chars") {
      config.swap_adjacent_chars = probability();
    } else if (key == "strip_word_diacritics") {
      config.strip_word_diacritics = probability();
    } else if (key == "toggle_word_casing") {
      config.toggle_word_casing = probability();
    } else if (key == "swap_adjacent_words") {
      config.swap_adjacent_words = probability();
    } else if (key == "alphabet") {
      config.alphabet = decode_line(value, line_no);
      if (config.alphabet.empty()) throw FormatError("empty alphabet", line_no);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(value, line_no, "seed");
    } else {
      throw FormatError("unknown key '" + std::string(key) + "'", line_no);
    }
  }
  return config;
}

std::string CorruptionConfig::serialize() const {
  std::ostringstream out;
  out.precision(17);
  out << "substitute_char=" << substitute_char << '\n'
      << "insert_char=" << insert_char << '\n'
      << "delete_char=" << delete_char << '\n'
      << "swap_adjacent_chars=" << swap_adjacent_chars << '\n'
      << "strip_word_diacritics=" << strip_word_diacritics << '\n'
      << "toggle_word_casing=" << toggle_word_casing << '\n'
      << "swap_adjacent_words=" << swap_adjacent_words << '\n'
      << "alphabet=" << to_utf8(alphabet) << '\n'
      << "seed=" << seed << '\n';
  return out.str();
}

NeighborMap parse_neighbors(std::string_view contents) {
  NeighborMap map;
  const std::vector<std::string_view> lines = split_lines(contents);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t tab = lines[i].find('\t');
    if (tab == std::string_view::npos) {
      throw FormatError("expected <char>\\t<neighbors>", i + 1);
    }
    Text key = decode_line(lines[i].substr(0, tab), i + 1);
    if (key.size() != 1) throw FormatError("key must be one character", i + 1);
    map[to_lower(key.front())] = decode_line(lines[i].substr(tab + 1), i + 1);
  }
  return map;
}

SentencePair corrupt(TextView gold, const CorruptionConfig& config,
                     const NeighborMap* neighbors) {
  config.validate();
  if (trim(gold).empty()) throw std::invalid_argument("cannot corrupt a blank sentence");
  Rng rng(config.seed);
  std::vector<Text> words = split_whitespace(gold);
  for (Text& word : words) {
    if (rng.bernoulli(config.strip_word_diacritics)) {
      Text stripped = strip_diacritics(word);
      if (!stripped.empty()) word = std::move(stripped);
    }
    if (rng.bernoulli(config.toggle_word_casing)) {
      word.front() = toggle_case(word.front());
    }
  }
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    if (rng.bernoulli(config.swap_adjacent_words)) {
      std::swap(words[i], words[i + 1]);
      ++i;
    }
  }
  for (Text& word : words) word = corrupt_chars(word, config, neighbors, rng);

  SentencePair pair;
  pair.source = join(words, U" ");
  pair.gold = join(split_whitespace(gold), U" ");
  return pair;
}

std::vector<SentencePair> corrupt_all(const std::vector<Text>& golds,
                                      const CorruptionConfig& config,
                                      const NeighborMap* neighbors) {
  std::vector<SentencePair> pairs(golds.size());
  parallel_for(golds.size(), [&](std::size_t i) {
    CorruptionConfig local = config;
    local.seed = derive_seed(config.seed, i);
    pairs[i] = corrupt(golds[i], local, neighbors);
  });
  return pairs;
}

}  // namespace gecx
