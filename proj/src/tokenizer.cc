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

#include "gecx/tokenizer.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gecx/error.h"

namespace gecx {

Text SubwordSequence::detokenize() const {
  Text out;
  for (const Subword& s : subwords) out += s.text;
  if (!out.empty() && out.front() == U' ') out.erase(0, 1);
  return out;
}

std::vector<Text> SubwordSequence::texts() const {
  std::vector<Text> out;
  out.reserve(subwords.size());
  for (const Subword& s : subwords) out.push_back(s.text);
  return out;
}

Vocabulary::Vocabulary(const std::vector<Text>& pieces) {
  for (const Text& piece : pieces) {
    TextView body = piece;
    if (!body.empty() && body.front() == U' ') body.remove_prefix(1);
    if (body.empty()) {
      throw std::invalid_argument("vocabulary piece is empty");
    }
    pieces_.insert(piece);
    max_length_ = std::max(max_length_, piece.size());
  }
  if (pieces_.empty()) throw std::invalid_argument("vocabulary is empty");
}

Vocabulary Vocabulary::parse(std::string_view utf8_contents) {
  std::vector<Text> pieces;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= utf8_contents.size()) {
    std::size_t eol = utf8_contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = utf8_contents.size();
    std::string_view line = utf8_contents.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    Text piece;
    try {
      piece = nfc(from_utf8(line));
    } catch (const Utf8Error& e) {
      throw FormatError(e.what(), line_no);
    }
    TextView body = piece;
    if (body.front() == U' ') body.remove_prefix(1);
    if (body.empty() || std::any_of(body.begin(), body.end(), is_space)) {
      throw FormatError("malformed vocabulary piece", line_no);
    }
    pieces.push_back(std::move(piece));
  }
  if (pieces.empty()) throw FormatError("vocabulary is empty");
  return Vocabulary(pieces);
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open vocabulary " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool Vocabulary::is_uncased() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Text& p) {
    return casing_normalize(p, CasingMode::kUncased) == p;
  });
}

Tokenizer::Tokenizer(TokenizerMode mode, CasingMode casing)
    : mode_(std::move(mode)), casing_(casing) {
  if (const auto* greedy = std::get_if<VocabGreedy>(&mode_)) {
    if (!greedy->vocabulary || greedy->vocabulary->size() == 0) {
      throw std::invalid_argument("greedy tokenizer needs a vocabulary");
    }
    if (casing_ == CasingMode::kUncased && !greedy->vocabulary->is_uncased()) {
      throw FormatError(
          "uncased tokenizer requires a lowercase, undiacritized vocabulary");
    }
  } else if (const auto* chunks = std::get_if<CharChunks>(&mode_)) {
    if (chunks->k == 0) throw std::invalid_argument("chunk size must be >= 1");
  }
}

// Appends the end offsets of the pieces `word` is split into.
void Tokenizer::split_word(TextView word, std::vector<std::size_t>& cuts) const {
  if (std::holds_alternative<WholeWords>(mode_)) {
    cuts.push_back(word.size());
    return;
  }
  if (const auto* chunks = std::get_if<CharChunks>(&mode_)) {
    for (std::size_t end = chunks->k; ; end += chunks->k) {
      cuts.push_back(std::min(end, word.size()));
      if (end >= word.size()) return;
    }
  }
  const auto& greedy = std::get<VocabGreedy>(mode_);
  const Vocabulary& vocab = *greedy.vocabulary;
  Text candidate;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const bool initial = pos == 0;
    std::size_t matched = 0;
    std::size_t longest = std::min(vocab.max_piece_length(), word.size() - pos);
    for (std::size_t len = longest; len >= 1; --len) {
      candidate.clear();
      if (initial) candidate.push_back(U' ');
      candidate.append(word.substr(pos, len));
      if (vocab.contains(candidate)) {
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      if (!greedy.unknown_fallback) {
        throw Error("character '" + to_utf8(word.substr(pos, 1)) +
                    "' is not covered by the vocabulary");
      }
      matched = 1;
    }
    pos += matched;
    cuts.push_back(pos);
  }
}

SubwordSequence Tokenizer::tokenize(TextView sentence) const {
  if (trim(sentence).empty()) {
    throw std::invalid_argument("cannot tokenize a blank sentence");
  }
  SubwordSequence seq;
  seq.source_sentence = join(split_whitespace(nfc(sentence)), U" ");
  std::size_t word_index = 0;
  std::vector<std::size_t> cuts;
  for (const Text& raw_word : split_whitespace(seq.source_sentence)) {
    NormalizedView view = casing_view(raw_word, casing_);
    if (view.normalized.empty()) continue;
    cuts.clear();
    split_word(view.normalized, cuts);
    std::size_t begin = 0;
    for (std::size_t end : cuts) {
      Subword piece;
      piece.word_index = word_index;
      piece.is_word_initial = begin == 0;
      if (piece.is_word_initial) {
        piece.text.push_back(U' ');
        piece.surface.push_back(U' ');
      }
      piece.text.append(view.normalized, begin, end - begin);
      std::size_t orig_begin = view.original_boundary(begin);
      std::size_t orig_end = view.original_boundary(end);
      piece.surface.append(view.original, orig_begin, orig_end - orig_begin);
      seq.subwords.push_back(std::move(piece));
      begin = end;
    }
    ++word_index;
  }
  if (seq.subwords.empty()) {
    throw std::invalid_argument("sentence has no tokenizable characters");
  }
  return seq;
}

std::vector<WordGroup> group_words(const SubwordSequence& seq) {
  std::vector<WordGroup> words;
  for (std::size_t i = 0; i < seq.subwords.size(); ++i) {
    const Subword& s = seq.subwords[i];
    if (words.empty() || s.is_word_initial) {
      words.push_back(WordGroup{Text(), Text(), i, i});
    }
    WordGroup& w = words.back();
    w.text += s.text;
    w.surface += s.surface;
    w.end = i + 1;
  }
  return words;
}

}  // namespace gecx
