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

#ifndef GECX_TOKENIZER_H_
#define GECX_TOKENIZER_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "gecx/textnorm.h"

namespace gecx {

// A word-initial piece carries a leading U' '; continuation pieces carry no
// marker.
struct Subword {
  Text text;
  std::size_t word_index = 0;
  bool is_word_initial = false;
  // The slice of the source sentence this piece was produced from, with the
  // same leading space convention. Differs from `text` only in uncased mode.
  Text surface;

  bool operator==(const Subword& other) const {
    return text == other.text && word_index == other.word_index &&
           is_word_initial == other.is_word_initial;
  }
};

struct SubwordSequence {
  std::vector<Subword> subwords;
  // NFC with whitespace runs collapsed to single spaces.
  Text source_sentence;

  std::size_t size() const { return subwords.size(); }
  // Concatenation of the pieces without the leading space.
  Text detokenize() const;
  std::vector<Text> texts() const;
};

class Vocabulary {
 public:
  explicit Vocabulary(const std::vector<Text>& pieces);

  // One piece per line, leading space significant, blank lines ignored.
  static Vocabulary parse(std::string_view utf8_contents);
  static Vocabulary load(const std::filesystem::path& path);

  bool contains(TextView piece) const { return pieces_.count(Text(piece)) > 0; }
  std::size_t size() const { return pieces_.size(); }
  std::size_t max_piece_length() const { return max_length_; }
  // True when every piece is already lowercase and undiacritized.
  bool is_uncased() const;

 private:
  std::unordered_set<Text> pieces_;
  std::size_t max_length_ = 0;
};

struct VocabGreedy {
  std::shared_ptr<const Vocabulary> vocabulary;
  // Emit a single-character piece for characters the vocabulary cannot
  // cover instead of failing.
  bool unknown_fallback = true;
};
struct WholeWords {};
struct CharChunks {
  std::size_t k = 1;
};
using TokenizerMode = std::variant<VocabGreedy, WholeWords, CharChunks>;

class Tokenizer {
 public:
  // Throws std::invalid_argument for an empty vocabulary, a zero chunk size,
  // and FormatError for a cased vocabulary used in uncased mode.
  Tokenizer(TokenizerMode mode, CasingMode casing);

  // Throws std::invalid_argument for blank sentences and Error for
  // uncoverable characters when the fallback is disabled.
  SubwordSequence tokenize(TextView sentence) const;

  CasingMode casing() const { return casing_; }
  const TokenizerMode& mode() const { return mode_; }

 private:
  void split_word(TextView word, std::vector<std::size_t>& cuts) const;

  TokenizerMode mode_;
  CasingMode casing_;
};

struct WordGroup {
  Text text;
  Text surface;
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<WordGroup> group_words(const SubwordSequence& seq);

}  // namespace gecx

#endif  // GECX_TOKENIZER_H_
