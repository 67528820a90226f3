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

// Extended LCS alignment: every input subword is aligned with a contiguous,
// possibly empty, run of gold characters. Comparisons ignore casing and
// diacritics and treat all punctuation as equal.

#ifndef GECX_ALIGN_H_
#define GECX_ALIGN_H_

#include <cstddef>
#include <vector>

#include "gecx/textnorm.h"
#include "gecx/tokenizer.h"

namespace gecx {

std::size_t levenshtein_distance(TextView a, TextView b);

// 1 - distance / max(|a|, |b|); 1 when both are empty.
double levenshtein_similarity(TextView a, TextView b);

// Arguments must already be alignment-normalized.
//   1.0   exact match
//   0.75  equal after trimming whitespace
//   0.5 * levenshtein_similarity otherwise
double span_cost(TextView subword, TextView span);

// Longest gold span a subword of the given length may absorb.
constexpr std::size_t max_span_length(std::size_t subword_length) {
  return 8 + 3 * subword_length;
}

struct Span {
  // Offsets into the gold text, in code points.
  std::size_t start = 0;
  std::size_t length = 0;
  Text text;
};

struct Alignment {
  std::vector<Span> spans;  // one per subword
  double total_weight = 0.0;
};

// Maximum-weight alignment. Every non-whitespace gold character is consumed;
// trailing whitespace may be left over. A word-initial subword only takes
// spans opening at whitespace (or at the start of the gold text). Ties prefer
// the shorter span for the earlier subword. Throws AlignmentError when no
// complete alignment exists.
Alignment align(const std::vector<Text>& subwords, TextView gold);
Alignment align(const SubwordSequence& subwords, TextView gold);

// Exhaustive enumeration over all span partitions, for testing `align`.
// Throws std::invalid_argument beyond 5 subwords or 16 gold characters.
Alignment align_bruteforce(const std::vector<Text>& subwords, TextView gold);

}  // namespace gecx

#endif  // GECX_ALIGN_H_
