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

#include "gecx/align.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gecx/error.h"

namespace gecx {
namespace {

constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

bool all_space(TextView text) {
  return std::all_of(text.begin(), text.end(),
                     [](char32_t c) { return c == U' '; });
}

std::vector<Text> normalize_all(const std::vector<Text>& subwords) {
  std::vector<Text> out;
  out.reserve(subwords.size());
  for (const Text& s : subwords) out.push_back(alignment_normalize(s));
  return out;
}

// A word-initial subword may only take a span that opens at a word
// boundary, so material between words is attached to the word it follows.
bool may_open_span(TextView subword, TextView gold, std::size_t j) {
  return j == 0 || subword.empty() || subword[0] != U' ' || gold[j] == U' ';
}

// Trailing-whitespace feasibility of the gold suffix starting at j.
std::vector<bool> whitespace_suffix(TextView gold) {
  std::vector<bool> ok(gold.size() + 1, false);
  ok[gold.size()] = true;
  for (std::size_t j = gold.size(); j-- > 0;) {
    ok[j] = ok[j + 1] && gold[j] == U' ';
  }
  return ok;
}

Alignment to_alignment(const NormalizedView& view,
                       const std::vector<std::size_t>& lengths,
                       double weight) {
  Alignment result;
  result.total_weight = weight;
  std::size_t j = 0;
  for (std::size_t len : lengths) {
    Span span;
    span.start = view.original_boundary(j);
    std::size_t end = view.original_boundary(j + len);
    span.length = end - span.start;
    span.text = view.original.substr(span.start, span.length);
    result.spans.push_back(std::move(span));
    j += len;
  }
  return result;
}

void check_inputs(const std::vector<Text>& subwords, TextView gold) {
  if (subwords.empty()) throw std::invalid_argument("no subwords to align");
  if (trim(gold).empty()) {
    throw AlignmentError("gold text is empty or whitespace-only");
  }
}

}  // namespace

std::size_t levenshtein_distance(TextView a, TextView b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = up;
    }
  }
  return row[b.size()];
}

double levenshtein_similarity(TextView a, TextView b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein_distance(a, b)) /
                   static_cast<double>(longest);
}

double span_cost(TextView subword, TextView span) {
  if (subword == span) return 1.0;
  if (trim(subword) == trim(span)) return 0.75;
  return 0.5 * levenshtein_similarity(subword, span);
}

Alignment align(const std::vector<Text>& subwords, TextView gold) {
  check_inputs(subwords, gold);
  const std::vector<Text> sub = normalize_all(subwords);
  const NormalizedView view = alignment_view(gold);
  const Text& g = view.normalized;
  const std::size_t n = sub.size();
  const std::size_t m = g.size();
  const std::size_t stride = m + 1;

  // weight[i * stride + j]: best weight aligning subwords i.. to gold j..
  std::vector<double> weight((n + 1) * stride, kUnreachable);
  std::vector<std::size_t> choice((n + 1) * stride, 0);
  const std::vector<bool> tail_ok = whitespace_suffix(g);
  for (std::size_t j = 0; j <= m; ++j) {
    if (tail_ok[j]) weight[n * stride + j] = 0.0;
  }

  std::vector<std::size_t> prev_row;
  std::vector<std::size_t> row;
  for (std::size_t i = n; i-- > 0;) {
    const Text& s = sub[i];
    const TextView s_trimmed = trim(s);
    const std::size_t bound = max_span_length(s.size());
    for (std::size_t j = m + 1; j-- > 0;) {
      double best = weight[(i + 1) * stride + j];
      std::size_t best_len = 0;
      const std::size_t max_len =
          j < m && may_open_span(s, g, j) ? std::min(m - j, bound) : 0;
      // Levenshtein rows of s against the growing span g[j, j + len).
      prev_row.resize(s.size() + 1);
      row.resize(s.size() + 1);
      std::iota(prev_row.begin(), prev_row.end(), std::size_t{0});
      bool span_blank = true;
      for (std::size_t len = 1; len <= max_len; ++len) {
        const char32_t gc = g[j + len - 1];
        row[0] = len;
        for (std::size_t k = 1; k <= s.size(); ++k) {
          row[k] = std::min({prev_row[k] + 1, row[k - 1] + 1,
                             prev_row[k - 1] + (s[k - 1] == gc ? 0 : 1)});
        }
        std::swap(prev_row, row);
        span_blank = span_blank && gc == U' ';
        if (span_blank) continue;
        const double rest = weight[(i + 1) * stride + j + len];
        if (rest == kUnreachable) continue;
        const TextView span = TextView(g).substr(j, len);
        double cost;
        if (span == TextView(s)) {
          cost = 1.0;
        } else if (trim(span) == s_trimmed) {
          cost = 0.75;
        } else {
          const std::size_t longest = std::max(s.size(), len);
          cost = 0.5 * (1.0 - static_cast<double>(prev_row[s.size()]) /
                                  static_cast<double>(longest));
        }
        const double candidate = cost + rest;
        if (candidate > best) {
          best = candidate;
          best_len = len;
        }
      }
      weight[i * stride + j] = best;
      choice[i * stride + j] = best_len;
    }
  }

  if (weight[0] == kUnreachable) {
    throw AlignmentError(
        "no complete alignment within the span length bound");
  }
  std::vector<std::size_t> lengths;
  lengths.reserve(n);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t len = choice[i * stride + j];
    lengths.push_back(len);
    j += len;
  }
  return to_alignment(view, lengths, weight[0]);
}

Alignment align(const SubwordSequence& subwords, TextView gold) {
  return align(subwords.texts(), gold);
}

namespace {

struct BruteForce {
  const std::vector<Text>& sub;
  const Text& g;
  std::vector<std::size_t> current;
  std::vector<std::size_t> best_lengths;
  double best = kUnreachable;

  // Returns the best weight for subwords i.. from gold offset j, summing
  // right to left so values match the dynamic program bit for bit.
  double search(std::size_t i, std::size_t j) {
    if (i == sub.size()) {
      return all_space(TextView(g).substr(j)) ? 0.0 : kUnreachable;
    }
    double best_here = search(i + 1, j);
    if (j < g.size() && !may_open_span(sub[i], g, j)) return best_here;
    const std::size_t bound = max_span_length(sub[i].size());
    for (std::size_t len = 1; j + len <= g.size() && len <= bound; ++len) {
      const TextView span = TextView(g).substr(j, len);
      if (all_space(span)) continue;
      const double rest = search(i + 1, j + len);
      if (rest == kUnreachable) continue;
      best_here = std::max(best_here, span_cost(sub[i], span) + rest);
    }
    return best_here;
  }

  // Enumerates every complete partition and keeps the first one, in
  // shorter-span-first order, that reaches the optimum.
  void collect(std::size_t i, std::size_t j, double target) {
    if (!best_lengths.empty()) return;
    if (i == sub.size()) {
      if (!all_space(TextView(g).substr(j))) return;
      std::vector<double> costs(sub.size());
      std::size_t pos = 0;
      for (std::size_t t = 0; t < sub.size(); ++t) {
        const std::size_t len = current[t];
        costs[t] =
            len == 0 ? 0.0 : span_cost(sub[t], TextView(g).substr(pos, len));
        pos += len;
      }
      double total = 0.0;
      for (std::size_t k = sub.size(); k-- > 0;) {
        total = current[k] == 0 ? total : costs[k] + total;
      }
      if (total == target) best_lengths = current;
      return;
    }
    const std::size_t bound = max_span_length(sub[i].size());
    current.push_back(0);
    collect(i + 1, j, target);
    if (j < g.size() && !may_open_span(sub[i], g, j)) {
      current.pop_back();
      return;
    }
    for (std::size_t len = 1; j + len <= g.size() && len <= bound; ++len) {
      if (all_space(TextView(g).substr(j, len))) continue;
      current.back() = len;
      collect(i + 1, j + len, target);
    }
    current.pop_back();
  }
};

}  // namespace

Alignment align_bruteforce(const std::vector<Text>& subwords, TextView gold) {
  if (subwords.size() > 5 || gold.size() > 16) {
    throw std::invalid_argument("align_bruteforce: instance too large");
  }
  check_inputs(subwords, gold);
  const std::vector<Text> sub = normalize_all(subwords);
  const NormalizedView view = alignment_view(gold);
  BruteForce bf{sub, view.normalized, {}, {}, kUnreachable};
  const double best = bf.search(0, 0);
  if (best == kUnreachable) {
    throw AlignmentError("no complete alignment within the span length bound");
  }
  bf.collect(0, 0, best);
  return to_alignment(view, bf.best_lengths, best);
}

}  // namespace gecx
