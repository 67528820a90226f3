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

// Edit-level scoring, oracle upper-bound analysis and iterative correction.

#ifndef GECX_EVALUATE_H_
#define GECX_EVALUATE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "gecx/corpus.h"
#include "gecx/textnorm.h"
#include "gecx/tokenizer.h"
#include "gecx/transform.h"

namespace gecx {

// F-beta from precision and recall; 0 when both are 0.
double f_beta(double precision, double recall, double beta);

struct EvalCounts {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;

  // 1 when nothing was proposed.
  double precision() const;
  // 1 when there was nothing to find.
  double recall() const;
  double f_half() const { return f_beta(precision(), recall(), 0.5); }

  EvalCounts& operator+=(const EvalCounts& other);
  bool operator==(const EvalCounts&) const = default;
};

double f_beta(std::size_t tp, std::size_t fp, std::size_t fn, double beta);

struct TokenEdit {
  std::size_t start = 0;
  std::size_t end = 0;
  Text correction;  // space-joined target tokens

  bool operator==(const TokenEdit&) const = default;
};

// Token-level minimal edit script. Consecutive non-match operations are
// merged into one edit, except that each edit covers at most one source
// token; inserted tokens join the edit they are adjacent to.
std::vector<TokenEdit> extract_edits(const std::vector<Text>& source_tokens,
                                     const std::vector<Text>& hypothesis_tokens);

// Gold edits are normalized by re-extracting them from the source and the
// gold sentence, so both sides share one span convention.
EvalCounts score_sentence(TextView source, TextView hypothesis, TextView gold);
// Micro-averaged over the corpus; `pairs[i].gold` is the reference.
EvalCounts score(const std::vector<SentencePair>& pairs,
                 const std::vector<Text>& hypotheses);

class Classifier {
 public:
  virtual ~Classifier() = default;
  // One label per unit. Must be safe to call concurrently.
  virtual std::vector<LabelId> predict(const std::vector<Text>& units,
                                       TextView sentence) const = 0;
};

class KeepClassifier : public Classifier {
 public:
  std::vector<LabelId> predict(const std::vector<Text>& units,
                               TextView sentence) const override;
};

// Predicts the labels that encode the known gold correction of a sentence.
class OracleClassifier : public Classifier {
 public:
  OracleClassifier(const Tokenizer& tokenizer,
                   const TransformationDictionary& dict, Text gold,
                   std::uint64_t seed);
  std::vector<LabelId> predict(const std::vector<Text>& units,
                               TextView sentence) const override;

 private:
  const Tokenizer& tokenizer_;
  const TransformationDictionary& dict_;
  Text gold_;
  std::uint64_t seed_;
};

// Most frequent label per unit text in the training data, KEEP otherwise.
class FrequencyClassifier : public Classifier {
 public:
  static FrequencyClassifier train(const std::vector<LabeledSentence>& data);
  std::vector<LabelId> predict(const std::vector<Text>& units,
                               TextView sentence) const override;

 private:
  std::unordered_map<Text, LabelId> best_;
};

struct IterationResult {
  Text text;
  std::size_t iterations_used = 0;
};

// Tokenize, predict, apply; repeats until the output stops changing or
// max_iterations rounds ran.
IterationResult iterate_correct(TextView sentence, const Classifier& classifier,
                                const Tokenizer& tokenizer,
                                const TransformationDictionary& dict,
                                std::size_t max_iterations);

struct OracleAnalysisRow {
  GranularityMode mode;
  CasingMode casing = CasingMode::kCased;
  std::size_t min_count = 1;
  std::size_t iterations = 1;
  std::size_t dictionary_size = 0;
  EvalCounts counts;
};

// Corrections produced when every label is predicted perfectly. Sentence i
// is encoded with seed derive_seed(seed, i).
std::vector<Text> oracle_hypotheses(const std::vector<AlignedSentence>& corpus,
                                    const Tokenizer& tokenizer,
                                    const TransformationDictionary& dict,
                                    std::uint64_t seed,
                                    std::size_t iterations = 1);

OracleAnalysisRow oracle_upper_bound(const std::vector<AlignedSentence>& corpus,
                                     const Tokenizer& tokenizer,
                                     const TransformationDictionary& dict,
                                     std::uint64_t seed,
                                     std::size_t iterations = 1);

std::string analysis_header();
std::string format_analysis_row(const OracleAnalysisRow& row);

}  // namespace gecx

#endif  // GECX_EVALUATE_H_
