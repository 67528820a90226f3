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

#include "gecx/evaluate.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "gecx/editscript.h"
#include "gecx/parallel.h"
#include "gecx/rng.h"

namespace gecx {
namespace {

Text normalized_sentence(TextView text) {
  return join(split_whitespace(nfc(text)), U" ");
}

}  // namespace

double f_beta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denominator = b2 * precision + recall;
  if (denominator == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denominator;
}

double f_beta(std::size_t tp, std::size_t fp, std::size_t fn, double beta) {
  EvalCounts counts{tp, fp, fn};
  return f_beta(counts.precision(), counts.recall(), beta);
}

double EvalCounts::precision() const {
  const std::size_t proposed = true_positives + false_positives;
  if (proposed == 0) return 1.0;
  return static_cast<double>(true_positives) / static_cast<double>(proposed);
}

double EvalCounts::recall() const {
  const std::size_t expected = true_positives + false_negatives;
  if (expected == 0) return 1.0;
  return static_cast<double>(true_positives) / static_cast<double>(expected);
}

EvalCounts& EvalCounts::operator+=(const EvalCounts& other) {
  true_positives += other.true_positives;
  false_positives += other.false_positives;
  false_negatives += other.false_negatives;
  return *this;
}

std::vector<TokenEdit> extract_edits(const std::vector<Text>& source_tokens,
                                     const std::vector<Text>& hypothesis_tokens) {
  const std::vector<ScriptStep> steps = levenshtein_backtrace(
      source_tokens.size(), hypothesis_tokens.size(),
      [&](std::size_t i, std::size_t j) {
        return source_tokens[i] == hypothesis_tokens[j];
      });

  std::vector<TokenEdit> edits;
  bool open = false;
  bool consumed = false;
  std::vector<Text> words;
  auto close = [&] {
    if (!open) return;
    edits.back().correction = join(words, U" ");
    words.clear();
    open = false;
    consumed = false;
  };
  for (const ScriptStep& step : steps) {
    if (step.op == ScriptOp::kMatch) {
      close();
      continue;
    }
    const bool consumes = step.op != ScriptOp::kInsert;
    if (open && consumes && consumed) close();
    if (!open) {
      // Gap p and source token p both start at 0-based offset p - 1.
      const std::size_t start = step.source_position - 1;
      edits.push_back({start, start, Text()});
      open = true;
    }
    if (consumes) {
      edits.back().end = step.source_position;
      consumed = true;
    }
    if (step.op != ScriptOp::kDelete) {
      words.push_back(hypothesis_tokens[step.target_position - 1]);
    }
  }
  close();
  return edits;
}

EvalCounts score_sentence(TextView source, TextView hypothesis, TextView gold) {
  const std::vector<Text> src = split_whitespace(source);
  std::vector<TokenEdit> proposed = extract_edits(src, split_whitespace(hypothesis));
  std::vector<TokenEdit> expected = extract_edits(src, split_whitespace(gold));
  EvalCounts counts;
  std::vector<bool> used(expected.size(), false);
  for (const TokenEdit& edit : proposed) {
    bool hit = false;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (!used[k] && expected[k] == edit) {
        used[k] = true;
        hit = true;
        break;
      }
    }
    if (hit) {
      ++counts.true_positives;
    } else {
      ++counts.false_positives;
    }
  }
  counts.false_negatives = expected.size() - counts.true_positives;
  return counts;
}

EvalCounts score(const std::vector<SentencePair>& pairs,
                 const std::vector<Text>& hypotheses) {
  if (pairs.size() != hypotheses.size()) {
    throw std::invalid_argument("got " + std::to_string(hypotheses.size()) +
                                " hypotheses for " +
                                std::to_string(pairs.size()) + " sentences");
  }
  std::vector<EvalCounts> per_sentence(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    per_sentence[i] = score_sentence(pairs[i].source, hypotheses[i], pairs[i].gold);
  });
  EvalCounts total;
  for (const EvalCounts& c : per_sentence) total += c;
  return total;
}

std::vector<LabelId> KeepClassifier::predict(const std::vector<Text>& units,
                                             TextView) const {
  return std::vector<LabelId>(units.size(), kKeepId);
}

OracleClassifier::OracleClassifier(const Tokenizer& tokenizer,
                                   const TransformationDictionary& dict,
                                   Text gold, std::uint64_t seed)
    : tokenizer_(tokenizer), dict_(dict), gold_(std::move(gold)), seed_(seed) {}

std::vector<LabelId> OracleClassifier::predict(const std::vector<Text>& units,
                                               TextView sentence) const {
  LabeledSentence labeled = encode(sentence, gold_, tokenizer_, dict_, seed_);
  if (labeled.units != units) return std::vector<LabelId>(units.size(), kKeepId);
  return labeled.labels;
}

FrequencyClassifier FrequencyClassifier::train(
    const std::vector<LabeledSentence>& data) {
  std::unordered_map<Text, std::map<LabelId, std::size_t>> counts;
  for (const LabeledSentence& sentence : data) {
    for (std::size_t i = 0; i < sentence.units.size(); ++i) {
      ++counts[sentence.units[i]][sentence.labels[i]];
    }
  }
  FrequencyClassifier classifier;
  for (const auto& [unit, by_label] : counts) {
    // Ties go to the smaller id, i.e. the more frequent dictionary entry.
    auto best = std::max_element(
        by_label.begin(), by_label.end(), [](const auto& a, const auto& b) {
          return a.second < b.second || (a.second == b.second && a.first > b.first);
        });
    if (best->first != kUncorrectableId) classifier.best_[unit] = best->first;
  }
  return classifier;
}

std::vector<LabelId> FrequencyClassifier::predict(const std::vector<Text>& units,
                                                  TextView) const {
  std::vector<LabelId> labels;
  labels.reserve(units.size());
  for (const Text& unit : units) {
    auto it = best_.find(unit);
    labels.push_back(it == best_.end() ? kKeepId : it->second);
  }
  return labels;
}

IterationResult iterate_correct(TextView sentence, const Classifier& classifier,
                                const Tokenizer& tokenizer,
                                const TransformationDictionary& dict,
                                std::size_t max_iterations) {
  if (max_iterations == 0) throw std::invalid_argument("max_iterations must be >= 1");
  IterationResult result{normalized_sentence(sentence), 0};
  for (std::size_t round = 1; round <= max_iterations; ++round) {
    result.iterations_used = round;
    std::vector<SourceUnit> units =
        source_units(tokenizer.tokenize(result.text), dict.mode().unit);
    std::vector<Text> texts;
    texts.reserve(units.size());
    for (const SourceUnit& u : units) texts.push_back(u.text);
    Text next = apply_labels(units, classifier.predict(texts, result.text), dict);
    if (next == result.text) break;
    result.text = std::move(next);
  }
  return result;
}

std::vector<Text> oracle_hypotheses(const std::vector<AlignedSentence>& corpus,
                                    const Tokenizer& tokenizer,
                                    const TransformationDictionary& dict,
                                    std::uint64_t seed, std::size_t iterations) {
  if (iterations == 0) throw std::invalid_argument("iterations must be >= 1");
  std::vector<Text> hypotheses(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    const AlignedSentence& sentence = corpus[i];
    const std::uint64_t sentence_seed = derive_seed(seed, i);
    LabeledSentence labeled = encode(sentence, dict, sentence_seed);
    Text hypothesis = apply_labels(
        source_units(sentence.subwords, dict.mode().unit), labeled.labels, dict);
    // Reaching the gold sentence is a fixed point of the oracle, so only
    // unfinished sentences need further rounds.
    if (iterations > 1 && hypothesis != sentence.gold &&
        hypothesis != normalized_sentence(sentence.subwords.source_sentence)) {
      OracleClassifier oracle(tokenizer, dict, sentence.gold, sentence_seed);
      hypothesis =
          iterate_correct(hypothesis, oracle, tokenizer, dict, iterations - 1).text;
    }
    hypotheses[i] = std::move(hypothesis);
  });
  return hypotheses;
}

OracleAnalysisRow oracle_upper_bound(const std::vector<AlignedSentence>& corpus,
                                     const Tokenizer& tokenizer,
                                     const TransformationDictionary& dict,
                                     std::uint64_t seed, std::size_t iterations) {
  const std::vector<Text> hypotheses =
      oracle_hypotheses(corpus, tokenizer, dict, seed, iterations);
  std::vector<EvalCounts> per_sentence(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    per_sentence[i] = score_sentence(corpus[i].subwords.source_sentence,
                                     hypotheses[i], corpus[i].gold);
  });
  OracleAnalysisRow row;
  row.mode = dict.mode();
  row.casing = dict.casing();
  row.min_count = dict.min_count();
  row.iterations = iterations;
  row.dictionary_size = dict.size();
  for (const EvalCounts& c : per_sentence) row.counts += c;
  return row;
}

std::string analysis_header() {
  return "mode\tcasing\tmin_count\titerations\tdict_size\tprecision\trecall\tf0.5\n";
}

std::string format_analysis_row(const OracleAnalysisRow& row) {
  char numbers[96];
  std::snprintf(numbers, sizeof(numbers), "%.4f\t%.4f\t%.4f",
                row.counts.precision(), row.counts.recall(), row.counts.f_half());
  return to_string(row.mode) + "\t" + std::string(to_string(row.casing)) + "\t" +
         std::to_string(row.min_count) + "\t" + std::to_string(row.iterations) +
         "\t" + std::to_string(row.dictionary_size) + "\t" + numbers + "\n";
}

}  // namespace gecx
