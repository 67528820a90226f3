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

// gecx: induce transformation dictionaries from parallel GEC corpora, encode
// and decode label sequences, score corrections and run oracle analyses.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gecx/corpus.h"
#include "gecx/error.h"
#include "gecx/evaluate.h"
#include "gecx/parallel.h"
#include "gecx/rng.h"
#include "gecx/tokenizer.h"
#include "gecx/transform.h"
#include "manifest.h"

namespace gecx::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TokenizerOptions {
  std::string kind = "word";
  std::string vocab;
  std::size_t chunk = 3;
  bool no_unknown_fallback = false;
  std::string casing = "cased";
};

void add_tokenizer_options(CLI::App* cmd, TokenizerOptions& opt) {
  cmd->add_option("--tokenizer", opt.kind, "Subword segmentation")
      ->check(CLI::IsMember({"vocab", "word", "chars"}))
      ->capture_default_str();
  cmd->add_option("--vocab", opt.vocab,
                  "Vocabulary file (one piece per line) for --tokenizer vocab");
  cmd->add_option("--chunk", opt.chunk, "Chunk length for --tokenizer chars")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--no-unknown-fallback", opt.no_unknown_fallback,
                "Fail on characters the vocabulary cannot cover");
  cmd->add_option("--casing", opt.casing, "Tokenizer casing mode")
      ->check(CLI::IsMember({"cased", "uncased"}))
      ->capture_default_str();
}

Tokenizer make_tokenizer(const TokenizerOptions& opt) {
  const CasingMode casing = parse_casing(opt.casing);
  if (opt.kind == "vocab") {
    if (opt.vocab.empty()) throw UsageError("--tokenizer vocab needs --vocab");
    auto vocab = std::make_shared<const Vocabulary>(Vocabulary::load(opt.vocab));
    return Tokenizer(VocabGreedy{vocab, !opt.no_unknown_fallback}, casing);
  }
  if (opt.kind == "chars") return Tokenizer(CharChunks{opt.chunk}, casing);
  return Tokenizer(WholeWords{}, casing);
}

std::vector<SentencePair> read_corpus(const fs::path& path,
                                      const std::string& format,
                                      std::size_t annotator) {
  const std::string contents = read_file(path);
  const bool m2 = format == "m2" || (format == "auto" && path.extension() == ".m2");
  std::vector<SentencePair> pairs =
      m2 ? parse_m2(contents, annotator) : parse_tsv(contents);
  if (pairs.empty()) throw FormatError("corpus " + path.string() + " is empty");
  return pairs;
}

// Sentences from a plain text file, or the source side of a corpus file.
std::vector<Text> read_sentences(const fs::path& path, const std::string& format,
                                 std::size_t annotator) {
  const bool corpus = format == "m2" || format == "tsv" ||
                      (format == "auto" && (path.extension() == ".m2" ||
                                            path.extension() == ".tsv"));
  if (!corpus) return parse_lines(read_file(path));
  std::vector<Text> sentences;
  for (SentencePair& pair : read_corpus(path, format, annotator)) {
    sentences.push_back(std::move(pair.source));
  }
  return sentences;
}

std::vector<AlignedSentence> prepare_all(const std::vector<SentencePair>& pairs,
                                         const Tokenizer& tokenizer) {
  std::vector<AlignedSentence> aligned(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    aligned[i] = prepare(pairs[i].source, pairs[i].gold, tokenizer);
  });
  return aligned;
}

void check_casing(const CLI::App* cmd, const TokenizerOptions& opt,
                  const TransformationDictionary& dict) {
  if (cmd->count("--casing") > 0 && parse_casing(opt.casing) != dict.casing()) {
    throw UsageError("--casing " + opt.casing + " does not match the dictionary (" +
                     std::string(to_string(dict.casing())) + ")");
  }
}

void check_mode(const std::string& requested, const TransformationDictionary& dict) {
  if (!requested.empty() && parse_granularity(requested) != dict.mode()) {
    throw UsageError("--mode " + requested + " does not match the dictionary (" +
                     to_string(dict.mode()) + ")");
  }
}

std::string format_labels(const std::vector<LabelId>& labels) {
  std::string line;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) line.push_back(' ');
    line += std::to_string(labels[i]);
  }
  return line;
}

std::vector<std::vector<LabelId>> parse_labels(const std::string& contents) {
  std::vector<std::vector<LabelId>> out;
  std::istringstream in(contents);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<LabelId> labels;
    std::string token;
    while (fields >> token) {
      LabelId id = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw FormatError("invalid label id '" + token + "'", line_no);
      }
      labels.push_back(id);
    }
    out.push_back(std::move(labels));
  }
  return out;
}

std::string join_lines(const std::vector<Text>& sentences) {
  std::string out;
  for (const Text& s : sentences) {
    out += to_utf8(s);
    out += '\n';
  }
  return out;
}

struct Common {
  std::uint64_t seed = 0;
  std::string format = "auto";
  std::size_t annotator = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for every random choice")
      ->capture_default_str();
  cmd->add_option("--format", c.format, "Corpus format")
      ->check(CLI::IsMember({"auto", "m2", "tsv"}))
      ->capture_default_str();
  cmd->add_option("--annotator", c.annotator, "M2 annotator to use as gold")
      ->capture_default_str();
}

RunManifest manifest_for(const std::string& command,
                         const std::vector<std::string>& args, std::uint64_t seed) {
  RunManifest m;
  m.command = command;
  m.args = args;
  m.seed = seed;
  return m;
}

int run(int argc, char** argv) {
  CLI::App app{"Character and string transformations for GEC corpora", "gecx"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  const std::vector<std::string> args(argv + 1, argv + argc);

  Common common;
  TokenizerOptions tok;

  // induce
  auto* induce_cmd = app.add_subcommand("induce", "Induce a transformation dictionary");
  std::vector<std::string> induce_corpora;
  std::string mode_name = "char-at-subword";
  std::size_t min_count = 1;
  std::vector<std::string> synthetic_paths;
  std::size_t synthetic_limit = 1000;
  std::size_t truncate = 0;
  std::string out_path;
  induce_cmd->add_option("corpus", induce_corpora, "Authentic corpora (.m2 or TSV)")
      ->required();
  induce_cmd->add_option("--mode", mode_name, "Transformation granularity")
      ->capture_default_str();
  induce_cmd->add_option("--min-count", min_count, "Minimum occurrences to keep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  induce_cmd->add_option("--synthetic", synthetic_paths, "Synthetic corpora");
  induce_cmd->add_option("--synthetic-limit", synthetic_limit,
                         "Synthetic pairs counted")
      ->capture_default_str();
  induce_cmd->add_option("--truncate", truncate,
                         "Keep only the N most frequent entries (0 = all)");
  induce_cmd->add_option("--out", out_path, "Dictionary file")->required();
  add_tokenizer_options(induce_cmd, tok);
  add_common(induce_cmd, common);

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "Encode gold corrections as labels");
  std::string dict_path;
  std::string corpus_path;
  std::string requested_mode;
  encode_cmd->add_option("corpus", corpus_path, "Corpus (.m2 or TSV)")->required();
  encode_cmd->add_option("--dict", dict_path, "Dictionary file")->required();
  encode_cmd->add_option("--mode", requested_mode, "Expected dictionary mode");
  encode_cmd->add_option("--out", out_path, "Labels file")->required();
  add_tokenizer_options(encode_cmd, tok);
  add_common(encode_cmd, common);

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "Apply label sequences to sentences");
  std::string labels_path;
  apply_cmd->add_option("input", corpus_path,
                        "Source sentences (plain text, or source side of a corpus)")
      ->required();
  apply_cmd->add_option("--labels", labels_path, "Labels file")->required();
  apply_cmd->add_option("--dict", dict_path, "Dictionary file")->required();
  apply_cmd->add_option("--mode", requested_mode, "Expected dictionary mode");
  apply_cmd->add_option("--out", out_path, "Corrected sentences")->required();
  add_tokenizer_options(apply_cmd, tok);
  add_common(apply_cmd, common);

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score corrections against gold");
  std::string hyp_path;
  evaluate_cmd->add_option("corpus", corpus_path, "Gold corpus (.m2 or TSV)")->required();
  evaluate_cmd->add_option("--hyp", hyp_path, "Hypotheses, one per line")->required();
  evaluate_cmd->add_option("--out", out_path, "Score TSV (default: stdout)");
  add_common(evaluate_cmd, common);

  // analyze
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "Oracle upper-bound F0.5 for every transformation mode");
  std::vector<std::size_t> min_counts{1, 2, 3};
  std::vector<std::size_t> iteration_settings{1, 4};
  analyze_cmd->add_option("corpus", corpus_path, "Corpus (.m2 or TSV)")->required();
  analyze_cmd->add_option("--min-counts", min_counts, "Thresholds to sweep")
      ->capture_default_str();
  analyze_cmd->add_option("--iterations", iteration_settings,
                          "Iteration settings to sweep")
      ->capture_default_str();
  analyze_cmd->add_option("--synthetic", synthetic_paths, "Synthetic corpora");
  analyze_cmd->add_option("--synthetic-limit", synthetic_limit,
                          "Synthetic pairs counted")
      ->capture_default_str();
  analyze_cmd->add_option("--truncate", truncate,
                          "Compare dictionaries truncated to N entries (0 = all)");
  analyze_cmd->add_option("--out", out_path, "Analysis TSV (default: stdout)");
  add_tokenizer_options(analyze_cmd, tok);
  add_common(analyze_cmd, common);

  // corrupt
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Generate synthetic error pairs");
  std::string config_path;
  std::string neighbors_path;
  std::string out_format = "tsv";
  corrupt_cmd->add_option("input", corpus_path, "Clean sentences, one per line")
      ->required();
  corrupt_cmd->add_option("--config", config_path, "key=value corruption config");
  corrupt_cmd->add_option("--neighbors", neighbors_path,
                          "Keyboard neighbor map (<char>\\t<neighbors>)");
  corrupt_cmd->add_option("--output-format", out_format, "Output corpus format")
      ->check(CLI::IsMember({"tsv", "m2"}))
      ->capture_default_str();
  corrupt_cmd->add_option("--out", out_path, "Output corpus")->required();
  corrupt_cmd->add_option("--seed", common.seed,
                          "Seed (overrides the config file's seed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (induce_cmd->parsed()) {
    const GranularityMode mode = parse_granularity(mode_name);
    const Tokenizer tokenizer = make_tokenizer(tok);
    RunManifest manifest = manifest_for("induce", args, common.seed);
    std::vector<SentencePair> authentic;
    for (const std::string& path : induce_corpora) {
      auto pairs = read_corpus(path, common.format, common.annotator);
      authentic.insert(authentic.end(), pairs.begin(), pairs.end());
      manifest.inputs.emplace_back(path);
    }
    std::vector<SentencePair> synthetic;
    for (const std::string& path : synthetic_paths) {
      auto pairs = read_corpus(path, common.format, common.annotator);
      synthetic.insert(synthetic.end(), pairs.begin(), pairs.end());
      manifest.inputs.emplace_back(path);
    }
    if (synthetic.size() > synthetic_limit) synthetic.resize(synthetic_limit);
    if (!tok.vocab.empty()) manifest.inputs.emplace_back(tok.vocab);
    InductionReport report;
    TransformationDictionary dict =
        induce(prepare_all(authentic, tokenizer), prepare_all(synthetic, tokenizer),
               mode, min_count, synthetic_limit, &report);
    if (truncate > 0) dict = dict.truncated(truncate);
    for (const std::string& d : report.diagnostics) {
      std::cerr << "gecx induce: skipped " << d << "\n";
    }
    dict.save(out_path);
    manifest.outputs.emplace_back(out_path);
    manifest.write_next_to(out_path);
    std::cerr << "gecx induce: " << dict.size() << " entries from "
              << report.authentic_pairs + report.synthetic_pairs << " pairs ("
              << report.skipped_pairs << " skipped)\n";
    return 0;
  }

  if (encode_cmd->parsed()) {
    const TransformationDictionary dict = TransformationDictionary::load(dict_path);
    check_mode(requested_mode, dict);
    check_casing(encode_cmd, tok, dict);
    tok.casing = std::string(to_string(dict.casing()));
    const Tokenizer tokenizer = make_tokenizer(tok);
    const std::vector<SentencePair> pairs =
        read_corpus(corpus_path, common.format, common.annotator);
    std::vector<std::string> lines(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
      LabeledSentence labeled = encode(pairs[i].source, pairs[i].gold, tokenizer,
                                       dict, derive_seed(common.seed, i));
      lines[i] = format_labels(labeled.labels);
    });
    std::string out;
    for (const std::string& line : lines) out += line + "\n";
    write_file(out_path, out);
    RunManifest manifest = manifest_for("encode", args, common.seed);
    manifest.inputs = {corpus_path, dict_path};
    if (!tok.vocab.empty()) manifest.inputs.emplace_back(tok.vocab);
    manifest.outputs = {out_path};
    manifest.write_next_to(out_path);
    return 0;
  }

  if (apply_cmd->parsed()) {
    const TransformationDictionary dict = TransformationDictionary::load(dict_path);
    check_mode(requested_mode, dict);
    check_casing(apply_cmd, tok, dict);
    tok.casing = std::string(to_string(dict.casing()));
    const Tokenizer tokenizer = make_tokenizer(tok);
    const std::vector<Text> sentences =
        read_sentences(corpus_path, common.format, common.annotator);
    const auto labels = parse_labels(read_file(labels_path));
    if (labels.size() != sentences.size()) {
      throw FormatError("labels file has " + std::to_string(labels.size()) +
                        " lines for " + std::to_string(sentences.size()) +
                        " sentences");
    }
    std::vector<Text> corrected(sentences.size());
    parallel_for(sentences.size(), [&](std::size_t i) {
      try {
        corrected[i] = apply_labels(sentences[i], labels[i], tokenizer, dict);
      } catch (const std::out_of_range& e) {
        throw FormatError(e.what(), i + 1);
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what(), i + 1);
      }
    });
    write_file(out_path, join_lines(corrected));
    RunManifest manifest = manifest_for("apply", args, common.seed);
    manifest.inputs = {corpus_path, labels_path, dict_path};
    if (!tok.vocab.empty()) manifest.inputs.emplace_back(tok.vocab);
    manifest.outputs = {out_path};
    manifest.write_next_to(out_path);
    return 0;
  }

  if (evaluate_cmd->parsed()) {
    const std::vector<SentencePair> pairs =
        read_corpus(corpus_path, common.format, common.annotator);
    const std::vector<Text> hypotheses = parse_lines(read_file(hyp_path));
    if (hypotheses.size() != pairs.size()) {
      throw FormatError("hypothesis file has " + std::to_string(hypotheses.size()) +
                        " lines for " + std::to_string(pairs.size()) + " sentences");
    }
    const EvalCounts counts = score(pairs, hypotheses);
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer), "%zu\t%zu\t%zu\t%.4f\t%.4f\t%.4f\n",
                  counts.true_positives, counts.false_positives,
                  counts.false_negatives, counts.precision(), counts.recall(),
                  counts.f_half());
    const std::string report = std::string("tp\tfp\tfn\tprecision\trecall\tf0.5\n") + buffer;
    if (out_path.empty()) {
      std::cout << report;
    } else {
      write_file(out_path, report);
      RunManifest manifest = manifest_for("evaluate", args, common.seed);
      manifest.inputs = {corpus_path, hyp_path};
      manifest.outputs = {out_path};
      manifest.write_next_to(out_path);
    }
    return 0;
  }

  if (analyze_cmd->parsed()) {
    const Tokenizer tokenizer = make_tokenizer(tok);
    const std::vector<SentencePair> pairs =
        read_corpus(corpus_path, common.format, common.annotator);
    std::vector<SentencePair> synthetic;
    for (const std::string& path : synthetic_paths) {
      auto more = read_corpus(path, common.format, common.annotator);
      synthetic.insert(synthetic.end(), more.begin(), more.end());
    }
    if (synthetic.size() > synthetic_limit) synthetic.resize(synthetic_limit);
    const std::vector<AlignedSentence> aligned = prepare_all(pairs, tokenizer);
    const std::vector<AlignedSentence> aligned_synthetic =
        prepare_all(synthetic, tokenizer);
    std::string report = analysis_header();
    for (GranularityMode mode : all_granularities()) {
      for (std::size_t threshold : min_counts) {
        if (threshold == 0) throw UsageError("--min-counts values must be >= 1");
        TransformationDictionary dict = induce(aligned, aligned_synthetic, mode,
                                               threshold, synthetic_limit);
        if (truncate > 0) dict = dict.truncated(truncate);
        for (std::size_t iterations : iteration_settings) {
          if (iterations == 0) throw UsageError("--iterations values must be >= 1");
          report += format_analysis_row(
              oracle_upper_bound(aligned, tokenizer, dict, common.seed, iterations));
        }
      }
    }
    if (out_path.empty()) {
      std::cout << report;
    } else {
      write_file(out_path, report);
      RunManifest manifest = manifest_for("analyze", args, common.seed);
      manifest.inputs.emplace_back(corpus_path);
      for (const std::string& p : synthetic_paths) manifest.inputs.emplace_back(p);
      if (!tok.vocab.empty()) manifest.inputs.emplace_back(tok.vocab);
      manifest.outputs = {out_path};
      manifest.write_next_to(out_path);
    }
    return 0;
  }

  if (corrupt_cmd->parsed()) {
    CorruptionConfig config;
    RunManifest manifest = manifest_for("corrupt", args, 0);
    manifest.inputs.emplace_back(corpus_path);
    if (!config_path.empty()) {
      config = CorruptionConfig::parse(read_file(config_path));
      manifest.inputs.emplace_back(config_path);
    }
    if (corrupt_cmd->count("--seed") > 0) config.seed = common.seed;
    manifest.seed = config.seed;
    NeighborMap neighbors;
    if (!neighbors_path.empty()) {
      neighbors = parse_neighbors(read_file(neighbors_path));
      manifest.inputs.emplace_back(neighbors_path);
    }
    const std::vector<Text> golds = parse_lines(read_file(corpus_path));
    std::vector<SentencePair> pairs =
        corrupt_all(golds, config, neighbors_path.empty() ? nullptr : &neighbors);
    if (out_format == "m2") {
      for (SentencePair& pair : pairs) {
        for (TokenEdit& e : extract_edits(split_whitespace(pair.source),
                                          split_whitespace(pair.gold))) {
          GoldEdit edit;
          edit.start_token = static_cast<std::int64_t>(e.start);
          edit.end_token = static_cast<std::int64_t>(e.end);
          edit.type_tag = "UNK";
          edit.correction = std::move(e.correction);
          pair.gold_edits.push_back(std::move(edit));
        }
      }
      write_file(out_path, serialize_m2(pairs));
    } else {
      write_file(out_path, serialize_tsv(pairs));
    }
    manifest.outputs = {out_path};
    manifest.write_next_to(out_path);
    return 0;
  }
  return 2;
}

}  // namespace
}  // namespace gecx::cli

int main(int argc, char** argv) {
  try {
    return gecx::cli::run(argc, argv);
  } catch (const gecx::FormatError& e) {
    std::cerr << "gecx: " << e.what() << "\n";
    return 2;
  } catch (const gecx::cli::UsageError& e) {
    std::cerr << "gecx: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gecx: internal error: " << e.what() << "\n";
    return 1;
  }
}
