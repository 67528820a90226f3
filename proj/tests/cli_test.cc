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


// Runs the gecx binary end to end on small corpora.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <algorithm>
#include <set>
#include <string>

#include "gecx/corpus.h"
#include "gecx/evaluate.h"
#include "gecx/transform.h"

#ifndef GECX_BINARY
#error "GECX_BINARY must name the gecx executable"
#endif

namespace gecx {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gecx_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& contents) const {
    write_file(path(name), contents);
  }
  std::string read(const std::string& name) const { return read_file(path(name)); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(GECX_BINARY) + " " + args + " >" +
                            path("stdout.txt") + " 2>" + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::size_t dictionary_entries(const std::string& name) const {
    return TransformationDictionary::load(path(name)).size();
  }

  fs::path dir_;
};

const char kExampleTsv[] = "gatherin leafes\tGathering leaves\n";
const char kExampleVocab[] = " gathe\nrin\n lea\nfes\n";

TEST_F(CliTest, InduceWorkedExample) {
  write("fig.tsv", kExampleTsv);
  write("vocab.txt", kExampleVocab);
  ASSERT_EQ(run("induce " + path("fig.tsv") + " --tokenizer vocab --vocab " +
                path("vocab.txt") + " --casing uncased --mode char-at-subword "
                "--min-count 1 --out " + path("dict.txt")),
            0)
      << read("stderr.txt");
  const auto dict = TransformationDictionary::load(path("dict.txt"));
  ASSERT_EQ(dict.size(), 5u);
  std::set<std::string> forms;
  for (const auto& e : dict.entries()) forms.insert(e.serialized);
  EXPECT_EQ(forms, (std::set<std::string>{"UNCORRECTABLE", "KEEP", "CHAR upc@s2",
                                          "CHAR ins@e1=g", "CHAR rep@s1=v"}));
  EXPECT_TRUE(fs::exists(path("dict.txt.manifest.json")));
}

TEST_F(CliTest, HugeMinCountKeepsSpecialsOnly) {
  write("fig.tsv", kExampleTsv);
  ASSERT_EQ(run("induce " + path("fig.tsv") + " --min-count 999999 --out " +
                path("dict.txt")),
            0);
  EXPECT_EQ(dictionary_entries("dict.txt"), 2u);
}

TEST_F(CliTest, UsageAndFormatErrorsExitWithTwo) {
  write("fig.tsv", kExampleTsv);
  write("bad.tsv", "a\tb\tc\n");
  EXPECT_EQ(run("induce " + path("fig.tsv") + " --tokenizer vocab --vocab " +
                path("missing.txt") + " --out " + path("d.txt")),
            2);
  EXPECT_EQ(run("induce " + path("bad.tsv") + " --out " + path("d.txt")), 2);
  EXPECT_EQ(run("induce " + path("fig.tsv") + " --mode char-at-nothing --out " +
                path("d.txt")),
            2);
  EXPECT_EQ(run("induce"), 2);
  EXPECT_EQ(run("frobnicate"), 2);

  ASSERT_EQ(run("induce " + path("fig.tsv") + " --mode string-at-word --out " +
                path("d.txt")),
            0);
  EXPECT_EQ(run("encode " + path("fig.tsv") + " --dict " + path("d.txt") +
                " --mode char-at-subword --out " + path("l.txt")),
            2);
  EXPECT_EQ(run("encode " + path("fig.tsv") + " --dict " + path("d.txt") +
                " --casing uncased --out " + path("l.txt")),
            2);
}

TEST_F(CliTest, IdentityCorpusEncodesToKeep) {
  write("same.tsv", "one two three\tone two three\nfour\tfour\n");
  ASSERT_EQ(run("induce " + path("same.tsv") + " --out " + path("d.txt")), 0);
  ASSERT_EQ(run("encode " + path("same.tsv") + " --dict " + path("d.txt") +
                " --out " + path("l.txt")),
            0);
  EXPECT_EQ(read("l.txt"), "1 1 1\n1\n");
  ASSERT_EQ(run("apply " + path("same.tsv") + " --labels " + path("l.txt") +
                " --dict " + path("d.txt") + " --out " + path("out.txt")),
            0);
  EXPECT_EQ(read("out.txt"), "one two three\nfour\n");
}

TEST_F(CliTest, AllKeepLabelsReproduceSource) {
  write("fig.tsv", kExampleTsv);
  write("src.txt", "gatherin leafes\nsome other line\n");
  write("keep.txt", "1 1\n1 1 1\n");
  ASSERT_EQ(run("induce " + path("fig.tsv") + " --out " + path("d.txt")), 0);
  ASSERT_EQ(run("apply " + path("src.txt") + " --labels " + path("keep.txt") +
                " --dict " + path("d.txt") + " --out " + path("out.txt")),
            0);
  EXPECT_EQ(read("out.txt"), read("src.txt"));
  write("short.txt", "1 1\n");
  EXPECT_EQ(run("apply " + path("src.txt") + " --labels " + path("short.txt") +
                " --dict " + path("d.txt") + " --out " + path("out.txt")),
            2);
  write("unknown.txt", "1 1\n1 1 99\n");
  EXPECT_EQ(run("apply " + path("src.txt") + " --labels " + path("unknown.txt") +
                " --dict " + path("d.txt") + " --out " + path("out.txt")),
            2);
}

TEST_F(CliTest, PipelineMatchesOracleUpperBound) {
  std::string clean;
  for (int i = 0; i < 60; ++i) {
    clean += i % 2 ? "Příliš žluťoučký kůň úpěl ďábelské ódy.\n"
                   : "The children were walking to school together.\n";
  }
  write("clean.txt", clean);
  write("noise.cfg", "substitute_char=0.05\ndelete_char=0.03\nseed=5\n");
  ASSERT_EQ(run("corrupt " + path("clean.txt") + " --config " + path("noise.cfg") +
                " --output-format m2 --out " + path("corpus.m2")),
            0)
      << read("stderr.txt");
  const std::string tok = " --tokenizer chars --chunk 3 --casing uncased";
  ASSERT_EQ(run("induce " + path("corpus.m2") + tok + " --min-count 2 --out " +
                path("d.txt")),
            0);
  ASSERT_EQ(run("encode " + path("corpus.m2") + tok + " --dict " + path("d.txt") +
                " --seed 3 --out " + path("l.txt")),
            0);
  ASSERT_EQ(run("apply " + path("corpus.m2") + tok + " --labels " + path("l.txt") +
                " --dict " + path("d.txt") + " --out " + path("hyp.txt")),
            0);
  ASSERT_EQ(run("evaluate " + path("corpus.m2") + " --hyp " + path("hyp.txt") +
                " --out " + path("score.tsv")),
            0);

  const auto pairs = parse_m2(read("corpus.m2"));
  const Tokenizer tokenizer(CharChunks{3}, CasingMode::kUncased);
  std::vector<AlignedSentence> aligned;
  for (const auto& p : pairs) aligned.push_back(prepare(p.source, p.gold, tokenizer));
  const auto dict = TransformationDictionary::load(path("d.txt"));
  const OracleAnalysisRow row = oracle_upper_bound(aligned, tokenizer, dict, 3);
  char expected[160];
  std::snprintf(expected, sizeof(expected), "%zu\t%zu\t%zu\t%.4f\t%.4f\t%.4f\n",
                row.counts.true_positives, row.counts.false_positives,
                row.counts.false_negatives, row.counts.precision(),
                row.counts.recall(), row.counts.f_half());
  EXPECT_EQ(read("score.tsv"),
            std::string("tp\tfp\tfn\tprecision\trecall\tf0.5\n") + expected);
  EXPECT_GT(row.counts.true_positives, 0u);
}

TEST_F(CliTest, CommandsAreDeterministic) {
  std::string clean;
  for (int i = 0; i < 40; ++i) clean += "She reads many books every single week.\n";
  write("clean.txt", clean);
  for (const char* out : {"a", "b"}) {
    const std::string o(out);
    ASSERT_EQ(run("corrupt " + path("clean.txt") + " --seed 11 --out " + path(o + ".tsv")), 0);
    ASSERT_EQ(run("induce " + path(o + ".tsv") + " --out " + path(o + ".dict")), 0);
    ASSERT_EQ(run("encode " + path(o + ".tsv") + " --dict " + path(o + ".dict") +
                  " --seed 2 --out " + path(o + ".labels")),
              0);
  }
  EXPECT_EQ(read("a.tsv"), read("b.tsv"));
  EXPECT_EQ(read("a.dict"), read("b.dict"));
  EXPECT_EQ(read("a.labels"), read("b.labels"));
  EXPECT_NE(read("a.tsv").find('\t'), std::string::npos);
  const std::string manifest = read("a.labels.manifest.json");
  EXPECT_NE(manifest.find("\"sha256\""), std::string::npos);
  EXPECT_NE(manifest.find("\"seed\": 2"), std::string::npos);
}

TEST_F(CliTest, AnalyzeEmitsTwentyFourRows) {
  std::string clean;
  const char* sentences[] = {"Walking home was nice today.\n",
                             "They were going to the big market.\n",
                             "Příliš žluťoučký kůň úpěl ďábelské ódy.\n",
                             "The teacher explained the new rules.\n"};
  for (int i = 0; i < 1000; ++i) clean += sentences[i % 4];
  write("clean.txt", clean);
  ASSERT_EQ(run("corrupt " + path("clean.txt") + " --seed 1 --out " + path("c.tsv")), 0);
  ASSERT_EQ(run("analyze " + path("c.tsv") + " --tokenizer chars --chunk 3 --out " +
                path("analysis.tsv")),
            0)
      << read("stderr.txt");
  std::istringstream lines(read("analysis.tsv"));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "mode\tcasing\tmin_count\titerations\tdict_size\tprecision\trecall\tf0.5");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 7) << line;
  }
  EXPECT_EQ(rows, 24u);
}

}  // namespace
}  // namespace gecx
