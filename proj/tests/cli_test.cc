// Copyright 2026 The segrobust Authors.
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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "segrobust/io.h"

namespace segrobust::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("segrobust_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    unsetenv(kConfigEnvVar);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string File(const std::string& name, const std::string& content) {
    const auto path = (dir_ / name).string();
    std::ofstream(path, std::ios::binary) << content;
    return path;
  }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int Run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, FixedSegmentationOfTwentyFiveTokens) {
  std::string text;
  for (int i = 0; i < 25; ++i) text += "t" + std::to_string(i) + (i % 7 == 6 ? "\n" : " ");
  const auto in = File("doc.txt", text + "\n");
  ASSERT_EQ(Run({"segment", "fixed", "--n", "10", in}), kExitOk) << err_.str();
  const auto docs = [&] {
    std::istringstream s(out_.str());
    return ReadDocuments(s);
  }();
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].size(), 3u);
  // Concatenated output lines reproduce the input token stream.
  std::istringstream orig(text);
  EXPECT_EQ(Flatten(docs[0]).tokens, Flatten(ReadDocuments(orig)[0]).tokens);
}

TEST_F(CliTest, ResegmentedScoreOfRelineatedTextIsHundred) {
  const auto ref = File("ref.txt", "Das Wetter heute war warm .\nEs regnete nicht .\n");
  const auto hyp = File("hyp.txt", "Das Wetter\nheute war warm . Es regnete\nnicht .\n");
  ASSERT_EQ(Run({"score", "--resegment", hyp, ref}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("BLEU      100.00"), std::string::npos) << out_.str();

  ASSERT_EQ(Run({"score", "--resegment", "--format", "jsonl", hyp, ref}), kExitOk);
  const auto j = nlohmann::json::parse(out_.str());
  EXPECT_EQ(j.at("score").get<double>(), 100.0);
}

TEST_F(CliTest, PlainScoreNeedsMatchingSegmentCounts) {
  const auto ref = File("ref.txt", "a b c d\ne f g h\n");
  const auto hyp = File("hyp.txt", "a b c d e f g h\n");
  EXPECT_EQ(Run({"score", hyp, ref}), kExitMalformedInput);
  EXPECT_EQ(Run({"score", ref, ref}), kExitOk);
}

TEST_F(CliTest, VariantsOfWeatherExample) {
  const auto gold = File("gold.txt", "the weather today was warm\n");
  const auto system = File("system.txt", "the whether\ntoday was warm\n");
  const auto out_dir = Path("variants");
  fs::create_directories(out_dir);
  ASSERT_EQ(Run({"variants", gold, system, "--out-dir", out_dir}), kExitOk)
      << err_.str();
  EXPECT_EQ(Slurp(out_dir + "/recognition.txt"), "the whether today was warm\n");
  EXPECT_EQ(Slurp(out_dir + "/segmentation.txt"), "the weather\ntoday was warm\n");
  EXPECT_EQ(Slurp(out_dir + "/gold.txt"), "the weather today was warm\n");
  EXPECT_EQ(Slurp(out_dir + "/system.txt"), "the whether\ntoday was warm\n");

  ASSERT_EQ(Run({"variants", gold, system}), kExitOk);
  EXPECT_NE(out_.str().find("== segmentation\nthe weather\ntoday was warm\n"),
            std::string::npos);
}

TEST_F(CliTest, ProjectAndWer) {
  const auto a = File("a.txt", "the whether\ntoday was warm\n");
  const auto b = File("b.txt", "the weather today was warm\n");
  ASSERT_EQ(Run({"project", a, b}), kExitOk);
  EXPECT_EQ(out_.str(), "the weather\ntoday was warm\n");

  ASSERT_EQ(Run({"wer", b, a, "--format", "jsonl"}), kExitOk);
  std::istringstream lines(out_.str());
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  const auto total = nlohmann::json::parse(line);
  EXPECT_EQ(total.at("type"), "wer_total");
  EXPECT_EQ(total.at("wer").get<double>(), 0.2);

  ASSERT_EQ(Run({"wer", b, a}), kExitOk);
  EXPECT_NE(out_.str().find("0.2000"), std::string::npos);
}

TEST_F(CliTest, NormalizeAndPunctuationSegmentation) {
  const auto in = File("p.txt", "Hello, World! It rained. Dr. Who left.\n");
  ASSERT_EQ(Run({"segment", "punct", in}), kExitOk);
  EXPECT_EQ(out_.str(), "Hello, World!\nIt rained.\nDr. Who left.\n");
  ASSERT_EQ(Run({"normalize", in}), kExitOk);
  EXPECT_EQ(out_.str(), "hello world it rained dr who left\n");
  ASSERT_EQ(Run({"normalize", "--policy", "punctuated", in}), kExitOk);
  EXPECT_EQ(out_.str(), "Hello, World! It rained. Dr. Who left.\n");
}

TEST_F(CliTest, PauseSegmentation) {
  const auto in = File(
      "t.jsonl",
      R"({"doc_id":"x","words":[{"text":"a","start":0.0,"end":0.2},)"
      R"({"text":"b","start":1.5,"end":1.7},{"text":"c","start":1.8,"end":1.9},)"
      R"({"text":"d","start":2.0,"end":2.1}]})"
      "\n");
  ASSERT_EQ(Run({"segment", "pause", in, "--max-tokens", "2"}), kExitOk) << err_.str();
  EXPECT_EQ(out_.str(), "a\nb c\nd\n");
}

TEST_F(CliTest, AugmentIsDeterministicAndPrintsSeed) {
  const auto in = File("bi.tsv",
                       "a1 a2 a3 a4\tA1 A2 A3 A4\nb1 b2 b3\tB1 B2 B3\n"
                       "c1 c2 c3 c4 c5\tC1 C2\n\nd1 d2\tD1 D2\ne1 e2\tE1 E2\n");
  ASSERT_EQ(Run({"augment", in, "--seed", "5"}), kExitOk);
  const std::string first = out_.str();
  EXPECT_NE(err_.str().find("seed: 5"), std::string::npos);
  ASSERT_EQ(Run({"augment", in, "--seed", "5"}), kExitOk);
  EXPECT_EQ(out_.str(), first);
  std::istringstream s(first);
  const auto docs = ReadBitext(s);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].size(), 2u);  // one merge + passthrough
  EXPECT_EQ(docs[0][1].source, (Segment{"c1", "c2", "c3", "c4", "c5"}));
  EXPECT_EQ(docs[1].size(), 1u);
}

TEST_F(CliTest, MixProportionsAndLabels) {
  std::string wmt;
  std::string iwslt;
  for (int i = 0; i < 20; ++i) {
    wmt += "w" + std::to_string(i) + " x y\tW" + std::to_string(i) + " X Y\n";
    iwslt += "i" + std::to_string(i) + " x y\tI" + std::to_string(i) + " X Y\n";
  }
  const auto w = File("wmt.tsv", wmt);
  const auto t = File("iwslt.tsv", iwslt);
  const std::vector<std::string> args = {
      "mix", "--corpus", "WMT=" + w, "--corpus", "IWSLT=" + t, "--weight",
      "WMT=0.9", "--weight", "IWSLT=0.1", "--total", "20000", "--seed", "3"};
  ASSERT_EQ(Run(args), kExitOk) << err_.str();
  const std::string first = out_.str();
  size_t lines = 0;
  size_t wmt_lines = 0;
  size_t augmented = 0;
  std::istringstream s(first);
  std::string line;
  while (std::getline(s, line)) {
    ++lines;
    wmt_lines += line.find("\tWMT\t") != std::string::npos;
    augmented += line.ends_with("\taugmented");
  }
  EXPECT_EQ(lines, 20000u);
  EXPECT_NEAR(wmt_lines / 20000.0, 0.9, 0.02);
  EXPECT_NEAR(augmented / 20000.0, 0.2, 0.02);
  ASSERT_EQ(Run(args), kExitOk);
  EXPECT_EQ(out_.str(), first);

  EXPECT_EQ(Run({"mix", "--corpus", "WMT=" + w, "--weight", "WMT=0.5"}), kExitUsage);
  EXPECT_EQ(Run({"mix", "--corpus", "WMT=" + w, "--weight", "OTHER=1"}), kExitUsage);
}

TEST_F(CliTest, SimulateIsDeterministic) {
  const auto in = File("d.txt", "a b c d e f\ng h i j\nk l m n o\n");
  const std::vector<std::string> args = {"simulate", in, "--sub", "0.2", "--del", "0.1",
                                         "--merge", "0.5", "--split", "0.2", "--seed", "11"};
  ASSERT_EQ(Run(args), kExitOk) << err_.str();
  const std::string first = out_.str();
  EXPECT_NE(err_.str().find("seed: 11"), std::string::npos);
  ASSERT_EQ(Run(args), kExitOk);
  EXPECT_EQ(out_.str(), first);

  ASSERT_EQ(Run({"simulate", in, "--merge", "1"}), kExitOk);
  EXPECT_EQ(out_.str(), "a b c d e f g h i j k l m n o\n");
}

TEST_F(CliTest, BucketReport) {
  const auto ref = File("r.txt", "a b c\nd e f g h i j k l m n o p q r s t u v w x y\n");
  ASSERT_EQ(Run({"report", ref, ref, "--bounds", "0:20,20:40"}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("{0:20}"), std::string::npos);
  ASSERT_EQ(Run({"report", ref, ref, "--format", "jsonl"}), kExitOk);
  std::istringstream s(out_.str());
  std::string line;
  size_t n = 0;
  while (std::getline(s, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.at("count").get<size_t>() > 0) {
      EXPECT_EQ(j.at("mean_score").get<double>(), 100.0);
    }
    ++n;
  }
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(Run({"report", ref, ref, "--bounds", "0:20,10:30"}), kExitUsage);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run({}), kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Run({"score", "--bogus", "a", "b"}), kExitUsage);
  EXPECT_EQ(Run({"--help"}), kExitOk);

  EXPECT_EQ(Run({"segment", "fixed", Path("missing.txt")}), kExitMalformedInput);
  const auto bad = File("bad.tsv", "ok\tfine\nbroken line\n");
  EXPECT_EQ(Run({"augment", bad}), kExitMalformedInput);
  EXPECT_NE(err_.str().find("bad.tsv:2:"), std::string::npos) << err_.str();

  const auto empty_ref = File("e.txt", "?\n");
  const auto hyp = File("h.txt", "a\n");
  EXPECT_EQ(Run({"wer", empty_ref, hyp}), kExitMalformedInput);
}

TEST_F(CliTest, ConfigFileAndEnvironmentOverride) {
  const auto in = File("doc.txt", "a b c d e f g\n");
  const auto cfg = File("cfg.json", R"({"segmentation": {"fixed_length": 3}})");
  ASSERT_EQ(Run({"--config", cfg, "segment", "fixed", in}), kExitOk);
  EXPECT_EQ(out_.str(), "a b c\nd e f\ng\n");
  // Flags win over the file.
  ASSERT_EQ(Run({"--config", cfg, "segment", "fixed", "--n", "4", in}), kExitOk);
  EXPECT_EQ(out_.str(), "a b c d\ne f g\n");

  setenv(kConfigEnvVar, cfg.c_str(), 1);
  ASSERT_EQ(Run({"segment", "fixed", in}), kExitOk);
  EXPECT_EQ(out_.str(), "a b c\nd e f\ng\n");
  unsetenv(kConfigEnvVar);

  const auto unknown = File("bad.json", R"({"segmentation": {"fixed_len": 3}})");
  EXPECT_EQ(Run({"--config", unknown, "segment", "fixed", in}), kExitUsage);
  EXPECT_NE(err_.str().find("segmentation.fixed_len"), std::string::npos);
}

TEST(ParseConfigTest, DefaultsAndOverrides) {
  const auto defaults = ParseConfig("{}");
  EXPECT_EQ(defaults.normalization, NormalizationPolicy::Stripped());
  EXPECT_EQ(defaults.pause.pause_threshold_sec, 1.0);
  EXPECT_EQ(defaults.augmentation.p_max, 0.3);
  EXPECT_EQ(defaults.mixture.corpus_weights.at("WMT"), 0.9);
  EXPECT_EQ(defaults.mixture.default_augmented_fraction, 0.2);
  EXPECT_EQ(defaults.bleu.max_ngram_order, 4);
  EXPECT_TRUE(defaults.bleu.case_sensitive);

  const auto cfg = ParseConfig(R"({
    "seed": 9,
    "alignment": {"band_width": 50, "lowercase": false},
    "mixture": {"corpus_weights": {"A": 0.25, "B": 0.75},
                "augmented_fraction": {"A": 0.5}},
    "bleu": {"smoothing": "add-one"},
    "buckets": [[0, 10], [10, 30]]
  })");
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.alignment.band_width, 50u);
  EXPECT_FALSE(cfg.alignment.normalization.lowercase);
  EXPECT_EQ(cfg.mixture.AugmentedFractionFor("A"), 0.5);
  EXPECT_EQ(cfg.mixture.AugmentedFractionFor("B"), 0.2);
  EXPECT_EQ(cfg.bleu.smoothing, Smoothing::kAddOneAboveUnigram);
  EXPECT_EQ(cfg.buckets.size(), 2u);

  EXPECT_THROW(ParseConfig("{"), ConfigError);
  EXPECT_THROW(ParseConfig(R"({"mixture": {"corpus_weights": {"A": 0.5}}})"),
               ConfigError);
  EXPECT_THROW(ParseConfig(R"({"augmentation": {"p_max": 2}})"), ConfigError);
}

}  // namespace
}  // namespace segrobust::cli
