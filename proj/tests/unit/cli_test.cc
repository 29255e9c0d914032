// Copyright 2026 The deckgen Authors.
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.h"
#include "test_support.h"

namespace deckgen::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("deckgen_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }

  std::string Fixture(const std::string& name) const { return testing::DataPath(name); }

  fs::path dir_;
};

TEST_F(CliTest, HelpAndUsage) {
  EXPECT_EQ(Call({"--help"}).code, kExitOk);
  EXPECT_EQ(Call({}).code, kExitUsage);
  EXPECT_EQ(Call({"bogus"}).code, kExitUsage);
  const Outcome missing = Call({"generate", Fixture("fixture.paper.xml"), "--out", Path("d.md")});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("--model"), std::string::npos);
  EXPECT_EQ(Call({"generate", "x", "--model", "m", "--out", "o", "--provider", "web"}).code,
            kExitUsage);
}

TEST_F(CliTest, GenerateMatchesGolden) {
  const Outcome result = Call({"generate", Fixture("fixture.paper.xml"), "--model",
                               Fixture("fixture_model.json"), "--dim", "64", "--out",
                               Path("deck.md")});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_NE(result.out.find("size_source=fraction"), std::string::npos);
  EXPECT_NE(result.out.find("solver=exact"), std::string::npos);
  EXPECT_EQ(testing::ReadText(Path("deck.md")), testing::ReadText(Fixture("fixture.deck.md")));
}

TEST_F(CliTest, GenerateSizeZero) {
  const Outcome result = Call({"generate", Fixture("fixture.paper.xml"), "--model",
                               Fixture("fixture_model.json"), "--dim", "64", "--size", "0",
                               "--out", Path("deck.md")});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_NE(result.out.find("note=empty selection"), std::string::npos);
  EXPECT_EQ(testing::ReadText(Path("deck.md")),
            "# Adaptive Caching for Streaming Graph Queries\n");
}

TEST_F(CliTest, InputErrorsAreReported) {
  const Outcome missing = Call({"generate", Path("absent.xml"), "--model",
                                Fixture("fixture_model.json"), "--out", Path("d.md")});
  EXPECT_EQ(missing.code, kExitInput);
  EXPECT_EQ(missing.err.rfind("error: kind=Io path=", 0), 0u) << missing.err;

  Write("bad.paper.xml", "<paper><title>T</title>");
  const Outcome malformed = Call({"generate", Path("bad.paper.xml"), "--model",
                                  Fixture("fixture_model.json"), "--dim", "64", "--out",
                                  Path("d.md")});
  EXPECT_EQ(malformed.code, kExitInput);
  EXPECT_NE(malformed.err.find("kind=MalformedXml"), std::string::npos);
  EXPECT_NE(malformed.err.find("bad.paper.xml"), std::string::npos);

  const Outcome mismatch = Call({"generate", Fixture("fixture.paper.xml"), "--model",
                                 Fixture("fixture_model.json"), "--out", Path("d.md")});
  EXPECT_EQ(mismatch.code, kExitInput);
  EXPECT_NE(mismatch.err.find("kind=SchemaMismatch"), std::string::npos);
}

TEST_F(CliTest, RougeOnIdenticalFiles) {
  Write("a.txt", "the same words\nin two lines\n");
  const Outcome result = Call({"rouge", Path("a.txt"), Path("a.txt")});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_NE(result.out.find("rouge1_f1=1\n"), std::string::npos) << result.out;
  EXPECT_NE(result.out.find("rouge2_f1=1\n"), std::string::npos);
  EXPECT_NE(result.out.find("rouge_su4_f1=1\n"), std::string::npos);
}

TEST_F(CliTest, LabelOneRowPerSentence) {
  Write("p.xml",
        "<paper><title>T</title><abstract><s>one two</s><s>three</s><s>four five</s></abstract>"
        "</paper>");
  Write("s.txt", "three\n");
  const Outcome result = Call({"label", Path("p.xml"), Path("s.txt")});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  std::istringstream rows(result.out);
  std::vector<std::pair<int, double>> parsed;
  int index;
  double value;
  while (rows >> index >> value) parsed.emplace_back(index, value);
  ASSERT_EQ(parsed.size(), 3u);
  EXPECT_EQ(parsed[2].first, 2);
  EXPECT_NEAR(parsed[1].second, 1.0, 1e-12);
}

TEST_F(CliTest, FeaturesTsv) {
  const Outcome result = Call({"features", Fixture("fixture.paper.xml"), "--dim", "8"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_EQ(std::count(result.out.begin(), result.out.end(), '\n'), 14);
}

TEST_F(CliTest, TrainTwiceIsIdentical) {
  const std::vector<std::string> base = {"train",    "--pairs", Fixture("pairs"), "--dim",
                                         "16",       "--hidden", "4,3,2",         "--epochs",
                                         "3"};
  auto first = base;
  first.insert(first.end(), {"--out", Path("m1.json")});
  auto second = base;
  second.insert(second.end(), {"--out", Path("m2.json")});
  ASSERT_EQ(Call(first).code, kExitOk);
  ASSERT_EQ(Call(second).code, kExitOk);
  EXPECT_EQ(testing::ReadText(Path("m1.json")), testing::ReadText(Path("m2.json")));
}

TEST_F(CliTest, TrainWithHoldoutAndStats) {
  const Outcome result =
      Call({"train", "--pairs", Fixture("pairs"), "--dim", "16", "--hidden", "4,3,2",
            "--epochs", "2", "--holdout", "0.2", "--stats-out", Path("df.tsv"), "--out",
            Path("m.json")});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_NE(result.out.find("holdout_pairs=2"), std::string::npos) << result.out;
  EXPECT_EQ(testing::ReadText(Path("df.tsv")).rfind("#docs=10", 0), 0u);
  const Outcome with_stats =
      Call({"features", Fixture("fixture.paper.xml"), "--dim", "8", "--stats", Path("df.tsv")});
  EXPECT_EQ(with_stats.code, kExitOk) << with_stats.err;
}

TEST_F(CliTest, EvaluateSkipsBadPairs) {
  fs::create_directories(dir_ / "pairs");
  fs::copy_file(Fixture("fixture.paper.xml"), dir_ / "pairs" / "good.paper.xml");
  fs::copy_file(Fixture("fixture.slides.txt"), dir_ / "pairs" / "good.slides.txt");
  Write("pairs/bad.paper.xml", "<paper>");
  Write("pairs/bad.slides.txt", "x\n");
  Write("pairs/lonely.slides.txt", "x\n");
  const std::vector<std::string> args = {"evaluate", "--pairs", Path("pairs"), "--model",
                                         Fixture("fixture_model.json"), "--dim", "64"};
  const Outcome result = Call(args);
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_NE(result.out.find("skipped="), std::string::npos);
  EXPECT_NE(result.out.find("kind=MalformedXml"), std::string::npos);
  EXPECT_NE(result.out.find("lonely.slides.txt"), std::string::npos);
  EXPECT_NE(result.out.find("pairs=1\n"), std::string::npos);
  EXPECT_NE(result.out.find("Rouge SU4"), std::string::npos);

  fs::remove(dir_ / "pairs" / "good.paper.xml");
  const Outcome none = Call(args);
  EXPECT_EQ(none.code, kExitInput);
  EXPECT_NE(none.err.find("kind=EmptyCorpus"), std::string::npos);
}

TEST_F(CliTest, TrainSize) {
  const Outcome ok = Call({"train-size", "--pairs", Fixture("pairs"), "--out", Path("s.json")});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  const Outcome used = Call({"generate", Fixture("fixture.paper.xml"), "--model",
                             Fixture("fixture_model.json"), "--dim", "64", "--size-model",
                             Path("s.json"), "--out", Path("d.md")});
  ASSERT_EQ(used.code, kExitOk) << used.err;
  EXPECT_NE(used.out.find("size_source=model"), std::string::npos);

  fs::create_directories(dir_ / "few");
  fs::copy_file(Fixture("fixture.paper.xml"), dir_ / "few" / "a.paper.xml");
  fs::copy_file(Fixture("fixture.slides.txt"), dir_ / "few" / "a.slides.txt");
  const Outcome few = Call({"train-size", "--pairs", Path("few"), "--out", Path("s2.json")});
  EXPECT_EQ(few.code, kExitInput);
  EXPECT_NE(few.err.find("kind=TooFewPairs"), std::string::npos);
}

TEST_F(CliTest, ListPairsMatchesStems) {
  Write("b.paper.xml", "");
  Write("b.slides.txt", "");
  Write("a.paper.xml", "");
  Write("a.slides.txt", "");
  Write("c.paper.xml", "");
  std::vector<fs::path> unmatched;
  const auto pairs = ListPairs(dir_, &unmatched);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].stem, "a");
  EXPECT_EQ(pairs[1].stem, "b");
  ASSERT_EQ(unmatched.size(), 1u);
  EXPECT_EQ(unmatched[0].filename(), "c.paper.xml");
}

}  // namespace
}  // namespace deckgen::cli
