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

#include "deckgen/metrics.h"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "deckgen/error.h"
#include "deckgen/text.h"
#include "test_support.h"

namespace deckgen {
namespace {

std::vector<std::string> T(const char* text) { return Tokenize(text); }

TEST(RougeNTest, IdenticalAndDisjoint) {
  const auto a = T("graphs change quickly");
  const RougeScore same = RougeN(a, a, 1);
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.f1, 1.0);
  EXPECT_EQ(RougeN(a, a, 2).f1, 1.0);
  const RougeScore none = RougeN(a, T("nothing shared here"), 1);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
}

TEST(RougeNTest, CatOnTheMat) {
  const RougeScore s = RougeN(T("the cat sat on the mat"), T("the cat ate the mat"), 1);
  EXPECT_EQ(s.overlap, 4);
  EXPECT_NEAR(s.precision, 4.0 / 6.0, 1e-12);
  EXPECT_NEAR(s.recall, 4.0 / 5.0, 1e-12);
  EXPECT_NEAR(s.f1, 16.0 / 22.0, 1e-9);
  const RougeScore bigram = RougeN(T("the cat sat on the mat"), T("the cat ate the mat"), 2);
  EXPECT_EQ(bigram.overlap, 2);  // "the cat", "the mat"
  EXPECT_EQ(bigram.candidate_count, 5);
  EXPECT_EQ(bigram.reference_count, 4);
}

TEST(RougeNTest, BadOrderRejected) {
  EXPECT_THROW(RougeN(T("a"), T("a"), 3), Error);
}

TEST(RougeSU4Test, HandEnumerated) {
  const RougeScore s = RougeSU4(T("a b c"), T("a c"));
  EXPECT_EQ(s.candidate_count, 6);
  EXPECT_EQ(s.reference_count, 3);
  EXPECT_EQ(s.overlap, 3);
  EXPECT_NEAR(s.f1, 2.0 / 3.0, 1e-9);
}

TEST(RougeSU4Test, SingleTokensReduceToUnigrams) {
  EXPECT_EQ(RougeSU4(T("x"), T("x")).f1, 1.0);
  EXPECT_EQ(RougeSU4(T("x"), T("y")).f1, 0.0);
}

TEST(RougeSU4Test, SkipLimitIsFourWords) {
  // a and g are six positions apart: not a skip pair.
  const auto far = T("a b c d e f g");
  const RougeScore s = RougeSU4(far, T("a g"));
  EXPECT_EQ(s.overlap, 2);
  const RougeScore near = RougeSU4(T("a b c d e f"), T("a f"));
  EXPECT_EQ(near.overlap, 3);
}

// Counts every skip pair with an independent nested loop.
TEST(RougeSU4PropertyTest, FeatureCountsAndSymmetry) {
  std::mt19937_64 rng(100);
  const char* vocab[] = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> x, y;
    for (int i = testing::UniformInt(rng, 0, 12); i > 0; --i) x.push_back(vocab[rng() % 5]);
    for (int i = testing::UniformInt(rng, 0, 12); i > 0; --i) y.push_back(vocab[rng() % 5]);
    const auto count = [](const std::vector<std::string>& t) {
      std::map<std::string, long> m;
      for (std::size_t i = 0; i < t.size(); ++i) {
        ++m["u " + t[i]];
        for (std::size_t j = i + 1; j < t.size() && j <= i + 5; ++j) ++m["p " + t[i] + " " + t[j]];
      }
      return m;
    };
    const auto cx = count(x), cy = count(y);
    long overlap = 0, nx = 0, ny = 0;
    for (const auto& [k, v] : cx) {
      nx += v;
      if (cy.count(k)) overlap += std::min(v, cy.at(k));
    }
    for (const auto& [k, v] : cy) ny += v;
    const RougeScore s = RougeSU4(x, y);
    EXPECT_EQ(s.overlap, overlap);
    EXPECT_EQ(s.candidate_count, nx);
    EXPECT_EQ(s.reference_count, ny);
    const RougeScore swapped = RougeSU4(y, x);
    EXPECT_EQ(s.f1, swapped.f1);
    EXPECT_EQ(s.precision, swapped.recall);
    for (int n : {1, 2}) {
      const RougeScore a = RougeN(x, y, n), b = RougeN(y, x, n);
      EXPECT_EQ(a.f1, b.f1);
      EXPECT_EQ(a.precision, b.recall);
      EXPECT_GE(a.f1, 0.0);
      EXPECT_LE(a.f1, 1.0);
    }
  }
}

TEST(EvaluateCorpusTest, Means) {
  const std::vector<std::pair<std::string, std::string>> one = {{"same words", "same words"}};
  const CorpusScores a = EvaluateCorpus(one);
  EXPECT_EQ(a.rouge1, 1.0);
  EXPECT_EQ(a.rouge2, 1.0);
  EXPECT_EQ(a.rouge_su4, 1.0);
  const std::vector<std::pair<std::string, std::string>> two = {{"x y", "x y"}, {"p q", "r s"}};
  const CorpusScores b = EvaluateCorpus(two);
  EXPECT_EQ(b.pairs, 2u);
  EXPECT_EQ(b.rouge1, 0.5);
  EXPECT_EQ(b.rouge_su4, 0.5);
}

TEST(EvaluateCorpusTest, ThreeHandScoredPairs) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"the cat sat on the mat", "the cat ate the mat"},  // R1 16/22, R2 4/9, SU4 below
      {"a b c", "a c"},                                   // R1 4/5, R2 0, SU4 2/3
      {"x", "x"}};  // R1 and SU4 1; no bigrams, so R2 0
  // SU4 of the first pair: candidate 6 unigrams + 15 skip pairs = 21; reference
  // 5 + 10 = 15; overlap 4 unigrams + {the cat, the mat x2, cat the, cat mat,
  // the the} = 4 + 6 = 10. F1 = 2 * 10 / 36.
  const CorpusScores s = EvaluateCorpus(pairs);
  EXPECT_NEAR(s.rouge1, (16.0 / 22.0 + 0.8 + 1.0) / 3.0, 1e-9);
  EXPECT_NEAR(s.rouge2, (4.0 / 9.0 + 0.0 + 0.0) / 3.0, 1e-9);
  EXPECT_NEAR(s.rouge_su4, (20.0 / 36.0 + 2.0 / 3.0 + 1.0) / 3.0, 1e-9);
}

TEST(EvaluateCorpusTest, EmptyCorpus) {
  try {
    EvaluateCorpus({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyCorpus);
  }
}

TEST(ScoreTableTest, Layout) {
  CorpusScores s;
  s.rouge1 = 0.3871;
  s.rouge2 = 0.2784;
  s.rouge_su4 = 0.3165;
  const std::vector<std::pair<std::string, CorpusScores>> rows = {{"ours", s}};
  const std::string table = FormatScoreTable(rows);
  EXPECT_NE(table.find("Rouge SU4"), std::string::npos);
  EXPECT_NE(table.find("38.71"), std::string::npos);
  EXPECT_NE(table.find("27.84"), std::string::npos);
  EXPECT_NE(table.find("31.65"), std::string::npos);
}

}  // namespace
}  // namespace deckgen
