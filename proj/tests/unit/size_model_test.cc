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

#include <random>

#include "deckgen/document.h"
#include "deckgen/error.h"
#include "deckgen/selection.h"
#include "test_support.h"

namespace deckgen {
namespace {

// 400 sentences of exactly 100 characters: 40000 characters in all.
Paper FortyThousandCharPaper() {
  std::string xml = "<paper><title>T</title><section name=\"S\" kind=\"results\">";
  const std::string sentence = std::string(99, 'a') + ".";
  for (int i = 0; i < 400; ++i) xml += "<s>" + sentence + "</s>";
  xml += "</section></paper>";
  return ParsePaper(xml);
}

SizeSample RandomSample(std::mt19937_64& rng, const SizeModel& truth) {
  SizeSample s;
  s.features = {testing::Uniform(rng, 5000, 80000), testing::Uniform(rng, 50, 600),
                testing::Uniform(rng, 3, 12),       testing::Uniform(rng, 0, 20),
                testing::Uniform(rng, 0, 90),       testing::Uniform(rng, 10, 35),
                testing::Uniform(rng, 60, 200),     1.0};
  for (std::size_t i = 0; i < kNumSizeFeatures; ++i) {
    s.presentation_chars += truth.coefficients[i] * s.features[i];
  }
  return s;
}

TEST(SizeModelTest, PaperHasFortyThousandChars) {
  EXPECT_EQ(PaperCharacterCount(FortyThousandCharPaper()), 40000);
}

TEST(SizeModelTest, InterceptOnly) {
  SizeModel model;
  model.coefficients[7] = 5000.0;
  EXPECT_EQ(PredictSize(model, FortyThousandCharPaper()), 5000);
}

TEST(SizeModelTest, FallbackIsTwentyPercent) {
  EXPECT_EQ(FallbackSize(FortyThousandCharPaper()), 8000);
  EXPECT_EQ(FallbackSize(FortyThousandCharPaper(), 0.5), 20000);
}

TEST(SizeModelTest, ClampsToRange) {
  SizeModel model;
  model.coefficients[7] = -10.0;
  EXPECT_EQ(PredictSize(model, FortyThousandCharPaper()), kMinPredictedSize);
  model.coefficients[7] = 1e9;
  EXPECT_EQ(PredictSize(model, FortyThousandCharPaper()), 40000);
}

TEST(SizeModelTest, FeaturesOfPaper) {
  const Paper paper = ParsePaper(
      "<paper><title>T</title><abstract><s>ab cd</s></abstract>"
      "<section name=\"S\"><s>efg <ref type=\"figure\" target=\"f\"/></s></section>"
      "<graphic id=\"f\" kind=\"figure\" caption=\"\"/></paper>");
  const SizeFeatures f = ComputeSizeFeatures(paper);
  EXPECT_EQ(f[0], 12.0);  // "ab cd" + "efg [f]"
  EXPECT_EQ(f[1], 2.0);
  EXPECT_EQ(f[2], 1.0);
  EXPECT_EQ(f[3], 1.0);
  EXPECT_EQ(f[4], 1.0);
  EXPECT_EQ(f[5], 2.0);
  EXPECT_EQ(f[6], 6.0);
  EXPECT_EQ(f[7], 1.0);
}

TEST(SizeModelTest, RecoversLinearRule) {
  SizeModel truth;
  truth.coefficients = {0.05, 2.0, 30.0, 15.0, 1.5, -4.0, 3.0, 250.0};
  std::mt19937_64 rng(77);
  std::vector<SizeSample> samples;
  for (int i = 0; i < 60; ++i) samples.push_back(RandomSample(rng, truth));
  const SizeModel fit = TrainSizeModel(samples);
  for (std::size_t i = 0; i < kNumSizeFeatures; ++i) {
    EXPECT_NEAR(fit.coefficients[i], truth.coefficients[i], 1e-6) << SizeFeatureNames()[i];
  }
}

TEST(SizeModelTest, DuplicatedRowsGiveSameFit) {
  std::mt19937_64 rng(78);
  SizeModel truth;
  truth.coefficients = {0.1, 1.0, 5.0, 2.0, 0.5, 1.0, 1.0, 100.0};
  std::vector<SizeSample> samples;
  for (int i = 0; i < 20; ++i) {
    SizeSample s = RandomSample(rng, truth);
    s.presentation_chars += testing::Uniform(rng, -300.0, 300.0);  // not exactly linear
    samples.push_back(s);
  }
  std::vector<SizeSample> doubled = samples;
  doubled.insert(doubled.end(), samples.begin(), samples.end());
  const SizeModel a = TrainSizeModel(samples);
  const SizeModel b = TrainSizeModel(doubled);
  for (std::size_t i = 0; i < kNumSizeFeatures; ++i) {
    EXPECT_NEAR(a.coefficients[i], b.coefficients[i], 1e-9 * std::max(1.0, std::abs(a.coefficients[i])));
  }
}

TEST(SizeModelTest, ConstantLabels) {
  std::mt19937_64 rng(79);
  SizeModel zero;
  std::vector<SizeSample> samples;
  for (int i = 0; i < 30; ++i) {
    SizeSample s = RandomSample(rng, zero);
    s.presentation_chars = 3000.0;
    samples.push_back(s);
  }
  const SizeModel fit = TrainSizeModel(samples);
  EXPECT_NEAR(fit.coefficients[7], 3000.0, 1e-6);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(fit.coefficients[i], 0.0, 1e-6);
}

TEST(SizeModelTest, TooFewPairs) {
  std::mt19937_64 rng(80);
  std::vector<SizeSample> samples;
  for (int i = 0; i < 7; ++i) samples.push_back(RandomSample(rng, SizeModel{}));
  try {
    TrainSizeModel(samples);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooFewPairs);
  }
}

TEST(SizeModelTest, SerializationRoundTrip) {
  SizeModel model;
  model.coefficients = {0.1, -2.5, 3.0, 0.0, 1e-7, 12.0, -0.5, 400.0};
  const SizeModel loaded = DeserializeSizeModel(SerializeSizeModel(model));
  EXPECT_EQ(loaded.coefficients, model.coefficients);
  EXPECT_THROW(DeserializeSizeModel("{\"format_version\":1}"), Error);
  EXPECT_THROW(DeserializeSizeModel("[1,2"), Error);
}

}  // namespace
}  // namespace deckgen
