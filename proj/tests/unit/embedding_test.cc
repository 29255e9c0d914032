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

#include "deckgen/embedding.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "deckgen/error.h"
#include "deckgen/text.h"
#include "test_support.h"

namespace deckgen {
namespace {

// FNV-1a 64 written out from its constants.
std::uint64_t ReferenceFnv(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

TEST(TokenizeTest, Rules) {
  EXPECT_EQ(Tokenize("The cat, sat!"), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_EQ(Tokenize("TF-IdF 2.5x"), (std::vector<std::string>{"tf", "idf", "2", "5x"}));
}

TEST(Fnv1aTest, KnownVectors) {
  EXPECT_EQ(Fnv1a64(""), 14695981039346656037ull);
  // Published test vector for "a".
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(Fnv1a64("foobar"), 0x85944171f73967e8ull);
  EXPECT_EQ(HexKey(0xabcull), "0000000000000abc");
}

TEST(CosineTest, AnalyticValues) {
  EXPECT_DOUBLE_EQ(Cosine(Vector(std::vector<double>{1.0, 0.0}), Vector(std::vector<double>{0.0, 1.0})), 0.0);
  EXPECT_NEAR(Cosine(Vector(std::vector<double>{1.0, 0.0}), Vector(std::vector<double>{std::sqrt(0.5), std::sqrt(0.5)})), 0.70710678,
              1e-8);
  EXPECT_NEAR(Cosine(Vector(std::vector<double>{3.0, -4.0}), Vector(std::vector<double>{3.0, -4.0})), 1.0, 1e-15);
  EXPECT_EQ(Cosine(Vector(std::vector<double>{0.0, 0.0}), Vector(std::vector<double>{1.0, 0.0})), 0.0);
}

TEST(CosineTest, DimensionMismatchThrows) {
  try {
    Cosine(Vector(std::vector<double>{1.0}), Vector(std::vector<double>{1.0, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
}

TEST(CosinePropertyTest, SymmetricScaleInvariantBounded) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = testing::UniformInt(rng, 1, 12);
    Vector u = testing::RandomUnitVector(rng, dim);
    Vector v = testing::RandomUnitVector(rng, dim);
    const double c = Cosine(u, v);
    EXPECT_EQ(c, Cosine(v, u));
    EXPECT_LE(std::abs(c), 1.0);
    EXPECT_NEAR(c, testing::DirectCosine(u, v), 1e-12);
    const double scale = testing::Uniform(rng, 0.01, 100.0);
    Vector scaled = u;
    for (double& x : scaled.components) x *= scale;
    EXPECT_NEAR(Cosine(scaled, v), c, 1e-12);
    EXPECT_NEAR(Cosine(u, u), 1.0, 1e-12);
  }
}

TEST(HashedEmbeddingTest, Deterministic) {
  HashedFallbackProvider provider(256);
  const std::vector<std::string> texts = {"x", "x"};
  const auto vectors = provider.EmbedAll(texts);
  EXPECT_EQ(vectors[0], vectors[1]);
  EXPECT_EQ(provider.Embed("same text"), provider.Embed("same text"));
}

TEST(HashedEmbeddingTest, EmptyTextIsZero) {
  const Vector v = HashedFallbackEmbed("", 256);
  EXPECT_EQ(v.dim(), 256u);
  EXPECT_TRUE(v.IsZero());
}

TEST(HashedEmbeddingTest, SharedTokensGivePartialSimilarity) {
  const double c = Cosine(HashedFallbackEmbed("the cat", 256), HashedFallbackEmbed("the cat sat", 256));
  EXPECT_GT(c, 0.0);
  EXPECT_LT(c, 1.0);
}

TEST(HashedEmbeddingTest, NonnegativeCosine) {
  const double c = Cosine(HashedFallbackEmbed("xyz", 64), HashedFallbackEmbed("qqq", 64));
  EXPECT_GE(c, 0.0);
}

// "abc" has the unigram "abc" and the single trigram "abc": both land in the
// same bucket, so the normalized vector is one-hot.
TEST(HashedEmbeddingTest, HandHashedAbc) {
  const std::size_t bucket = ReferenceFnv("abc") % 8;
  const Vector v = HashedFallbackEmbed("abc", 8);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(v.components[k], k == bucket ? 1.0 : 0.0);
}

// Independent bag-of-features construction on random texts.
TEST(HashedEmbeddingPropertyTest, MatchesReferenceConstruction) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = testing::UniformInt(rng, 2, 64);
    const std::string text = testing::RandomSentenceText(rng, 0, 6);
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : text + " ") {
      if (std::isalnum(static_cast<unsigned char>(ch))) {
        current += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      } else if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    }
    std::vector<double> expected(static_cast<std::size_t>(dim), 0.0);
    std::string joined;
    for (const auto& t : tokens) {
      expected[ReferenceFnv(t) % dim] += 1.0;
      joined += (joined.empty() ? "" : " ") + t;
    }
    for (std::size_t i = 0; i + 3 <= joined.size(); ++i) {
      expected[ReferenceFnv(joined.substr(i, 3)) % dim] += 1.0;
    }
    double norm = 0.0;
    for (double x : expected) norm += x * x;
    norm = std::sqrt(norm);
    const Vector v = HashedFallbackEmbed(text, dim);
    for (int k = 0; k < dim; ++k) {
      EXPECT_NEAR(v.components[k], norm == 0.0 ? 0.0 : expected[k] / norm, 1e-15) << text;
    }
  }
}

TEST(VectorCacheTest, RoundTripAndRenormalize) {
  const std::vector<std::string> texts = {"first sentence", "second"};
  const std::vector<Vector> vectors = {Vector(std::vector<double>{3.0, 4.0}), Vector(std::vector<double>{0.0, 2.0})};
  const std::string tsv = FormatVectorCache(texts, vectors);
  const VectorCacheProvider cache = VectorCacheProvider::FromTsv(tsv, 2);
  EXPECT_EQ(cache.size(), 2u);
  const Vector a = cache.Embed("first sentence");
  EXPECT_NEAR(a.components[0], 0.6, 1e-15);
  EXPECT_NEAR(a.components[1], 0.8, 1e-15);
  EXPECT_TRUE(cache.Embed("").IsZero());
}

TEST(VectorCacheTest, MissNamesKey) {
  const VectorCacheProvider cache = VectorCacheProvider::FromTsv("#dim=2\n", 2);
  try {
    cache.Embed("absent");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCacheMiss);
    EXPECT_NE(std::string(e.what()).find(HexKey(ReferenceFnv("absent"))), std::string::npos);
  }
}

TEST(VectorCacheTest, DimensionMismatch) {
  try {
    VectorCacheProvider::FromTsv("#dim=2\n0000000000000001\t1\t2\t3\n", 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
  try {
    VectorCacheProvider::FromTsv("#dim=3\n", 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
}

TEST(ProviderConfigTest, Validation) {
  ProviderConfig config;
  config.dim = 1;
  EXPECT_THROW(config.Validate(), Error);
  config.dim = 8;
  config.kind = ProviderKind::kVectorCache;
  EXPECT_THROW(config.Validate(), Error);
  config.kind = ProviderKind::kHashedFallback;
  EXPECT_NO_THROW(config.Validate());
  EXPECT_EQ(MakeProvider(config)->dim(), 8);
}

}  // namespace
}  // namespace deckgen
