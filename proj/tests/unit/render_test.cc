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

#include "deckgen/render.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "deckgen/error.h"
#include "test_support.h"

namespace deckgen {
namespace {

// A paper of `n` abstract sentences "s0." .. "s<n-1>." and two graphics.
Paper NumberedPaper(int n) {
  std::string xml = "<paper><title>Deck Title</title><abstract>";
  for (int i = 0; i < n; ++i) xml += "<s>s" + std::to_string(i) + ".</s>";
  xml += "</abstract><graphic id=\"fig1\" kind=\"figure\" caption=\"Overview\"/>"
         "<graphic id=\"eq1\" kind=\"equation\" caption=\"\"/></paper>";
  return ParsePaper(xml);
}

Cluster Range(std::size_t begin, std::size_t end, std::string title) {
  Cluster c;
  for (std::size_t i = begin; i < end; ++i) c.members.push_back(i);
  c.title = std::move(title);
  return c;
}

TEST(RenderTest, EmptyOutlineIsTitleOnly) {
  const std::string deck = EmitDeck(Outline{}, NumberedPaper(1), LayoutConfig{});
  EXPECT_EQ(deck, "# Deck Title\n");
}

TEST(RenderTest, OneClusterOneSlide) {
  Outline outline;
  outline.clusters.push_back(Range(0, 3, "Results"));
  const Deck deck = BuildDeck(outline, NumberedPaper(3), LayoutConfig{});
  ASSERT_EQ(deck.slides.size(), 2u);
  ASSERT_EQ(deck.slides[1].bullets.size(), 1u);
  EXPECT_EQ(deck.slides[1].SentenceCount(), 3u);
  EXPECT_EQ(FormatDeck(deck),
            "# Deck Title\n---\n## Results\n- **Results**\n  - s0.\n  - s1.\n  - s2.\n");
}

TEST(RenderTest, PackingFiveFourTwo) {
  Outline outline;
  outline.clusters.push_back(Range(0, 5, "A"));
  outline.clusters.push_back(Range(5, 9, "B"));
  outline.clusters.push_back(Range(9, 11, "C"));
  const Deck deck = BuildDeck(outline, NumberedPaper(11), LayoutConfig{});
  ASSERT_EQ(deck.slides.size(), 3u);
  ASSERT_EQ(deck.slides[1].bullets.size(), 1u);
  EXPECT_EQ(deck.slides[1].bullets[0].title, "A");
  ASSERT_EQ(deck.slides[2].bullets.size(), 2u);
  EXPECT_EQ(deck.slides[2].bullets[0].title, "B");
  EXPECT_EQ(deck.slides[2].bullets[1].title, "C");
  EXPECT_EQ(deck.slides[2].heading, "B");
}

TEST(RenderTest, OversizedClusterContinues) {
  Outline outline;
  outline.clusters.push_back(Range(0, 1, "Small"));
  Cluster big = Range(1, 12, "Big");
  big.graphics = {"fig1", "eq1"};
  outline.clusters.push_back(big);
  const Deck deck = BuildDeck(outline, NumberedPaper(12), LayoutConfig{});
  ASSERT_EQ(deck.slides.size(), 4u);
  EXPECT_EQ(deck.slides[2].heading, "Big");
  EXPECT_EQ(deck.slides[2].SentenceCount(), 8u);
  EXPECT_EQ(deck.slides[3].heading, "Big (cont.)");
  EXPECT_EQ(deck.slides[3].SentenceCount(), 3u);
  const std::string text = FormatDeck(deck);
  EXPECT_NE(text.find("  - [FIGURE fig1: Overview]\n  - [EQUATION eq1]\n"), std::string::npos);
}

TEST(RenderTest, LayoutOptions) {
  Outline outline;
  outline.clusters.push_back(Range(0, 2, "A"));
  outline.clusters.push_back(Range(2, 4, "B"));
  LayoutConfig config;
  config.include_title_slide = false;
  config.max_second_level_per_slide = 2;
  const Deck deck = BuildDeck(outline, NumberedPaper(4), config);
  ASSERT_EQ(deck.slides.size(), 2u);
  EXPECT_FALSE(deck.slides[0].is_title_slide);
  config.max_second_level_per_slide = 0;
  EXPECT_THROW(BuildDeck(outline, NumberedPaper(4), config), Error);
}

// Random outlines: capacity respected, sentences verbatim and in order,
// slides separated as documented, output deterministic.
TEST(RenderPropertyTest, RandomOutlines) {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testing::UniformInt(rng, 1, 40);
    const Paper paper = NumberedPaper(n);
    Outline outline;
    std::size_t start = 0;
    while (start < static_cast<std::size_t>(n)) {
      const std::size_t size = static_cast<std::size_t>(testing::UniformInt(rng, 1, 12));
      const std::size_t end = std::min<std::size_t>(n, start + size);
      outline.clusters.push_back(Range(start, end, "C" + std::to_string(start)));
      start = end;
    }
    LayoutConfig config;
    config.max_second_level_per_slide = static_cast<std::size_t>(testing::UniformInt(rng, 1, 9));
    const Deck deck = BuildDeck(outline, paper, config);
    for (const auto& slide : deck.slides) {
      EXPECT_LE(slide.SentenceCount(), config.max_second_level_per_slide);
    }
    const std::vector<std::string> sentences = DeckSentences(deck);
    ASSERT_EQ(sentences.size(), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) EXPECT_EQ(sentences[i], "s" + std::to_string(i) + ".");
    const std::string text = FormatDeck(deck);
    EXPECT_EQ(text, FormatDeck(BuildDeck(outline, paper, config)));
    std::size_t separators = 0;
    for (std::size_t pos = text.find("\n---\n"); pos != std::string::npos;
         pos = text.find("\n---\n", pos + 1)) {
      ++separators;
    }
    EXPECT_EQ(separators + 1, deck.slides.size());
    EXPECT_EQ(text.back(), '\n');
  }
}

}  // namespace
}  // namespace deckgen
