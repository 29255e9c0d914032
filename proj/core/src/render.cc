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

#include <fmt/format.h>

#include <algorithm>

#include "deckgen/error.h"
#include "deckgen/text.h"

namespace deckgen {
namespace {

constexpr const char* kContinuationSuffix = " (cont.)";

std::string GraphicPlaceholder(const GraphicElement& graphic) {
  const std::string kind = [&] {
    std::string k(GraphicKindName(graphic.kind));
    std::transform(k.begin(), k.end(), k.begin(),
                   [](char c) { return static_cast<char>(c - 'a' + 'A'); });
    return k;
  }();
  if (graphic.caption.empty()) return fmt::format("[{} {}]", kind, graphic.id);
  return fmt::format("[{} {}: {}]", kind, graphic.id, graphic.caption);
}

class SlidePacker {
 public:
  explicit SlidePacker(std::size_t capacity) : capacity_(capacity) {}

  void Add(const DeckBullet& bullet, std::size_t sentences) {
    if (sentences > capacity_) {
      AddOversized(bullet);
      return;
    }
    if (slides_.empty() || used_ + sentences > capacity_) NewSlide(bullet.title);
    slides_.back().bullets.push_back(bullet);
    used_ += sentences;
  }

  std::vector<Slide> Take() { return std::move(slides_); }

 private:
  void NewSlide(const std::string& heading) {
    Slide slide;
    slide.heading = heading;
    slides_.push_back(std::move(slide));
    used_ = 0;
  }

  // Sentences go out in capacity-sized chunks; graphics follow the last
  // sentence chunk.
  void AddOversized(const DeckBullet& bullet) {
    std::vector<DeckItem> sentences;
    std::vector<DeckItem> graphics;
    for (const auto& item : bullet.items) {
      (item.kind == DeckItem::Kind::kSentence ? sentences : graphics).push_back(item);
    }
    for (std::size_t start = 0; start < sentences.size(); start += capacity_) {
      const std::size_t end = std::min(sentences.size(), start + capacity_);
      DeckBullet chunk;
      chunk.title = start == 0 ? bullet.title : bullet.title + kContinuationSuffix;
      chunk.items.assign(sentences.begin() + static_cast<std::ptrdiff_t>(start),
                         sentences.begin() + static_cast<std::ptrdiff_t>(end));
      if (end == sentences.size()) {
        chunk.items.insert(chunk.items.end(), graphics.begin(), graphics.end());
      }
      NewSlide(chunk.title);
      slides_.back().bullets.push_back(std::move(chunk));
      used_ = end - start;
    }
  }

  std::size_t capacity_;
  std::size_t used_ = 0;
  std::vector<Slide> slides_;
};

}  // namespace

std::size_t Slide::SentenceCount() const {
  std::size_t count = 0;
  for (const auto& bullet : bullets) {
    count += static_cast<std::size_t>(
        std::count_if(bullet.items.begin(), bullet.items.end(),
                      [](const DeckItem& item) { return item.kind == DeckItem::Kind::kSentence; }));
  }
  return count;
}

Deck BuildDeck(const Outline& outline, const Paper& paper, const LayoutConfig& config) {
  if (config.max_second_level_per_slide < 1) {
    throw Error(ErrorKind::kInvalidArgument, "slides must hold at least one sentence bullet");
  }
  const std::vector<Sentence> stream = SentenceStream(paper);
  Deck deck;
  if (config.include_title_slide) {
    Slide title;
    title.heading = paper.title;
    title.is_title_slide = true;
    deck.slides.push_back(std::move(title));
  }
  SlidePacker packer(config.max_second_level_per_slide);
  for (const auto& cluster : outline.clusters) {
    if (cluster.members.empty()) throw Error(ErrorKind::kInvalidArgument, "empty cluster");
    DeckBullet bullet;
    bullet.title = cluster.title;
    for (std::size_t index : cluster.members) {
      if (index >= stream.size()) {
        throw Error(ErrorKind::kInvalidArgument,
                    fmt::format("cluster member {} is not a paper sentence", index));
      }
      bullet.items.push_back({DeckItem::Kind::kSentence, stream[index].text});
    }
    for (const auto& id : cluster.graphics) {
      const GraphicElement* graphic = paper.FindGraphic(id);
      if (graphic == nullptr) {
        throw Error(ErrorKind::kInvalidArgument, fmt::format("unknown graphic '{}'", id));
      }
      bullet.items.push_back({DeckItem::Kind::kGraphic, GraphicPlaceholder(*graphic)});
    }
    packer.Add(bullet, cluster.members.size());
  }
  for (auto& slide : packer.Take()) deck.slides.push_back(std::move(slide));
  return deck;
}

std::string FormatDeck(const Deck& deck) {
  std::string out;
  for (std::size_t s = 0; s < deck.slides.size(); ++s) {
    const Slide& slide = deck.slides[s];
    if (s > 0) out += "---\n";
    out += fmt::format("{} {}\n", slide.is_title_slide ? "#" : "##", slide.heading);
    for (const auto& bullet : slide.bullets) {
      out += fmt::format("- **{}**\n", bullet.title);
      for (const auto& item : bullet.items) out += fmt::format("  - {}\n", item.text);
    }
  }
  return out;
}

std::string EmitDeck(const Outline& outline, const Paper& paper, const LayoutConfig& config) {
  return FormatDeck(BuildDeck(outline, paper, config));
}

std::vector<std::string> DeckSentences(const Deck& deck) {
  std::vector<std::string> sentences;
  for (const auto& slide : deck.slides) {
    for (const auto& bullet : slide.bullets) {
      for (const auto& item : bullet.items) {
        if (item.kind == DeckItem::Kind::kSentence) sentences.push_back(item.text);
      }
    }
  }
  return sentences;
}

}  // namespace deckgen
