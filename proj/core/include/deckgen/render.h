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

// Deck text format (UTF-8, LF endings):
//
//   # <paper title>                      title slide, optional
//   ---
//   ## <heading>                         first cluster title on the slide
//   - **<cluster title>**
//     - <sentence text>
//     - [FIGURE <id>: <caption>]         graphics owned by the cluster
//   ---
//   ...
//
// Clusters are packed into slides in outline order. A cluster never splits
// across slides unless it alone holds more sentences than a slide allows;
// its overflow continues on following slides titled "<title> (cont.)".

#ifndef DECKGEN_RENDER_H_
#define DECKGEN_RENDER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "deckgen/document.h"
#include "deckgen/organize.h"

namespace deckgen {

struct LayoutConfig {
  std::size_t max_second_level_per_slide = 8;
  bool include_title_slide = true;
};

struct DeckItem {
  enum class Kind { kSentence, kGraphic };
  Kind kind = Kind::kSentence;
  std::string text;
};

struct DeckBullet {
  std::string title;
  std::vector<DeckItem> items;
};

struct Slide {
  std::string heading;
  bool is_title_slide = false;
  std::vector<DeckBullet> bullets;

  std::size_t SentenceCount() const;
};

struct Deck {
  std::vector<Slide> slides;
};

Deck BuildDeck(const Outline& outline, const Paper& paper, const LayoutConfig& config);
std::string FormatDeck(const Deck& deck);

// BuildDeck followed by FormatDeck.
std::string EmitDeck(const Outline& outline, const Paper& paper, const LayoutConfig& config);

// Sentence bullet texts of a formatted deck, in order.
std::vector<std::string> DeckSentences(const Deck& deck);

}  // namespace deckgen

#endif  // DECKGEN_RENDER_H_
