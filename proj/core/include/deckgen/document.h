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

// In-memory model of a parsed paper and of the reference slide text.
//
// Paper XML contract (UTF-8):
//
//   <paper>
//     <title>text</title>
//     <abstract> <s>...</s>* </abstract>?
//     <section name="..." kind="..."> <s>...</s>* </section>*
//     <graphic id="..." kind="table|figure|equation" caption="..."/>*
//   </paper>
//
// An <s> holds one sentence: text interleaved with empty
// <ref type="literature|table|figure|equation" target="..."/> elements, each
// of which is rendered into the sentence text as "[target]".

#ifndef DECKGEN_DOCUMENT_H_
#define DECKGEN_DOCUMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deckgen {

enum class SectionKind {
  kAbstract,
  kIntroduction,
  kBackground,
  kModel,
  kResults,
  kConclusion,
  kAcknowledgement,
  kOther,
};

// Number of kinds that carry a one-hot slot (everything but kOther).
inline constexpr int kNumOneHotSectionKinds = 7;

std::string_view SectionKindName(SectionKind kind);
// Unknown or empty names map to kOther.
SectionKind ParseSectionKind(std::string_view name);

enum class RefKind { kLiterature, kTable, kFigure, kEquation };

std::string_view RefKindName(RefKind kind);
std::optional<RefKind> ParseRefKind(std::string_view name);

enum class GraphicKind { kTable, kFigure, kEquation };

std::string_view GraphicKindName(GraphicKind kind);
std::optional<GraphicKind> ParseGraphicKind(std::string_view name);

struct RefMark {
  RefKind kind;
  std::string target;
  // Set by ParsePaper: true iff kind is table/figure/equation and a graphic
  // with this id exists. Literature references are never resolved.
  bool resolved = false;

  bool IsGraphicRef() const { return kind != RefKind::kLiterature; }
  bool IsDangling() const { return IsGraphicRef() && !resolved; }
};

// Section index carried by abstract sentences.
inline constexpr int kAbstractSectionIndex = -1;

struct Sentence {
  std::size_t global_index = 0;
  int section_index = kAbstractSectionIndex;
  int position_in_section = 1;  // 1-based
  std::string text;
  std::vector<std::string> tokens;
  std::vector<RefMark> ref_marks;
};

struct Section {
  std::string name;
  SectionKind kind = SectionKind::kOther;
  std::vector<Sentence> sentences;
};

struct GraphicElement {
  std::string id;
  GraphicKind kind = GraphicKind::kFigure;
  std::string caption;
};

struct Paper {
  std::string title;
  std::vector<Sentence> abstract_sentences;
  std::vector<Section> sections;
  std::vector<GraphicElement> graphics;

  std::size_t SentenceCount() const;
  const GraphicElement* FindGraphic(std::string_view id) const;
};

// Reference presentation or insight text, one sentence per entry.
struct SlideText {
  std::vector<std::string> sentences;
};

// Parses the XML contract above. Throws Error{kMalformedXml} with line and
// column on syntax errors and Error{kSchemaViolation} on structural ones.
Paper ParsePaper(std::string_view xml_text);

// One sentence per line; blank and punctuation-only lines are dropped.
// Throws Error{kEmptySlides} when nothing usable remains.
SlideText ParseSlides(std::string_view text);

// Abstract sentences first, then section sentences in document order, so
// that result[i].global_index == i.
std::vector<Sentence> SentenceStream(const Paper& paper);

// Kind of the section a sentence belongs to (kAbstract for the abstract).
SectionKind KindOfSentence(const Paper& paper, const Sentence& sentence);
// Sentence count of the section a sentence belongs to.
std::size_t SectionSizeOf(const Paper& paper, const Sentence& sentence);

// All graphic-kind references whose target has no graphic element.
std::vector<RefMark> DanglingRefs(const Paper& paper);

// Sum of CharacterCount over every sentence.
std::int64_t PaperCharacterCount(const Paper& paper);

}  // namespace deckgen

#endif  // DECKGEN_DOCUMENT_H_
