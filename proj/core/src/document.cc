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

#include "deckgen/document.h"

#include <fmt/format.h>

#include <set>

#include "deckgen/error.h"
#include "deckgen/text.h"
#include "xml_reader.h"

namespace deckgen {
namespace {

[[noreturn]] void Violation(const xml::Element& at, const std::string& what) {
  throw Error(ErrorKind::kSchemaViolation,
              fmt::format("line {} column {}: {}", at.line, at.column, what));
}

bool IsBlank(std::string_view text) {
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

void RequireNoStrayText(const xml::Element& element) {
  for (const auto& child : element.children) {
    if (!child.element && !IsBlank(child.text)) {
      Violation(element, fmt::format("unexpected text inside <{}>", element.name));
    }
  }
}

std::string PlainText(const xml::Element& element) {
  std::string out;
  for (const auto& child : element.children) {
    if (child.element) {
      Violation(*child.element,
                fmt::format("<{}> not allowed inside <{}>", child.element->name,
                            element.name));
    }
    out += child.text;
  }
  return NormalizeWhitespace(out);
}

Sentence ParseSentence(const xml::Element& s_element) {
  Sentence sentence;
  std::string raw;
  for (const auto& child : s_element.children) {
    if (!child.element) {
      raw += child.text;
      continue;
    }
    const xml::Element& ref = *child.element;
    if (ref.name != "ref") {
      Violation(ref, fmt::format("<{}> not allowed inside <s>", ref.name));
    }
    if (!ref.children.empty()) Violation(ref, "<ref> must be empty");
    const std::string* type = ref.Attribute("type");
    const std::string* target = ref.Attribute("target");
    if (type == nullptr) Violation(ref, "<ref> without type");
    if (target == nullptr || target->empty()) Violation(ref, "<ref> without target");
    std::optional<RefKind> kind = ParseRefKind(*type);
    if (!kind) Violation(ref, fmt::format("unknown ref type '{}'", *type));
    sentence.ref_marks.push_back(RefMark{*kind, *target, false});
    raw += "[" + *target + "]";
  }
  sentence.text = NormalizeWhitespace(raw);
  if (sentence.text.empty()) Violation(s_element, "empty <s>");
  sentence.tokens = Tokenize(sentence.text);
  return sentence;
}

std::vector<Sentence> ParseSentenceContainer(const xml::Element& container) {
  RequireNoStrayText(container);
  std::vector<Sentence> sentences;
  for (const auto& child : container.children) {
    if (!child.element) continue;
    if (child.element->name != "s") {
      Violation(*child.element, fmt::format("<{}> not allowed inside <{}>",
                                            child.element->name, container.name));
    }
    sentences.push_back(ParseSentence(*child.element));
  }
  return sentences;
}

GraphicElement ParseGraphic(const xml::Element& element) {
  if (!element.children.empty()) Violation(element, "<graphic> must be empty");
  const std::string* id = element.Attribute("id");
  const std::string* kind = element.Attribute("kind");
  const std::string* caption = element.Attribute("caption");
  if (id == nullptr || id->empty()) Violation(element, "<graphic> without id");
  if (kind == nullptr) Violation(element, "<graphic> without kind");
  std::optional<GraphicKind> parsed = ParseGraphicKind(*kind);
  if (!parsed) Violation(element, fmt::format("unknown graphic kind '{}'", *kind));
  return GraphicElement{*id, *parsed,
                        caption ? NormalizeWhitespace(*caption) : std::string()};
}

}  // namespace

std::string_view SectionKindName(SectionKind kind) {
  switch (kind) {
    case SectionKind::kAbstract:
      return "abstract";
    case SectionKind::kIntroduction:
      return "introduction";
    case SectionKind::kBackground:
      return "background";
    case SectionKind::kModel:
      return "model";
    case SectionKind::kResults:
      return "results";
    case SectionKind::kConclusion:
      return "conclusion";
    case SectionKind::kAcknowledgement:
      return "acknowledgement";
    case SectionKind::kOther:
      return "other";
  }
  return "other";
}

SectionKind ParseSectionKind(std::string_view name) {
  const std::string lower = ToLowerAscii(name);
  for (int k = 0; k < kNumOneHotSectionKinds; ++k) {
    auto kind = static_cast<SectionKind>(k);
    if (lower == SectionKindName(kind)) return kind;
  }
  return SectionKind::kOther;
}

std::string_view RefKindName(RefKind kind) {
  switch (kind) {
    case RefKind::kLiterature:
      return "literature";
    case RefKind::kTable:
      return "table";
    case RefKind::kFigure:
      return "figure";
    case RefKind::kEquation:
      return "equation";
  }
  return "literature";
}

std::optional<RefKind> ParseRefKind(std::string_view name) {
  if (name == "literature") return RefKind::kLiterature;
  if (name == "table") return RefKind::kTable;
  if (name == "figure") return RefKind::kFigure;
  if (name == "equation") return RefKind::kEquation;
  return std::nullopt;
}

std::string_view GraphicKindName(GraphicKind kind) {
  switch (kind) {
    case GraphicKind::kTable:
      return "table";
    case GraphicKind::kFigure:
      return "figure";
    case GraphicKind::kEquation:
      return "equation";
  }
  return "figure";
}

std::optional<GraphicKind> ParseGraphicKind(std::string_view name) {
  if (name == "table") return GraphicKind::kTable;
  if (name == "figure") return GraphicKind::kFigure;
  if (name == "equation") return GraphicKind::kEquation;
  return std::nullopt;
}

std::size_t Paper::SentenceCount() const {
  std::size_t count = abstract_sentences.size();
  for (const auto& section : sections) count += section.sentences.size();
  return count;
}

const GraphicElement* Paper::FindGraphic(std::string_view id) const {
  for (const auto& graphic : graphics) {
    if (graphic.id == id) return &graphic;
  }
  return nullptr;
}

Paper ParsePaper(std::string_view xml_text) {
  std::unique_ptr<xml::Element> root = xml::ReadDocument(xml_text);
  if (root->name != "paper") {
    Violation(*root, fmt::format("root element is <{}>, expected <paper>", root->name));
  }
  RequireNoStrayText(*root);

  Paper paper;
  bool have_title = false;
  bool have_abstract = false;
  std::set<std::string> graphic_ids;
  for (const auto& child : root->children) {
    if (!child.element) continue;
    const xml::Element& element = *child.element;
    if (element.name == "title") {
      if (have_title) Violation(element, "duplicate <title>");
      paper.title = PlainText(element);
      have_title = true;
    } else if (element.name == "abstract") {
      if (have_abstract) Violation(element, "duplicate <abstract>");
      paper.abstract_sentences = ParseSentenceContainer(element);
      have_abstract = true;
    } else if (element.name == "section") {
      Section section;
      const std::string* name = element.Attribute("name");
      const std::string* kind = element.Attribute("kind");
      section.name = name ? *name : std::string();
      section.kind = kind ? ParseSectionKind(*kind) : SectionKind::kOther;
      section.sentences = ParseSentenceContainer(element);
      paper.sections.push_back(std::move(section));
    } else if (element.name == "graphic") {
      GraphicElement graphic = ParseGraphic(element);
      if (!graphic_ids.insert(graphic.id).second) {
        Violation(element, fmt::format("duplicate graphic id '{}'", graphic.id));
      }
      paper.graphics.push_back(std::move(graphic));
    } else if (element.name == "s") {
      Violation(element, "<s> outside <abstract> or <section>");
    } else {
      Violation(element, fmt::format("unexpected element <{}>", element.name));
    }
  }
  if (!have_title) Violation(*root, "missing <title>");

  // Indices and reference resolution are assigned once the whole document
  // (including graphics declared after the sections) is known.
  std::size_t next_index = 0;
  auto finish = [&](Sentence& sentence, int section_index, int position) {
    sentence.global_index = next_index++;
    sentence.section_index = section_index;
    sentence.position_in_section = position;
    for (auto& mark : sentence.ref_marks) {
      mark.resolved = mark.IsGraphicRef() && graphic_ids.count(mark.target) > 0;
    }
  };
  for (std::size_t i = 0; i < paper.abstract_sentences.size(); ++i) {
    finish(paper.abstract_sentences[i], kAbstractSectionIndex, static_cast<int>(i) + 1);
  }
  for (std::size_t s = 0; s < paper.sections.size(); ++s) {
    auto& sentences = paper.sections[s].sentences;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      finish(sentences[i], static_cast<int>(s), static_cast<int>(i) + 1);
    }
  }
  return paper;
}

SlideText ParseSlides(std::string_view text) {
  SlideText slides;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line = NormalizeWhitespace(text.substr(start, end - start));
    if (HasWordCharacter(line)) slides.sentences.push_back(std::move(line));
    start = end + 1;
  }
  if (slides.sentences.empty()) {
    throw Error(ErrorKind::kEmptySlides, "slides text has no usable lines");
  }
  return slides;
}

std::vector<Sentence> SentenceStream(const Paper& paper) {
  std::vector<Sentence> stream;
  stream.reserve(paper.SentenceCount());
  stream.insert(stream.end(), paper.abstract_sentences.begin(),
                paper.abstract_sentences.end());
  for (const auto& section : paper.sections) {
    stream.insert(stream.end(), section.sentences.begin(), section.sentences.end());
  }
  return stream;
}

SectionKind KindOfSentence(const Paper& paper, const Sentence& sentence) {
  if (sentence.section_index == kAbstractSectionIndex) return SectionKind::kAbstract;
  return paper.sections.at(static_cast<std::size_t>(sentence.section_index)).kind;
}

std::size_t SectionSizeOf(const Paper& paper, const Sentence& sentence) {
  if (sentence.section_index == kAbstractSectionIndex) {
    return paper.abstract_sentences.size();
  }
  return paper.sections.at(static_cast<std::size_t>(sentence.section_index))
      .sentences.size();
}

std::vector<RefMark> DanglingRefs(const Paper& paper) {
  std::vector<RefMark> dangling;
  for (const auto& sentence : SentenceStream(paper)) {
    for (const auto& mark : sentence.ref_marks) {
      if (mark.IsDangling()) dangling.push_back(mark);
    }
  }
  return dangling;
}

std::int64_t PaperCharacterCount(const Paper& paper) {
  std::int64_t total = 0;
  for (const auto& sentence : SentenceStream(paper)) {
    total += CharacterCount(sentence.text);
  }
  return total;
}

}  // namespace deckgen
