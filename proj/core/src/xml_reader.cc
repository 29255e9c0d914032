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

#include "xml_reader.h"

#include <expat.h>
#include <fmt/format.h>

#include <climits>

#include "deckgen/error.h"

namespace deckgen::xml {
namespace {

struct BuildState {
  XML_Parser parser = nullptr;
  std::unique_ptr<Element> root;
  std::vector<Element*> stack;
};

void OnStart(void* user_data, const XML_Char* name, const XML_Char** attrs) {
  auto* state = static_cast<BuildState*>(user_data);
  auto element = std::make_unique<Element>();
  element->name = name;
  element->line = static_cast<long>(XML_GetCurrentLineNumber(state->parser));
  element->column =
      static_cast<long>(XML_GetCurrentColumnNumber(state->parser)) + 1;
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    element->attributes.emplace(attrs[i], attrs[i + 1]);
  }
  Element* raw = element.get();
  if (state->stack.empty()) {
    state->root = std::move(element);
  } else {
    Node node;
    node.element = std::move(element);
    state->stack.back()->children.push_back(std::move(node));
  }
  state->stack.push_back(raw);
}

void OnEnd(void* user_data, const XML_Char* /*name*/) {
  static_cast<BuildState*>(user_data)->stack.pop_back();
}

void OnText(void* user_data, const XML_Char* text, int len) {
  auto* state = static_cast<BuildState*>(user_data);
  if (state->stack.empty()) return;
  auto& children = state->stack.back()->children;
  // Expat may deliver one run of character data in several callbacks.
  if (children.empty() || children.back().element != nullptr) {
    children.emplace_back();
  }
  children.back().text.append(text, static_cast<std::size_t>(len));
}

struct ParserDeleter {
  void operator()(XML_ParserStruct* parser) const { XML_ParserFree(parser); }
};

}  // namespace

const std::string* Element::Attribute(const std::string& key) const {
  auto it = attributes.find(key);
  return it == attributes.end() ? nullptr : &it->second;
}

std::unique_ptr<Element> ReadDocument(std::string_view xml_text) {
  if (xml_text.size() > static_cast<std::size_t>(INT_MAX)) {
    throw Error(ErrorKind::kMalformedXml, "document too large");
  }
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(
      XML_ParserCreate("UTF-8"));
  if (!parser) throw Error(ErrorKind::kInvariant, "cannot allocate XML parser");

  BuildState state;
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), OnStart, OnEnd);
  XML_SetCharacterDataHandler(parser.get(), OnText);

  if (XML_Parse(parser.get(), xml_text.data(), static_cast<int>(xml_text.size()),
                XML_TRUE) == XML_STATUS_ERROR) {
    throw Error(ErrorKind::kMalformedXml,
                fmt::format("line {} column {}: {}",
                            XML_GetCurrentLineNumber(parser.get()),
                            XML_GetCurrentColumnNumber(parser.get()) + 1,
                            XML_ErrorString(XML_GetErrorCode(parser.get()))));
  }
  if (!state.root) throw Error(ErrorKind::kMalformedXml, "line 1 column 1: no root element");
  return std::move(state.root);
}

}  // namespace deckgen::xml
