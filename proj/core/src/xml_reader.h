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

#ifndef DECKGEN_XML_READER_H_
#define DECKGEN_XML_READER_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace deckgen::xml {

struct Element;

// A child is either character data or a nested element.
struct Node {
  std::string text;
  std::unique_ptr<Element> element;
};

struct Element {
  std::string name;
  std::map<std::string, std::string> attributes;
  std::vector<Node> children;
  long line = 0;
  long column = 0;

  const std::string* Attribute(const std::string& key) const;
};

// Builds a small DOM with expat. Throws Error{kMalformedXml} carrying the
// parser's line and column.
std::unique_ptr<Element> ReadDocument(std::string_view xml_text);

}  // namespace deckgen::xml

#endif  // DECKGEN_XML_READER_H_
