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

#ifndef DECKGEN_BUNDLED_DATA_H_
#define DECKGEN_BUNDLED_DATA_H_

#include <string_view>

namespace deckgen::bundled {

// Contents of core/data/stopwords.txt.
std::string_view StopwordsText();
// Contents of core/data/pos_lexicon.tsv.
std::string_view PosLexiconText();

}  // namespace deckgen::bundled

#endif  // DECKGEN_BUNDLED_DATA_H_
