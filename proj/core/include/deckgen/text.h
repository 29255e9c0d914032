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

// Text primitives shared by every stage: the tokenizer, whitespace
// normalization, character counting and the FNV-1a hash.

#ifndef DECKGEN_TEXT_H_
#define DECKGEN_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace deckgen {

// Lowercases ASCII letters and splits on every maximal run of
// non-alphanumeric characters. Bytes >= 0x80 count as word characters so
// UTF-8 encoded letters stay inside their token.
std::vector<std::string> Tokenize(std::string_view text);

// Collapses whitespace runs to one space and trims both ends.
std::string NormalizeWhitespace(std::string_view text);

std::string ToLowerAscii(std::string_view text);

// True if the text contains at least one word character (see Tokenize).
bool HasWordCharacter(std::string_view text);

// Number of Unicode code points in a UTF-8 string; this is the unit of every
// "characters" quantity (sentence length, size budget).
std::int64_t CharacterCount(std::string_view text);

// 64-bit FNV-1a over the raw bytes.
std::uint64_t Fnv1a64(std::string_view bytes);

// 16 lowercase hex digits, zero padded.
std::string HexKey(std::uint64_t value);

// Uppercases the first ASCII letter of each space-separated word.
std::string TitleCase(std::string_view text);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace deckgen

#endif  // DECKGEN_TEXT_H_
