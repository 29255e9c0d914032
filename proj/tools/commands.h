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

// The deckgen command line: generate, label, features, train, train-size,
// rouge and evaluate.
//
// Exit codes: 0 success, 1 usage, 2 input error, 3 internal invariant
// breach. Failures print one line to the error stream:
//
//   error: kind=<ErrorKind> [path=<file>] message=<text>

#ifndef DECKGEN_TOOLS_COMMANDS_H_
#define DECKGEN_TOOLS_COMMANDS_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace deckgen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

// args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct PairFiles {
  std::string stem;
  std::filesystem::path paper;
  std::filesystem::path slides;
};

// Matches <stem>.paper.xml with <stem>.slides.txt, sorted by stem. Stems
// with only one of the two files are returned in `unmatched`.
std::vector<PairFiles> ListPairs(const std::filesystem::path& dir,
                                 std::vector<std::filesystem::path>* unmatched);

}  // namespace deckgen::cli

#endif  // DECKGEN_TOOLS_COMMANDS_H_
