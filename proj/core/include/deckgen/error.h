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

#ifndef DECKGEN_ERROR_H_
#define DECKGEN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace deckgen {

enum class ErrorKind {
  kMalformedXml,
  kSchemaViolation,
  kEmptySlides,
  kCacheMiss,
  kDimensionMismatch,
  kLengthMismatch,
  kEmptyReference,
  kSchemaMismatch,
  kEmptyTrainingSet,
  kTooLarge,
  kTooFewPairs,
  kEmptyCorpus,
  kInvalidArgument,
  kIo,
  kInvariant,
};

// Stable identifier used in machine-readable error lines, e.g. "MalformedXml".
std::string_view ErrorKindName(ErrorKind kind);

// All library failures are reported through this exception type. The kind
// is what callers dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace deckgen

#endif  // DECKGEN_ERROR_H_
