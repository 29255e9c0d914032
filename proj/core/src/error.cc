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

#include "deckgen/error.h"

namespace deckgen {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedXml:
      return "MalformedXml";
    case ErrorKind::kSchemaViolation:
      return "SchemaViolation";
    case ErrorKind::kEmptySlides:
      return "EmptySlides";
    case ErrorKind::kCacheMiss:
      return "CacheMiss";
    case ErrorKind::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorKind::kLengthMismatch:
      return "LengthMismatch";
    case ErrorKind::kEmptyReference:
      return "EmptyReference";
    case ErrorKind::kSchemaMismatch:
      return "SchemaMismatch";
    case ErrorKind::kEmptyTrainingSet:
      return "EmptyTrainingSet";
    case ErrorKind::kTooLarge:
      return "TooLarge";
    case ErrorKind::kTooFewPairs:
      return "TooFewPairs";
    case ErrorKind::kEmptyCorpus:
      return "EmptyCorpus";
    case ErrorKind::kInvalidArgument:
      return "InvalidArgument";
    case ErrorKind::kIo:
      return "Io";
    case ErrorKind::kInvariant:
      return "Invariant";
  }
  return "Unknown";
}

}  // namespace deckgen
