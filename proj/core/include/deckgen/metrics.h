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

// ROUGE-1, ROUGE-2 and ROUGE-SU4 with clipped multiset overlap. No stemming
// and no stopword removal. SU4 features are the unigrams plus every ordered
// token pair at most five positions apart (up to four tokens skipped); no
// sentence-start marker is added.

#ifndef DECKGEN_METRICS_H_
#define DECKGEN_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deckgen {

enum class RougeMetric { kRouge1, kRouge2, kRougeSU4 };

struct RougeScore {
  RougeMetric metric = RougeMetric::kRouge1;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Raw counts behind the ratios.
  long overlap = 0;
  long candidate_count = 0;
  long reference_count = 0;
};

// n must be 1 or 2.
RougeScore RougeN(std::span<const std::string> candidate,
                  std::span<const std::string> reference, int n);

RougeScore RougeSU4(std::span<const std::string> candidate,
                    std::span<const std::string> reference);

struct CorpusScores {
  std::size_t pairs = 0;
  double rouge1 = 0.0;  // mean F1
  double rouge2 = 0.0;
  double rouge_su4 = 0.0;
};

// Tokenizes both sides of each (candidate, reference) pair and averages the
// per-pair F1 scores. Throws Error{kEmptyCorpus} on an empty input.
CorpusScores EvaluateCorpus(std::span<const std::pair<std::string, std::string>> pairs);

// Aligned table with columns Algorithm / Rouge 1 / Rouge 2 / Rouge SU4;
// scores shown as F1 x 100 with two decimals.
std::string FormatScoreTable(std::span<const std::pair<std::string, CorpusScores>> rows);

}  // namespace deckgen

#endif  // DECKGEN_METRICS_H_
