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

#include "deckgen/metrics.h"

#include <fmt/format.h>

#include <algorithm>
#include <map>

#include "deckgen/error.h"
#include "deckgen/text.h"

namespace deckgen {
namespace {

constexpr std::size_t kMaxSkipDistance = 5;

using FeatureCounts = std::map<std::string, long>;

// Unit separator keeps "a b" + "c" distinct from "a" + "b c".
constexpr char kJoin = '\x1f';

FeatureCounts NGrams(std::span<const std::string> tokens, std::size_t n) {
  FeatureCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = fmt::format("{}:", n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) key += kJoin;
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

FeatureCounts SkipUnits(std::span<const std::string> tokens) {
  FeatureCounts counts = NGrams(tokens, 1);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = i + 1; j < tokens.size() && j - i <= kMaxSkipDistance; ++j) {
      ++counts["s:" + tokens[i] + kJoin + tokens[j]];
    }
  }
  return counts;
}

long Total(const FeatureCounts& counts) {
  long total = 0;
  for (const auto& [key, count] : counts) total += count;
  return total;
}

RougeScore Score(RougeMetric metric, const FeatureCounts& candidate,
                 const FeatureCounts& reference) {
  RougeScore score;
  score.metric = metric;
  for (const auto& [key, count] : candidate) {
    auto it = reference.find(key);
    if (it != reference.end()) score.overlap += std::min(count, it->second);
  }
  score.candidate_count = Total(candidate);
  score.reference_count = Total(reference);
  if (score.candidate_count > 0) {
    score.precision = static_cast<double>(score.overlap) / static_cast<double>(score.candidate_count);
  }
  if (score.reference_count > 0) {
    score.recall = static_cast<double>(score.overlap) / static_cast<double>(score.reference_count);
  }
  if (score.precision + score.recall > 0.0) {
    score.f1 = 2.0 * (score.precision * score.recall) / (score.precision + score.recall);
  }
  return score;
}

}  // namespace

RougeScore RougeN(std::span<const std::string> candidate,
                  std::span<const std::string> reference, int n) {
  if (n != 1 && n != 2) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("ROUGE-N needs n in {{1,2}}, got {}", n));
  }
  const auto order = static_cast<std::size_t>(n);
  return Score(n == 1 ? RougeMetric::kRouge1 : RougeMetric::kRouge2, NGrams(candidate, order),
               NGrams(reference, order));
}

RougeScore RougeSU4(std::span<const std::string> candidate,
                    std::span<const std::string> reference) {
  return Score(RougeMetric::kRougeSU4, SkipUnits(candidate), SkipUnits(reference));
}

CorpusScores EvaluateCorpus(std::span<const std::pair<std::string, std::string>> pairs) {
  if (pairs.empty()) throw Error(ErrorKind::kEmptyCorpus, "no pairs to evaluate");
  CorpusScores scores;
  for (const auto& [candidate_text, reference_text] : pairs) {
    const std::vector<std::string> candidate = Tokenize(candidate_text);
    const std::vector<std::string> reference = Tokenize(reference_text);
    scores.rouge1 += RougeN(candidate, reference, 1).f1;
    scores.rouge2 += RougeN(candidate, reference, 2).f1;
    scores.rouge_su4 += RougeSU4(candidate, reference).f1;
  }
  scores.pairs = pairs.size();
  const auto n = static_cast<double>(pairs.size());
  scores.rouge1 /= n;
  scores.rouge2 /= n;
  scores.rouge_su4 /= n;
  return scores;
}

std::string FormatScoreTable(std::span<const std::pair<std::string, CorpusScores>> rows) {
  std::size_t width = std::string_view("Algorithm").size();
  for (const auto& [name, scores] : rows) width = std::max(width, name.size());
  std::string out = fmt::format("{:<{}}  {:>9}  {:>9}  {:>9}\n", "Algorithm", width, "Rouge 1",
                                "Rouge 2", "Rouge SU4");
  for (const auto& [name, scores] : rows) {
    out += fmt::format("{:<{}}  {:>9.2f}  {:>9.2f}  {:>9.2f}\n", name, width,
                       100.0 * scores.rouge1, 100.0 * scores.rouge2, 100.0 * scores.rouge_su4);
  }
  return out;
}

}  // namespace deckgen
