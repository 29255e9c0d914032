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

// Sentence selection under a length budget and a redundancy bound.
//
// Choose X in {0,1}^N to maximize sum_i L_i * S_i * X_i subject to
//
//   sum_i L_i * X_i <= Size
//   mean over chosen unordered pairs of sim(i, j) <= theta
//
// The redundancy bound is enforced in its linear form
// sum_{i<j chosen} (sim(i, j) - theta) <= 0, and is vacuous when fewer than
// two sentences are chosen. All sums run in ascending index order so that
// objective values are reproducible bit for bit.

#ifndef DECKGEN_SELECTION_H_
#define DECKGEN_SELECTION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deckgen/document.h"
#include "deckgen/embedding.h"

namespace deckgen {

inline constexpr double kDefaultTheta = 0.55;
inline constexpr std::size_t kDefaultExactCutover = 25;
// Slack on the pair-excess sum when testing the redundancy bound.
inline constexpr double kRedundancyTolerance = 1e-9;

struct SelectionProblem {
  std::vector<std::int64_t> lengths;  // characters, > 0
  std::vector<double> scores;
  std::vector<double> sims;  // N x N row-major, symmetric, unit diagonal
  std::int64_t size_budget = 0;
  double theta = kDefaultTheta;

  std::size_t size() const { return lengths.size(); }
  double Sim(std::size_t i, std::size_t j) const { return sims[i * lengths.size() + j]; }

  // Throws Error{kInvalidArgument} when a structural invariant fails.
  void Validate() const;
};

// Pairwise cosine matrix with the diagonal pinned to 1.
std::vector<double> SimilarityMatrix(std::span<const Vector> vectors);

struct Selection {
  std::vector<std::size_t> chosen;  // ascending
  double objective = 0.0;
  double avg_similarity = 0.0;  // 0 when fewer than two chosen
  std::int64_t total_length = 0;
};

// Objective, average similarity and length of an index set (ascending).
Selection EvaluateSelection(const SelectionProblem& problem,
                            std::span<const std::size_t> chosen);

bool IsFeasible(const SelectionProblem& problem, std::span<const std::size_t> chosen);

// Depth-first branch and bound with a fractional-knapsack bound. Among
// equal-objective optima the lexicographically smallest index sequence
// wins. Throws Error{kTooLarge} if N exceeds max_size.
Selection SelectExact(const SelectionProblem& problem,
                      std::size_t max_size = kDefaultExactCutover);

// Greedy insertion from several priority orders, each followed by
// first-improvement local search over add, drop and swap moves. Always
// feasible.
Selection SelectHeuristic(const SelectionProblem& problem);

// Exact up to `cutover` sentences, heuristic above.
Selection Select(const SelectionProblem& problem,
                 std::size_t cutover = kDefaultExactCutover);

inline constexpr std::size_t kNumSizeFeatures = 8;
inline constexpr std::int64_t kMinPredictedSize = 200;
inline constexpr double kDefaultSizeFraction = 0.20;

// Paper char count, sentence count, section count, graphic count,
// reference count, mean tokens per sentence, mean chars per sentence, 1.
using SizeFeatures = std::array<double, kNumSizeFeatures>;

SizeFeatures ComputeSizeFeatures(const Paper& paper);
const std::array<const char*, kNumSizeFeatures>& SizeFeatureNames();

struct SizeModel {
  std::array<double, kNumSizeFeatures> coefficients{};
};

struct SizeSample {
  SizeFeatures features;
  double presentation_chars = 0.0;
};

// Linear prediction clamped to [200, paper characters].
std::int64_t PredictSize(const SizeModel& model, const Paper& paper);
// round(fraction * paper characters).
std::int64_t FallbackSize(const Paper& paper, double fraction = kDefaultSizeFraction);

// Least squares through the normal equations of the column-scaled design,
// with 1e-8 added to the diagonal. Throws Error{kTooFewPairs} below 8 samples.
SizeModel TrainSizeModel(std::span<const SizeSample> samples);

std::string SerializeSizeModel(const SizeModel& model);
SizeModel DeserializeSizeModel(std::string_view json_text);

}  // namespace deckgen

#endif  // DECKGEN_SELECTION_H_
