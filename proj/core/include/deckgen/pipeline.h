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

// End-to-end composition: paper -> vectors -> features -> salience ->
// size budget -> selection -> clusters -> deck.

#ifndef DECKGEN_PIPELINE_H_
#define DECKGEN_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deckgen/document.h"
#include "deckgen/embedding.h"
#include "deckgen/features.h"
#include "deckgen/organize.h"
#include "deckgen/render.h"
#include "deckgen/salience.h"
#include "deckgen/selection.h"

namespace deckgen {

struct RunConfig {
  double theta = kDefaultTheta;
  std::optional<std::int64_t> size;  // explicit budget in characters
  double size_fraction = kDefaultSizeFraction;
  std::uint64_t seed = 42;
  ProviderConfig provider;
  std::size_t exact_cutover = kDefaultExactCutover;
  // Abstract sentences are selection candidates unless this is off.
  bool include_abstract = true;
  LayoutConfig layout;

  // Throws Error{kInvalidArgument} for out-of-range values.
  void Validate() const;
};

enum class SizeSource { kExplicit, kModel, kFraction };

std::string_view SizeSourceName(SizeSource source);

struct GenerateResult {
  std::int64_t size_budget = 0;
  SizeSource size_source = SizeSource::kFraction;
  std::vector<double> scores;  // one per paper sentence
  Selection selection;         // global sentence indices
  bool used_exact_solver = false;
  Outline outline;
  Deck deck;
  std::string deck_text;
  std::vector<std::string> warnings;
};

// Budget precedence: explicit size, then the size model, then the fraction
// of the paper's characters.
std::int64_t ChooseSizeBudget(const Paper& paper, const RunConfig& config,
                              const SizeModel* size_model, SizeSource* source);

GenerateResult Generate(const Paper& paper, const MlpModel& model, const SizeModel* size_model,
                        const RunConfig& config, const EmbeddingProvider& provider,
                        const CorpusStats& stats);

// key=value lines describing a generation run.
std::string FormatReport(const GenerateResult& result, const RunConfig& config);

struct TrainingExample {
  FeatureMatrix features;
  SalienceLabels labels;
};

TrainingExample BuildTrainingExample(const Paper& paper, const SlideText& slides,
                                     const EmbeddingProvider& provider, const CorpusStats& stats);

// Labels for every paper sentence against the slide sentences.
SalienceLabels LabelPaper(const Paper& paper, const SlideText& slides,
                          const EmbeddingProvider& provider);

// Size-regression sample: paper statistics and the character count of the
// reference slide text.
SizeSample MakeSizeSample(const Paper& paper, const SlideText& slides);

}  // namespace deckgen

#endif  // DECKGEN_PIPELINE_H_
