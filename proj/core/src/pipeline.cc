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

#include "deckgen/pipeline.h"

#include <fmt/format.h>

#include <cmath>

#include "deckgen/error.h"
#include "deckgen/text.h"

namespace deckgen {
namespace {

std::vector<std::string> Texts(const std::vector<Sentence>& sentences) {
  std::vector<std::string> texts;
  texts.reserve(sentences.size());
  for (const auto& s : sentences) texts.push_back(s.text);
  return texts;
}

}  // namespace

void RunConfig::Validate() const {
  if (!(theta >= -1.0 && theta <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("theta {} is outside [-1, 1]", theta));
  }
  if (!(size_fraction > 0.0 && size_fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("size fraction {} is outside (0, 1]", size_fraction));
  }
  if (size && *size < 0) throw Error(ErrorKind::kInvalidArgument, "size must be >= 0");
  provider.Validate();
}

std::string_view SizeSourceName(SizeSource source) {
  switch (source) {
    case SizeSource::kExplicit:
      return "explicit";
    case SizeSource::kModel:
      return "model";
    case SizeSource::kFraction:
      return "fraction";
  }
  return "fraction";
}

std::int64_t ChooseSizeBudget(const Paper& paper, const RunConfig& config,
                              const SizeModel* size_model, SizeSource* source) {
  SizeSource chosen = SizeSource::kFraction;
  std::int64_t budget = 0;
  if (config.size) {
    chosen = SizeSource::kExplicit;
    budget = *config.size;
  } else if (size_model != nullptr) {
    chosen = SizeSource::kModel;
    budget = PredictSize(*size_model, paper);
  } else {
    budget = FallbackSize(paper, config.size_fraction);
  }
  if (source != nullptr) *source = chosen;
  return budget;
}

GenerateResult Generate(const Paper& paper, const MlpModel& model, const SizeModel* size_model,
                        const RunConfig& config, const EmbeddingProvider& provider,
                        const CorpusStats& stats) {
  config.Validate();
  const std::vector<Sentence> stream = SentenceStream(paper);
  const std::vector<Vector> vectors = provider.EmbedAll(Texts(stream));
  const FeatureMatrix features = ExtractFeatures(paper, vectors, provider, stats);

  GenerateResult result;
  result.scores = Predict(model, features);
  result.size_budget = ChooseSizeBudget(paper, config, size_model, &result.size_source);

  std::vector<std::size_t> candidates;
  for (const auto& sentence : stream) {
    if (config.include_abstract || sentence.section_index != kAbstractSectionIndex) {
      candidates.push_back(sentence.global_index);
    }
  }
  SelectionProblem problem;
  problem.size_budget = result.size_budget;
  problem.theta = config.theta;
  std::vector<Vector> candidate_vectors;
  for (std::size_t index : candidates) {
    problem.lengths.push_back(CharacterCount(stream[index].text));
    problem.scores.push_back(result.scores[index]);
    candidate_vectors.push_back(vectors[index]);
  }
  problem.sims = SimilarityMatrix(candidate_vectors);
  result.used_exact_solver = problem.size() <= config.exact_cutover;
  const Selection local = Select(problem, config.exact_cutover);

  std::vector<std::size_t> chosen;
  for (std::size_t i : local.chosen) chosen.push_back(candidates[i]);
  result.selection = local;
  result.selection.chosen = chosen;

  if (result.selection.total_length > result.size_budget ||
      (chosen.size() >= 2 && result.selection.avg_similarity > config.theta + 1e-9)) {
    throw Error(ErrorKind::kInvariant, "selection violates its constraints");
  }

  AttachResult attached = BuildOutline(paper, chosen, vectors, provider, stats.pos_lexicon);
  result.outline = std::move(attached.outline);
  result.warnings = std::move(attached.warnings);
  result.deck = BuildDeck(result.outline, paper, config.layout);
  result.deck_text = FormatDeck(result.deck);
  return result;
}

std::string FormatReport(const GenerateResult& result, const RunConfig& config) {
  std::string out;
  out += fmt::format("size={}\n", result.size_budget);
  out += fmt::format("size_source={}\n", SizeSourceName(result.size_source));
  out += fmt::format("theta={}\n", config.theta);
  out += fmt::format("solver={}\n", result.used_exact_solver ? "exact" : "heuristic");
  out += fmt::format("selected={}\n", result.selection.chosen.size());
  out += fmt::format("total_length={}\n", result.selection.total_length);
  out += fmt::format("objective={}\n", result.selection.objective);
  out += fmt::format("avg_similarity={}\n", result.selection.avg_similarity);
  out += fmt::format("clusters={}\n", result.outline.clusters.size());
  out += fmt::format("slides={}\n", result.deck.slides.size());
  if (result.selection.chosen.empty()) out += "note=empty selection\n";
  for (const auto& warning : result.warnings) out += fmt::format("warning={}\n", warning);
  return out;
}

SalienceLabels LabelPaper(const Paper& paper, const SlideText& slides,
                          const EmbeddingProvider& provider) {
  const std::vector<Vector> paper_vectors = provider.EmbedAll(Texts(SentenceStream(paper)));
  const std::vector<Vector> slide_vectors = provider.EmbedAll(slides.sentences);
  return LabelSalience(paper_vectors, slide_vectors);
}

TrainingExample BuildTrainingExample(const Paper& paper, const SlideText& slides,
                                     const EmbeddingProvider& provider, const CorpusStats& stats) {
  const std::vector<Vector> paper_vectors = provider.EmbedAll(Texts(SentenceStream(paper)));
  const std::vector<Vector> slide_vectors = provider.EmbedAll(slides.sentences);
  TrainingExample example;
  example.features = ExtractFeatures(paper, paper_vectors, provider, stats);
  example.labels = LabelSalience(paper_vectors, slide_vectors);
  return example;
}

SizeSample MakeSizeSample(const Paper& paper, const SlideText& slides) {
  SizeSample sample;
  sample.features = ComputeSizeFeatures(paper);
  for (const auto& sentence : slides.sentences) {
    sample.presentation_chars += static_cast<double>(CharacterCount(sentence));
  }
  return sample;
}

}  // namespace deckgen
