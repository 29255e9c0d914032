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

#ifndef DECKGEN_ORGANIZE_H_
#define DECKGEN_ORGANIZE_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "deckgen/document.h"
#include "deckgen/embedding.h"
#include "deckgen/features.h"

namespace deckgen {

struct Cluster {
  std::vector<std::size_t> members;  // global sentence indices, ascending
  std::string title;
  std::vector<std::string> graphics;  // graphic ids, first-mention order

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Outline {
  // Ordered by first member.
  std::vector<Cluster> clusters;

  friend bool operator==(const Outline&, const Outline&) = default;
};

// Connected components of the graph on n nodes that keeps the edges with
// similarity >= threshold. Components are sorted by smallest member and
// members ascend. `sims` is n x n row-major.
std::vector<std::vector<std::size_t>> ComponentsAtThreshold(std::span<const double> sims,
                                                            std::size_t n, double threshold);

struct ThresholdChoice {
  double threshold = std::numeric_limits<double>::infinity();
  std::size_t component_count = 0;
  std::vector<std::vector<std::size_t>> components;
};

// Candidate thresholds, ascending: every distinct off-diagonal weight, then
// +infinity.
std::vector<double> CandidateThresholds(std::span<const double> sims, std::size_t n);

// Binary-searches the candidate thresholds for a component count closest to
// round(n / 3); ties go to the smaller threshold. Relies on the component
// count never decreasing as the threshold rises.
ThresholdChoice ChooseThreshold(std::span<const double> sims, std::size_t n);

// Clusters the selected sentences; vectors are indexed by global sentence
// index. Returns global-index member lists ordered by first member.
std::vector<std::vector<std::size_t>> ClusterSentences(std::span<const std::size_t> selected,
                                                       std::span<const Vector> vectors);

struct TitleCandidate {
  std::string phrase;
  double score = 0.0;
};

// Scores every noun phrase of the member sentences by its mean cosine with
// the members' vectors and returns the best one in title case. Falls back
// to the first five tokens of the first member.
std::string TitleCluster(std::span<const Sentence> members,
                         std::span<const Vector> member_vectors,
                         const EmbeddingProvider& provider, const PosLexicon& lexicon);

// Every noun-phrase candidate of a cluster with its phrase score, in the
// order they are considered.
std::vector<TitleCandidate> ScoreTitleCandidates(std::span<const Sentence> members,
                                                 std::span<const Vector> member_vectors,
                                                 const EmbeddingProvider& provider,
                                                 const PosLexicon& lexicon);

struct AttachResult {
  Outline outline;
  std::vector<std::string> warnings;
};

// Attaches each resolvable table/figure/equation reference to the first
// cluster that mentions it. Dangling targets are reported as warnings.
AttachResult AttachGraphics(Outline outline, const Paper& paper);

// Cluster, title and attach in one step.
AttachResult BuildOutline(const Paper& paper, std::span<const std::size_t> selected,
                          std::span<const Vector> vectors, const EmbeddingProvider& provider,
                          const PosLexicon& lexicon);

}  // namespace deckgen

#endif  // DECKGEN_ORGANIZE_H_
