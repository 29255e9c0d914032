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

#include "deckgen/organize.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "deckgen/error.h"
#include "deckgen/text.h"

namespace deckgen {
namespace {

constexpr std::size_t kFallbackTitleTokens = 5;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins, so every root is its component's minimum.
  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t CountAt(std::span<const double> sims, std::size_t n, double threshold) {
  return ComponentsAtThreshold(sims, n, threshold).size();
}

}  // namespace

std::vector<std::vector<std::size_t>> ComponentsAtThreshold(std::span<const double> sims,
                                                            std::size_t n, double threshold) {
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sims[i * n + j] >= threshold) sets.Union(i, j);
    }
  }
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.Find(i);
    if (slot[root] == n) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].push_back(i);
  }
  return components;
}

std::vector<double> CandidateThresholds(std::span<const double> sims, std::size_t n) {
  std::vector<double> weights;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) weights.push_back(sims[i * n + j]);
  }
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
  weights.push_back(std::numeric_limits<double>::infinity());
  return weights;
}

ThresholdChoice ChooseThreshold(std::span<const double> sims, std::size_t n) {
  if (sims.size() != n * n) {
    throw Error(ErrorKind::kInvalidArgument, "similarity matrix is not n x n");
  }
  const std::vector<double> candidates = CandidateThresholds(sims, n);
  const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(n) / 3.0));

  // First candidate index whose component count reaches `wanted`.
  const auto first_reaching = [&](std::size_t wanted) {
    std::size_t lo = 0;
    std::size_t hi = candidates.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (CountAt(sims, n, candidates[mid]) >= wanted) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  };
  const auto distance = [target](std::size_t count) {
    return count > target ? count - target : target - count;
  };

  std::size_t chosen = first_reaching(target);
  if (chosen == candidates.size()) chosen = candidates.size() - 1;
  std::size_t chosen_count = CountAt(sims, n, candidates[chosen]);
  if (chosen > 0) {
    const std::size_t below_count = CountAt(sims, n, candidates[chosen - 1]);
    if (distance(below_count) <= distance(chosen_count)) {
      // Smallest threshold on the plateau with that count.
      chosen = first_reaching(below_count);
      chosen_count = below_count;
    }
  }
  ThresholdChoice choice;
  choice.threshold = candidates[chosen];
  choice.components = ComponentsAtThreshold(sims, n, choice.threshold);
  choice.component_count = choice.components.size();
  if (choice.component_count != chosen_count) {
    throw Error(ErrorKind::kInvariant, "component count changed between evaluations");
  }
  return choice;
}

std::vector<std::vector<std::size_t>> ClusterSentences(std::span<const std::size_t> selected,
                                                       std::span<const Vector> vectors) {
  std::vector<std::size_t> sorted(selected.begin(), selected.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n == 0) return {};
  std::vector<double> sims(n * n, 1.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      const double c = Cosine(vectors[sorted[a]], vectors[sorted[b]]);
      sims[a * n + b] = c;
      sims[b * n + a] = c;
    }
  }
  const ThresholdChoice choice = ChooseThreshold(sims, n);
  std::vector<std::vector<std::size_t>> clusters;
  for (const auto& component : choice.components) {
    std::vector<std::size_t> members;
    for (std::size_t local : component) members.push_back(sorted[local]);
    clusters.push_back(std::move(members));
  }
  return clusters;
}

std::vector<TitleCandidate> ScoreTitleCandidates(std::span<const Sentence> members,
                                                 std::span<const Vector> member_vectors,
                                                 const EmbeddingProvider& provider,
                                                 const PosLexicon& lexicon) {
  if (members.size() != member_vectors.size()) {
    throw Error(ErrorKind::kLengthMismatch, "cluster members and vectors differ in count");
  }
  std::vector<TitleCandidate> candidates;
  for (const auto& sentence : members) {
    for (const auto& phrase : NounPhrases(sentence.tokens, lexicon)) {
      TitleCandidate candidate;
      candidate.phrase = Join(phrase, " ");
      const Vector phrase_vector = provider.Embed(candidate.phrase);
      double sum = 0.0;
      for (const auto& v : member_vectors) sum += Cosine(phrase_vector, v);
      candidate.score = sum / static_cast<double>(member_vectors.size());
      candidates.push_back(std::move(candidate));
    }
  }
  return candidates;
}

std::string TitleCluster(std::span<const Sentence> members,
                         std::span<const Vector> member_vectors,
                         const EmbeddingProvider& provider, const PosLexicon& lexicon) {
  if (members.empty()) throw Error(ErrorKind::kInvalidArgument, "cannot title an empty cluster");
  const std::vector<TitleCandidate> candidates =
      ScoreTitleCandidates(members, member_vectors, provider, lexicon);
  const TitleCandidate* best = nullptr;
  for (const auto& candidate : candidates) {
    if (best == nullptr || candidate.score > best->score) best = &candidate;
  }
  if (best != nullptr) return TitleCase(best->phrase);

  const auto& tokens = members.front().tokens;
  if (tokens.empty()) return members.front().text;
  const std::size_t take = std::min(kFallbackTitleTokens, tokens.size());
  return TitleCase(Join(std::vector<std::string>(tokens.begin(),
                                                 tokens.begin() + static_cast<std::ptrdiff_t>(take)),
                        " "));
}

AttachResult AttachGraphics(Outline outline, const Paper& paper) {
  AttachResult result;
  const std::vector<Sentence> stream = SentenceStream(paper);
  std::set<std::string> owned;
  for (auto& cluster : outline.clusters) {
    cluster.graphics.clear();
    for (std::size_t index : cluster.members) {
      for (const auto& mark : stream.at(index).ref_marks) {
        if (!mark.IsGraphicRef()) continue;
        if (paper.FindGraphic(mark.target) == nullptr) {
          result.warnings.push_back(fmt::format("sentence {} references missing {} '{}'", index,
                                                RefKindName(mark.kind), mark.target));
          continue;
        }
        if (owned.insert(mark.target).second) cluster.graphics.push_back(mark.target);
      }
    }
  }
  result.outline = std::move(outline);
  return result;
}

AttachResult BuildOutline(const Paper& paper, std::span<const std::size_t> selected,
                          std::span<const Vector> vectors, const EmbeddingProvider& provider,
                          const PosLexicon& lexicon) {
  const std::vector<Sentence> stream = SentenceStream(paper);
  if (vectors.size() != stream.size()) {
    throw Error(ErrorKind::kLengthMismatch, "one vector per paper sentence is required");
  }
  Outline outline;
  for (auto& members : ClusterSentences(selected, vectors)) {
    std::vector<Sentence> sentences;
    std::vector<Vector> member_vectors;
    for (std::size_t index : members) {
      sentences.push_back(stream.at(index));
      member_vectors.push_back(vectors[index]);
    }
    Cluster cluster;
    cluster.title = TitleCluster(sentences, member_vectors, provider, lexicon);
    cluster.members = std::move(members);
    outline.clusters.push_back(std::move(cluster));
  }
  return AttachGraphics(std::move(outline), paper);
}

}  // namespace deckgen
