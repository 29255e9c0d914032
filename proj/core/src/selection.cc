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

#include "deckgen/selection.h"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "deckgen/error.h"
#include "deckgen/text.h"
#include "json.hpp"

namespace deckgen {
namespace {

using Json = nlohmann::ordered_json;

// Sum of (sim - theta) over unordered chosen pairs, i ascending then j < i
// ascending.
double PairExcess(const SelectionProblem& p, std::span<const std::size_t> chosen) {
  double excess = 0.0;
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) excess += p.Sim(chosen[a], chosen[b]) - p.theta;
  }
  return excess;
}

bool RedundancyOk(std::size_t count, double excess) {
  return count < 2 || excess <= kRedundancyTolerance;
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const SelectionProblem& p) : p_(p) {
    by_score_.resize(p.size());
    std::iota(by_score_.begin(), by_score_.end(), 0);
    std::stable_sort(by_score_.begin(), by_score_.end(),
                     [&](std::size_t a, std::size_t b) { return p.scores[a] > p.scores[b]; });
  }

  std::vector<std::size_t> Solve() {
    best_objective_ = 0.0;
    best_.clear();
    current_.clear();
    Visit(0, 0, 0.0, 0.0);
    return best_;
  }

 private:
  // Fractional knapsack over undecided items (index >= next) with positive
  // score; an upper bound on what they can still add.
  double Bound(std::size_t next, std::int64_t length) const {
    double remaining = static_cast<double>(p_.size_budget - length);
    double gain = 0.0;
    for (std::size_t i : by_score_) {
      if (p_.scores[i] <= 0.0 || remaining <= 0.0) break;
      if (i < next) continue;
      const double take = std::min(remaining, static_cast<double>(p_.lengths[i]));
      gain += take * p_.scores[i];
      remaining -= take;
    }
    return gain;
  }

  void Visit(std::size_t next, std::int64_t length, double objective, double excess) {
    if (next == p_.size()) {
      if (!RedundancyOk(current_.size(), excess)) return;
      if (objective > best_objective_ ||
          (objective == best_objective_ &&
           std::lexicographical_compare(current_.begin(), current_.end(), best_.begin(),
                                        best_.end()))) {
        best_objective_ = objective;
        best_ = current_;
      }
      return;
    }
    // Bounds are computed in a different summation order than objectives;
    // the slack keeps rounding from pruning a true optimum or a tie.
    const double bound = objective + Bound(next, length);
    const double slack = 1e-9 * std::max(1.0, std::abs(best_objective_));
    if (bound < best_objective_ - slack) return;

    const std::size_t i = next;
    if (length + p_.lengths[i] <= p_.size_budget) {
      double added = excess;
      for (std::size_t j : current_) added += p_.Sim(i, j) - p_.theta;
      current_.push_back(i);
      Visit(next + 1, length + p_.lengths[i],
            objective + static_cast<double>(p_.lengths[i]) * p_.scores[i], added);
      current_.pop_back();
    }
    Visit(next + 1, length, objective, excess);
  }

  const SelectionProblem& p_;
  std::vector<std::size_t> by_score_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  double best_objective_ = 0.0;
};

// Working set for the heuristic; membership kept sorted so feasibility and
// objective use the canonical summation order.
class LocalSearch {
 public:
  explicit LocalSearch(const SelectionProblem& p) : p_(p), in_(p.size(), false) {}

  // Inserts sentences in the given priority order, skipping those that do
  // not fit.
  template <typename Key>
  void Greedy(Key key) {
    std::vector<std::size_t> order(p_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
    for (std::size_t i : order) {
      if (p_.scores[i] > 0.0) TryApply(std::nullopt, i);
    }
  }

  void Improve() {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t j = 0; j < p_.size() && !improved; ++j) {
        if (!in_[j] && p_.scores[j] > 0.0) improved = TryApply(std::nullopt, j);
      }
      for (std::size_t i = 0; i < p_.size() && !improved; ++i) {
        if (in_[i] && p_.scores[i] < 0.0) improved = TryApply(i, std::nullopt);
      }
      for (std::size_t i = 0; i < p_.size() && !improved; ++i) {
        if (!in_[i]) continue;
        for (std::size_t j = 0; j < p_.size() && !improved; ++j) {
          if (in_[j] || Value(j) <= Value(i)) continue;
          improved = TryApply(i, j);
        }
      }
    }
  }

  std::vector<std::size_t> Chosen() const {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (in_[i]) chosen.push_back(i);
    }
    return chosen;
  }

 private:
  double Value(std::size_t i) const { return static_cast<double>(p_.lengths[i]) * p_.scores[i]; }

  // Applies "drop `out`, add `in`" if the result is feasible and, for moves
  // other than a plain greedy insertion, strictly better.
  bool TryApply(std::optional<std::size_t> out, std::optional<std::size_t> in) {
    std::vector<bool> next = in_;
    if (out) next[*out] = false;
    if (in) next[*in] = true;
    std::vector<std::size_t> chosen;
    std::int64_t length = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (!next[i]) continue;
      chosen.push_back(i);
      length += p_.lengths[i];
    }
    if (length > p_.size_budget) return false;
    if (!RedundancyOk(chosen.size(), PairExcess(p_, chosen))) return false;
    const double delta = (in ? Value(*in) : 0.0) - (out ? Value(*out) : 0.0);
    if (delta <= 1e-12) return false;
    in_ = std::move(next);
    return true;
  }

  const SelectionProblem& p_;
  std::vector<bool> in_;
};

}  // namespace

void SelectionProblem::Validate() const {
  const std::size_t n = lengths.size();
  if (scores.size() != n || sims.size() != n * n) {
    throw Error(ErrorKind::kInvalidArgument, "selection problem arrays disagree on N");
  }
  if (!std::isfinite(theta)) throw Error(ErrorKind::kInvalidArgument, "theta must be finite");
  if (size_budget < 0) throw Error(ErrorKind::kInvalidArgument, "size budget is negative");
  for (std::size_t i = 0; i < n; ++i) {
    if (lengths[i] <= 0) {
      throw Error(ErrorKind::kInvalidArgument, fmt::format("sentence {} has length <= 0", i));
    }
    if (!std::isfinite(scores[i])) {
      throw Error(ErrorKind::kInvalidArgument, fmt::format("sentence {} has a non-finite score", i));
    }
    if (std::abs(Sim(i, i) - 1.0) > 1e-9) {
      throw Error(ErrorKind::kInvalidArgument, "similarity diagonal must be 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!std::isfinite(Sim(i, j)) || std::abs(Sim(i, j) - Sim(j, i)) > 1e-9) {
        throw Error(ErrorKind::kInvalidArgument, "similarity matrix must be symmetric");
      }
    }
  }
}

std::vector<double> SimilarityMatrix(std::span<const Vector> vectors) {
  const std::size_t n = vectors.size();
  std::vector<double> sims(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double c = Cosine(vectors[i], vectors[j]);
      sims[i * n + j] = c;
      sims[j * n + i] = c;
    }
  }
  return sims;
}

Selection EvaluateSelection(const SelectionProblem& problem,
                            std::span<const std::size_t> chosen) {
  Selection s;
  s.chosen.assign(chosen.begin(), chosen.end());
  std::sort(s.chosen.begin(), s.chosen.end());
  double sim_sum = 0.0;
  for (std::size_t a = 0; a < s.chosen.size(); ++a) {
    const std::size_t i = s.chosen[a];
    s.objective += static_cast<double>(problem.lengths[i]) * problem.scores[i];
    s.total_length += problem.lengths[i];
    for (std::size_t b = 0; b < a; ++b) sim_sum += problem.Sim(i, s.chosen[b]);
  }
  const std::size_t k = s.chosen.size();
  if (k >= 2) s.avg_similarity = sim_sum / (static_cast<double>(k * (k - 1)) / 2.0);
  return s;
}

bool IsFeasible(const SelectionProblem& problem, std::span<const std::size_t> chosen) {
  std::vector<std::size_t> sorted(chosen.begin(), chosen.end());
  std::sort(sorted.begin(), sorted.end());
  std::int64_t length = 0;
  for (std::size_t i : sorted) length += problem.lengths[i];
  return length <= problem.size_budget &&
         RedundancyOk(sorted.size(), PairExcess(problem, sorted));
}

Selection SelectExact(const SelectionProblem& problem, std::size_t max_size) {
  problem.Validate();
  if (problem.size() > max_size) {
    throw Error(ErrorKind::kTooLarge,
                fmt::format("{} sentences exceed the exact solver cap of {}", problem.size(),
                            max_size));
  }
  BranchAndBound solver(problem);
  const std::vector<std::size_t> chosen = solver.Solve();
  return EvaluateSelection(problem, chosen);
}

Selection SelectHeuristic(const SelectionProblem& problem) {
  problem.Validate();
  const auto length = [&](std::size_t i) { return static_cast<double>(problem.lengths[i]); };
  const auto density = [&](std::size_t i) { return problem.scores[i] / length(i); };
  const auto score = [&](std::size_t i) { return problem.scores[i]; };
  const auto value = [&](std::size_t i) { return problem.scores[i] * length(i); };

  // One local search per greedy start; the first start wins ties.
  std::optional<Selection> best;
  const auto run = [&](auto key) {
    LocalSearch search(problem);
    search.Greedy(key);
    search.Improve();
    Selection candidate = EvaluateSelection(problem, search.Chosen());
    if (!best || candidate.objective > best->objective) best = std::move(candidate);
  };
  run(density);
  run(score);
  run(value);
  return *best;
}

Selection Select(const SelectionProblem& problem, std::size_t cutover) {
  return problem.size() <= cutover ? SelectExact(problem, cutover) : SelectHeuristic(problem);
}

const std::array<const char*, kNumSizeFeatures>& SizeFeatureNames() {
  static const std::array<const char*, kNumSizeFeatures> names = {
      "paper_chars",     "sentence_count",      "section_count",      "graphic_count",
      "reference_count", "mean_sentence_tokens", "mean_sentence_chars", "intercept"};
  return names;
}

SizeFeatures ComputeSizeFeatures(const Paper& paper) {
  const std::vector<Sentence> stream = SentenceStream(paper);
  double chars = 0.0;
  double tokens = 0.0;
  double refs = 0.0;
  for (const auto& sentence : stream) {
    chars += static_cast<double>(CharacterCount(sentence.text));
    tokens += static_cast<double>(sentence.tokens.size());
    refs += static_cast<double>(sentence.ref_marks.size());
  }
  const double n = static_cast<double>(stream.size());
  return {chars,
          n,
          static_cast<double>(paper.sections.size()),
          static_cast<double>(paper.graphics.size()),
          refs,
          n > 0 ? tokens / n : 0.0,
          n > 0 ? chars / n : 0.0,
          1.0};
}

std::int64_t PredictSize(const SizeModel& model, const Paper& paper) {
  const SizeFeatures features = ComputeSizeFeatures(paper);
  double value = 0.0;
  for (std::size_t i = 0; i < kNumSizeFeatures; ++i) value += model.coefficients[i] * features[i];
  const auto upper = static_cast<double>(PaperCharacterCount(paper));
  if (!std::isfinite(value)) value = static_cast<double>(kMinPredictedSize);
  value = std::min(std::max(value, static_cast<double>(kMinPredictedSize)), upper);
  return static_cast<std::int64_t>(std::llround(value));
}

std::int64_t FallbackSize(const Paper& paper, double fraction) {
  return static_cast<std::int64_t>(
      std::llround(fraction * static_cast<double>(PaperCharacterCount(paper))));
}

SizeModel TrainSizeModel(std::span<const SizeSample> samples) {
  if (samples.size() < kNumSizeFeatures) {
    throw Error(ErrorKind::kTooFewPairs,
                fmt::format("size regression needs at least {} pairs, got {}",
                            kNumSizeFeatures, samples.size()));
  }
  const auto n = static_cast<Eigen::Index>(samples.size());
  constexpr auto k = static_cast<Eigen::Index>(kNumSizeFeatures);
  Eigen::MatrixXd x(n, k);
  Eigen::VectorXd y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const SizeSample& sample = samples[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < k; ++c) x(r, c) = sample.features[static_cast<std::size_t>(c)];
    y(r) = sample.presentation_chars;
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "size samples contain non-finite values");
  }
  // Column scaling keeps character counts and the intercept on one scale.
  // Least squares by complete orthogonal decomposition: no normal equations,
  // and the minimum-norm solution when columns are collinear.
  Eigen::VectorXd scale(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const double rms = std::sqrt(x.col(c).squaredNorm() / static_cast<double>(n));
    scale(c) = rms > 0.0 ? rms : 1.0;
  }
  const Eigen::MatrixXd xs = x * scale.cwiseInverse().asDiagonal();
  const Eigen::VectorXd beta = xs.completeOrthogonalDecomposition().solve(y);

  SizeModel model;
  for (Eigen::Index c = 0; c < k; ++c) {
    model.coefficients[static_cast<std::size_t>(c)] = beta(c) / scale(c);
  }
  return model;
}

std::string SerializeSizeModel(const SizeModel& model) {
  Json doc;
  doc["format_version"] = 1;
  Json names = Json::array();
  for (const char* name : SizeFeatureNames()) names.push_back(name);
  doc["feature_names"] = std::move(names);
  doc["coefficients"] = model.coefficients;
  return doc.dump(1) + "\n";
}

SizeModel DeserializeSizeModel(std::string_view json_text) {
  try {
    const Json doc = Json::parse(json_text);
    if (doc.at("format_version").get<int>() != 1) {
      throw Error(ErrorKind::kSchemaMismatch, "unsupported size model format_version");
    }
    const auto names = doc.at("feature_names").get<std::vector<std::string>>();
    const auto& expected = SizeFeatureNames();
    if (!std::equal(names.begin(), names.end(), expected.begin(), expected.end())) {
      throw Error(ErrorKind::kSchemaMismatch, "size model feature names differ");
    }
    const auto coefficients = doc.at("coefficients").get<std::vector<double>>();
    if (coefficients.size() != kNumSizeFeatures) {
      throw Error(ErrorKind::kSchemaMismatch, "size model needs 8 coefficients");
    }
    SizeModel model;
    for (std::size_t i = 0; i < kNumSizeFeatures; ++i) {
      if (!std::isfinite(coefficients[i])) {
        throw Error(ErrorKind::kInvalidArgument, "size model coefficient is not finite");
      }
      model.coefficients[i] = coefficients[i];
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("size model file: {}", e.what()));
  }
}

}  // namespace deckgen
