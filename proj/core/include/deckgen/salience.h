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

// Salience labels and the MLP regressor that predicts them.
//
// A label is the best cosine match of a paper sentence against any sentence
// of the reference slides. The regressor z-scores its inputs, runs three
// sigmoid hidden layers and a linear output unit, and is trained with plain
// minibatch SGD on mean squared error.

#ifndef DECKGEN_SALIENCE_H_
#define DECKGEN_SALIENCE_H_

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deckgen/embedding.h"
#include "deckgen/features.h"

namespace deckgen {

struct SalienceLabels {
  std::vector<double> values;
};

// values[i] = max_j Cosine(paper_vectors[i], slide_vectors[j]).
// Throws Error{kEmptyReference} if slide_vectors is empty.
SalienceLabels LabelSalience(std::span<const Vector> paper_vectors,
                             std::span<const Vector> slide_vectors);

struct DenseLayer {
  int rows = 0;  // outputs
  int cols = 0;  // inputs
  std::vector<double> weights;  // row-major, rows x cols
  std::vector<double> bias;     // rows

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

struct Normalizer {
  std::vector<double> means;
  std::vector<double> stds;  // all > 0

  friend bool operator==(const Normalizer&, const Normalizer&) = default;
};

inline constexpr int kModelFormatVersion = 1;

struct MlpModel {
  FeatureSchema schema;
  Normalizer normalizer;
  // Hidden layers use the logistic sigmoid; the last layer is linear and
  // has a single output.
  std::vector<DenseLayer> layers;

  // Throws Error{kInvariant} if shapes do not chain from schema width to 1
  // or a value is non-finite.
  void Validate() const;

  std::size_t ParameterCount() const;

  // Raw (unnormalized) feature row in, salience score out.
  double Predict(std::span<const double> row) const;

  friend bool operator==(const MlpModel&, const MlpModel&) = default;
};

// Uniform Glorot initialization from the given generator; identity
// normalizer (means 0, stds 1). layer_widths lists every layer's output
// width, ending in 1.
MlpModel InitializeModel(const FeatureSchema& schema, std::span<const int> layer_widths,
                         std::mt19937_64& rng);

struct TrainConfig {
  double learning_rate = 0.004;
  int batch_size = 64;
  int epochs = 50;
  std::uint64_t seed = 42;
  std::array<int, 3> hidden_sizes = {128, 64, 32};

  void Validate() const;
};

struct TrainResult {
  MlpModel model;
  // Mean squared error over each epoch's minibatches, measured before the
  // corresponding update.
  std::vector<double> epoch_losses;
};

// One matrix and one label vector per training pair. Throws
// Error{kSchemaMismatch} if matrices disagree on schema or labels disagree
// with row counts, Error{kEmptyTrainingSet} if there are no rows.
TrainResult Train(std::span<const FeatureMatrix> features,
                  std::span<const SalienceLabels> labels, const TrainConfig& config);

// Throws Error{kSchemaMismatch} if features.schema differs from the model's.
std::vector<double> Predict(const MlpModel& model, const FeatureMatrix& features);

// Mean squared error of the model on the given rows.
double MeanSquaredError(const MlpModel& model, std::span<const FeatureMatrix> features,
                        std::span<const SalienceLabels> labels);

// Gradient of (prediction - label)^2 with respect to every parameter, in
// layer order: each layer's weights (row-major) followed by its bias.
std::vector<double> LossGradient(const MlpModel& model, std::span<const double> row,
                                 double label);

// Largest relative disagreement between the backprop gradient and central
// finite differences (h = 1e-5) over every parameter.
double GradientCheck(const MlpModel& model, std::span<const double> row, double label);

std::string SerializeModel(const MlpModel& model);
// Throws Error{kInvalidArgument} for unreadable documents and
// Error{kSchemaMismatch} for an unsupported format version.
MlpModel DeserializeModel(std::string_view json_text);

}  // namespace deckgen

#endif  // DECKGEN_SALIENCE_H_
