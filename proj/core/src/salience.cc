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

#include "deckgen/salience.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "deckgen/error.h"
#include "json.hpp"

namespace deckgen {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kFiniteDifferenceStep = 1e-5;

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Portable draws: the standard distributions are implementation-defined,
// which would break byte-identical model files across toolchains.
double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void ShuffleIndices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(indices[i - 1], indices[j]);
  }
}

// activations[0] is the normalized input, activations[l + 1] the output of
// layer l.
using Activations = std::vector<std::vector<double>>;

Activations Forward(const MlpModel& model, std::span<const double> row) {
  Activations acts(model.layers.size() + 1);
  acts[0].resize(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    acts[0][i] = (row[i] - model.normalizer.means[i]) / model.normalizer.stds[i];
  }
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const DenseLayer& layer = model.layers[l];
    const bool hidden = l + 1 < model.layers.size();
    const auto& in = acts[l];
    auto& out = acts[l + 1];
    out.resize(static_cast<std::size_t>(layer.rows));
    for (int r = 0; r < layer.rows; ++r) {
      double z = layer.bias[static_cast<std::size_t>(r)];
      const double* w = layer.weights.data() + static_cast<std::size_t>(r) * layer.cols;
      for (int c = 0; c < layer.cols; ++c) z += w[c] * in[static_cast<std::size_t>(c)];
      out[static_cast<std::size_t>(r)] = hidden ? Sigmoid(z) : z;
    }
  }
  return acts;
}

// Adds scale * d(output)/d(parameter) into grads (same layout as layers).
void Backward(const MlpModel& model, const Activations& acts, double scale,
              std::vector<DenseLayer>& grads) {
  std::vector<double> delta = {scale};
  for (std::size_t l = model.layers.size(); l-- > 0;) {
    const DenseLayer& layer = model.layers[l];
    DenseLayer& grad = grads[l];
    const auto& in = acts[l];
    for (int r = 0; r < layer.rows; ++r) {
      const double d = delta[static_cast<std::size_t>(r)];
      grad.bias[static_cast<std::size_t>(r)] += d;
      double* g = grad.weights.data() + static_cast<std::size_t>(r) * layer.cols;
      for (int c = 0; c < layer.cols; ++c) g[c] += d * in[static_cast<std::size_t>(c)];
    }
    if (l == 0) break;
    std::vector<double> previous(static_cast<std::size_t>(layer.cols), 0.0);
    for (int r = 0; r < layer.rows; ++r) {
      const double d = delta[static_cast<std::size_t>(r)];
      const double* w = layer.weights.data() + static_cast<std::size_t>(r) * layer.cols;
      for (int c = 0; c < layer.cols; ++c) previous[static_cast<std::size_t>(c)] += w[c] * d;
    }
    for (std::size_t c = 0; c < previous.size(); ++c) {
      const double a = in[c];  // sigmoid output of layer l - 1
      previous[c] *= a * (1.0 - a);
    }
    delta = std::move(previous);
  }
}

std::vector<DenseLayer> ZeroLike(const std::vector<DenseLayer>& layers) {
  std::vector<DenseLayer> zero = layers;
  for (auto& layer : zero) {
    std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
    std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
  }
  return zero;
}

Normalizer FitNormalizer(std::span<const std::vector<double>* const> rows, std::size_t width) {
  Normalizer normalizer;
  normalizer.means.assign(width, 0.0);
  normalizer.stds.assign(width, 1.0);
  const double n = static_cast<double>(rows.size());
  for (const auto* row : rows) {
    for (std::size_t i = 0; i < width; ++i) normalizer.means[i] += (*row)[i];
  }
  for (double& m : normalizer.means) m /= n;
  std::vector<double> variance(width, 0.0);
  for (const auto* row : rows) {
    for (std::size_t i = 0; i < width; ++i) {
      const double d = (*row)[i] - normalizer.means[i];
      variance[i] += d * d;
    }
  }
  for (std::size_t i = 0; i < width; ++i) {
    const double sd = std::sqrt(variance[i] / n);
    // Constant columns keep std 1; the threshold absorbs rounding in the
    // mean of a constant column.
    const double floor = 1e-12 * std::max(1.0, std::abs(normalizer.means[i]));
    normalizer.stds[i] = sd > floor ? sd : 1.0;
  }
  return normalizer;
}

void CheckFinite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kInvariant, fmt::format("non-finite {}", what));
  }
}

template <typename T>
T Require(const Json& json, const char* key) {
  if (!json.contains(key)) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("model file lacks '{}'", key));
  }
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("model file field '{}': {}", key, e.what()));
  }
}

}  // namespace

SalienceLabels LabelSalience(std::span<const Vector> paper_vectors,
                             std::span<const Vector> slide_vectors) {
  if (slide_vectors.empty()) {
    throw Error(ErrorKind::kEmptyReference, "no reference slide sentences to label against");
  }
  SalienceLabels labels;
  labels.values.reserve(paper_vectors.size());
  for (const auto& p : paper_vectors) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : slide_vectors) best = std::max(best, Cosine(p, s));
    labels.values.push_back(best);
  }
  return labels;
}

void MlpModel::Validate() const {
  const std::size_t width = schema.Width();
  if (normalizer.means.size() != width || normalizer.stds.size() != width) {
    throw Error(ErrorKind::kInvariant, "normalizer width differs from schema width");
  }
  for (double sd : normalizer.stds) {
    if (!(sd > 0.0) || !std::isfinite(sd)) {
      throw Error(ErrorKind::kInvariant, "normalizer std must be positive and finite");
    }
  }
  CheckFinite(normalizer.means, "normalizer mean");
  if (layers.empty()) throw Error(ErrorKind::kInvariant, "model has no layers");
  std::size_t in = width;
  for (const auto& layer : layers) {
    if (layer.rows <= 0 || static_cast<std::size_t>(layer.cols) != in ||
        layer.weights.size() != static_cast<std::size_t>(layer.rows) * layer.cols ||
        layer.bias.size() != static_cast<std::size_t>(layer.rows)) {
      throw Error(ErrorKind::kInvariant, "layer shapes do not chain");
    }
    CheckFinite(layer.weights, "weight");
    CheckFinite(layer.bias, "bias");
    in = static_cast<std::size_t>(layer.rows);
  }
  if (in != 1) throw Error(ErrorKind::kInvariant, "output layer must have width 1");
}

std::size_t MlpModel::ParameterCount() const {
  std::size_t count = 0;
  for (const auto& layer : layers) count += layer.weights.size() + layer.bias.size();
  return count;
}

double MlpModel::Predict(std::span<const double> row) const {
  if (row.size() != schema.Width()) {
    throw Error(ErrorKind::kSchemaMismatch,
                fmt::format("row width {} but model expects {}", row.size(), schema.Width()));
  }
  return Forward(*this, row).back().front();
}

MlpModel InitializeModel(const FeatureSchema& schema, std::span<const int> layer_widths,
                         std::mt19937_64& rng) {
  MlpModel model;
  model.schema = schema;
  const std::size_t width = schema.Width();
  model.normalizer.means.assign(width, 0.0);
  model.normalizer.stds.assign(width, 1.0);
  int in = static_cast<int>(width);
  for (int out : layer_widths) {
    DenseLayer layer;
    layer.rows = out;
    layer.cols = in;
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    layer.weights.resize(static_cast<std::size_t>(out) * static_cast<std::size_t>(in));
    for (double& w : layer.weights) w = (2.0 * UniformUnit(rng) - 1.0) * limit;
    layer.bias.assign(static_cast<std::size_t>(out), 0.0);
    model.layers.push_back(std::move(layer));
    in = out;
  }
  model.Validate();
  return model;
}

void TrainConfig::Validate() const {
  const bool hidden_ok = std::all_of(hidden_sizes.begin(), hidden_sizes.end(),
                                     [](int h) { return h > 0; });
  if (!(learning_rate > 0.0) || batch_size <= 0 || epochs <= 0 || !hidden_ok) {
    throw Error(ErrorKind::kInvalidArgument,
                "learning rate, batch size, epochs and hidden sizes must be positive");
  }
}

TrainResult Train(std::span<const FeatureMatrix> features,
                  std::span<const SalienceLabels> labels, const TrainConfig& config) {
  config.Validate();
  if (features.size() != labels.size()) {
    throw Error(ErrorKind::kSchemaMismatch, "feature matrices and label sets differ in count");
  }
  if (features.empty()) throw Error(ErrorKind::kEmptyTrainingSet, "no training pairs");
  const FeatureSchema& schema = features.front().schema;

  std::vector<const std::vector<double>*> rows;
  std::vector<double> targets;
  for (std::size_t p = 0; p < features.size(); ++p) {
    if (!(features[p].schema == schema)) {
      throw Error(ErrorKind::kSchemaMismatch,
                  fmt::format("training pair {} uses a different feature schema", p));
    }
    if (features[p].rows.size() != labels[p].values.size()) {
      throw Error(ErrorKind::kSchemaMismatch,
                  fmt::format("training pair {} has {} rows but {} labels", p,
                              features[p].rows.size(), labels[p].values.size()));
    }
    for (std::size_t r = 0; r < features[p].rows.size(); ++r) {
      if (features[p].rows[r].size() != schema.Width()) {
        throw Error(ErrorKind::kSchemaMismatch,
                    fmt::format("training pair {} row {} has the wrong width", p, r));
      }
      rows.push_back(&features[p].rows[r]);
      targets.push_back(labels[p].values[r]);
    }
  }
  if (rows.empty()) throw Error(ErrorKind::kEmptyTrainingSet, "no training rows");

  std::mt19937_64 rng(config.seed);
  const std::array<int, 4> widths = {config.hidden_sizes[0], config.hidden_sizes[1],
                                     config.hidden_sizes[2], 1};
  TrainResult result;
  result.model = InitializeModel(schema, widths, rng);
  result.model.normalizer = FitNormalizer(rows, schema.Width());

  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto batch = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    ShuffleIndices(order, rng);
    double squared_error = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      const double scale = 2.0 / static_cast<double>(end - start);
      std::vector<DenseLayer> grads = ZeroLike(result.model.layers);
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t idx = order[k];
        const Activations acts = Forward(result.model, *rows[idx]);
        const double error = acts.back().front() - targets[idx];
        squared_error += error * error;
        Backward(result.model, acts, scale * error, grads);
      }
      for (std::size_t l = 0; l < grads.size(); ++l) {
        DenseLayer& layer = result.model.layers[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
          layer.weights[i] -= config.learning_rate * grads[l].weights[i];
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
          layer.bias[i] -= config.learning_rate * grads[l].bias[i];
        }
      }
    }
    const double loss = squared_error / static_cast<double>(order.size());
    if (!std::isfinite(loss)) {
      throw Error(ErrorKind::kInvariant, fmt::format("training diverged at epoch {}", epoch + 1));
    }
    result.epoch_losses.push_back(loss);
  }
  result.model.Validate();
  return result;
}

std::vector<double> Predict(const MlpModel& model, const FeatureMatrix& features) {
  if (!(features.schema == model.schema)) {
    throw Error(ErrorKind::kSchemaMismatch, "feature schema differs from the model's schema");
  }
  std::vector<double> scores;
  scores.reserve(features.rows.size());
  for (const auto& row : features.rows) scores.push_back(model.Predict(row));
  return scores;
}

double MeanSquaredError(const MlpModel& model, std::span<const FeatureMatrix> features,
                        std::span<const SalienceLabels> labels) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t p = 0; p < features.size(); ++p) {
    const std::vector<double> scores = Predict(model, features[p]);
    for (std::size_t r = 0; r < scores.size(); ++r) {
      const double e = scores[r] - labels[p].values.at(r);
      sum += e * e;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::vector<double> LossGradient(const MlpModel& model, std::span<const double> row,
                                 double label) {
  const Activations acts = Forward(model, row);
  std::vector<DenseLayer> grads = ZeroLike(model.layers);
  Backward(model, acts, 2.0 * (acts.back().front() - label), grads);
  std::vector<double> flat;
  flat.reserve(model.ParameterCount());
  for (const auto& g : grads) {
    flat.insert(flat.end(), g.weights.begin(), g.weights.end());
    flat.insert(flat.end(), g.bias.begin(), g.bias.end());
  }
  return flat;
}

double GradientCheck(const MlpModel& model, std::span<const double> row, double label) {
  const std::vector<double> analytic = LossGradient(model, row, label);
  MlpModel probe = model;
  const auto loss = [&] {
    const double e = probe.Predict(row) - label;
    return e * e;
  };
  double worst = 0.0;
  std::size_t k = 0;
  const auto check = [&](double& parameter) {
    const double saved = parameter;
    parameter = saved + kFiniteDifferenceStep;
    const double plus = loss();
    parameter = saved - kFiniteDifferenceStep;
    const double minus = loss();
    parameter = saved;
    const double numeric = (plus - minus) / (2.0 * kFiniteDifferenceStep);
    const double a = analytic[k++];
    const double rel = std::abs(a - numeric) / std::max(1e-8, std::abs(a) + std::abs(numeric));
    worst = std::max(worst, rel);
  };
  for (auto& layer : probe.layers) {
    for (double& w : layer.weights) check(w);
    for (double& b : layer.bias) check(b);
  }
  return worst;
}

std::string SerializeModel(const MlpModel& model) {
  Json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["schema"] = {{"scalar_names", model.schema.scalar_names},
                   {"embedding_dim", model.schema.embedding_dim}};
  doc["normalizer"] = {{"means", model.normalizer.means}, {"stds", model.normalizer.stds}};
  Json layers = Json::array();
  for (const auto& layer : model.layers) {
    layers.push_back({{"rows", layer.rows},
                      {"cols", layer.cols},
                      {"weights", layer.weights},
                      {"bias", layer.bias}});
  }
  doc["layers"] = std::move(layers);
  doc["hidden_activation"] = "sigmoid";
  return doc.dump(1) + "\n";
}

MlpModel DeserializeModel(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("model file: {}", e.what()));
  }
  if (!doc.is_object()) throw Error(ErrorKind::kInvalidArgument, "model file is not an object");
  const int version = Require<int>(doc, "format_version");
  if (version != kModelFormatVersion) {
    throw Error(ErrorKind::kSchemaMismatch,
                fmt::format("unsupported model format_version {}", version));
  }
  if (Require<std::string>(doc, "hidden_activation") != "sigmoid") {
    throw Error(ErrorKind::kSchemaMismatch, "only sigmoid hidden activations are supported");
  }
  MlpModel model;
  const Json schema = Require<Json>(doc, "schema");
  model.schema.scalar_names = Require<std::vector<std::string>>(schema, "scalar_names");
  model.schema.embedding_dim = Require<int>(schema, "embedding_dim");
  const Json normalizer = Require<Json>(doc, "normalizer");
  model.normalizer.means = Require<std::vector<double>>(normalizer, "means");
  model.normalizer.stds = Require<std::vector<double>>(normalizer, "stds");
  for (const auto& layer_json : Require<Json>(doc, "layers")) {
    DenseLayer layer;
    layer.rows = Require<int>(layer_json, "rows");
    layer.cols = Require<int>(layer_json, "cols");
    layer.weights = Require<std::vector<double>>(layer_json, "weights");
    layer.bias = Require<std::vector<double>>(layer_json, "bias");
    model.layers.push_back(std::move(layer));
  }
  try {
    model.Validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("model file: {}", e.what()));
  }
  return model;
}

}  // namespace deckgen
