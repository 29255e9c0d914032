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

#include "deckgen/embedding.h"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "deckgen/error.h"
#include "deckgen/text.h"

namespace deckgen {
namespace {

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

double ParseDouble(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("vector cache line {}: bad number '{}'", line_no, field));
  }
  return value;
}

}  // namespace

double Vector::Norm() const { return std::sqrt(Dot(components, components)); }

bool Vector::IsZero() const {
  return std::all_of(components.begin(), components.end(),
                     [](double c) { return c == 0.0; });
}

double Cosine(const Vector& u, const Vector& v) {
  if (u.dim() != v.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("cosine of vectors with dims {} and {}", u.dim(), v.dim()));
  }
  const double nu = u.Norm();
  const double nv = v.Norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const double c = Dot(u.components, v.components) / (nu * nv);
  return std::clamp(c, -1.0, 1.0);
}

Vector Normalized(Vector v) {
  const double norm = v.Norm();
  if (norm == 0.0) return v;
  for (double& c : v.components) c /= norm;
  return v;
}

void ProviderConfig::Validate() const {
  if (dim < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("embedding dim must be >= 2, got {}", dim));
  }
  if (kind == ProviderKind::kVectorCache && (!cache_path || cache_path->empty())) {
    throw Error(ErrorKind::kInvalidArgument, "vector cache provider needs a cache path");
  }
}

std::vector<Vector> EmbeddingProvider::EmbedAll(std::span<const std::string> texts) const {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) out.push_back(Embed(text));
  return out;
}

Vector HashedFallbackEmbed(std::string_view text, int dim) {
  if (dim < 2) {
    throw Error(ErrorKind::kInvalidArgument, "hashed embedding dim must be >= 2");
  }
  Vector v(static_cast<std::size_t>(dim));
  const auto bucket = [dim](std::string_view feature) {
    return static_cast<std::size_t>(Fnv1a64(feature) % static_cast<std::uint64_t>(dim));
  };
  // Tokenize lowercases.
  const std::vector<std::string> tokens = Tokenize(text);
  for (const auto& token : tokens) v.components[bucket(token)] += 1.0;
  const std::string joined = Join(tokens, " ");
  for (std::size_t i = 0; i + 3 <= joined.size(); ++i) {
    v.components[bucket(std::string_view(joined).substr(i, 3))] += 1.0;
  }
  return Normalized(std::move(v));
}

HashedFallbackProvider::HashedFallbackProvider(int dim) : dim_(dim) {
  if (dim < 2) {
    throw Error(ErrorKind::kInvalidArgument, "hashed embedding dim must be >= 2");
  }
}

Vector HashedFallbackProvider::Embed(std::string_view text) const {
  return HashedFallbackEmbed(text, dim_);
}

VectorCacheProvider VectorCacheProvider::FromTsv(std::string_view tsv, int dim) {
  VectorCacheProvider provider(dim);
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool saw_header = false;
  while (start < tsv.size()) {
    std::size_t end = tsv.find('\n', start);
    if (end == std::string_view::npos) end = tsv.size();
    std::string_view line = tsv.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.starts_with("#dim=")) {
      const double header_dim = ParseDouble(line.substr(5), line_no);
      if (header_dim != dim) {
        throw Error(ErrorKind::kDimensionMismatch,
                    fmt::format("vector cache declares dim {}, expected {}",
                                line.substr(5), dim));
      }
      saw_header = true;
      continue;
    }
    if (line.front() == '#') continue;
    const std::vector<std::string_view> fields = SplitTabs(line);
    if (fields.size() != static_cast<std::size_t>(dim) + 1) {
      throw Error(ErrorKind::kDimensionMismatch,
                  fmt::format("vector cache line {} has {} components, expected {}",
                              line_no, fields.size() - 1, dim));
    }
    std::uint64_t key = 0;
    auto [ptr, ec] = std::from_chars(fields[0].data(),
                                     fields[0].data() + fields[0].size(), key, 16);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("vector cache line {}: bad key '{}'", line_no, fields[0]));
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(dim));
    for (std::size_t i = 1; i < fields.size(); ++i) {
      values.push_back(ParseDouble(fields[i], line_no));
    }
    provider.table_[key] = Normalized(Vector(std::move(values)));
  }
  if (!saw_header) {
    throw Error(ErrorKind::kInvalidArgument, "vector cache is missing its #dim= header");
  }
  return provider;
}

VectorCacheProvider VectorCacheProvider::FromFile(const std::string& path, int dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, fmt::format("cannot read vector cache {}", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return FromTsv(buffer.str(), dim);
}

Vector VectorCacheProvider::Embed(std::string_view text) const {
  if (text.empty()) return Vector(static_cast<std::size_t>(dim_));
  const std::uint64_t key = Fnv1a64(text);
  auto it = table_.find(key);
  if (it == table_.end()) {
    throw Error(ErrorKind::kCacheMiss,
                fmt::format("vector cache has no entry for key {}", HexKey(key)));
  }
  return it->second;
}

std::unique_ptr<EmbeddingProvider> MakeProvider(const ProviderConfig& config) {
  config.Validate();
  switch (config.kind) {
    case ProviderKind::kHashedFallback:
      return std::make_unique<HashedFallbackProvider>(config.dim);
    case ProviderKind::kVectorCache:
      return std::make_unique<VectorCacheProvider>(
          VectorCacheProvider::FromFile(*config.cache_path, config.dim));
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown provider kind");
}

std::vector<Vector> Embed(std::span<const std::string> texts,
                          const ProviderConfig& config) {
  return MakeProvider(config)->EmbedAll(texts);
}

std::string FormatVectorCache(std::span<const std::string> texts,
                              std::span<const Vector> vectors) {
  if (texts.size() != vectors.size()) {
    throw Error(ErrorKind::kLengthMismatch, "texts and vectors differ in length");
  }
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().dim();
  std::string out = fmt::format("#dim={}\n", dim);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (vectors[i].dim() != dim) {
      throw Error(ErrorKind::kDimensionMismatch, "vectors of mixed dims");
    }
    out += HexKey(Fnv1a64(texts[i]));
    for (double c : vectors[i].components) out += fmt::format("\t{}", c);
    out += '\n';
  }
  return out;
}

}  // namespace deckgen
