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

// Sentence vectors and cosine similarity.
//
// Two providers exist. HashedFallbackProvider is a deterministic bag of
// hashed unigrams and character trigrams that needs no model. The
// VectorCacheProvider serves precomputed encoder output from a TSV file:
//
//   #dim=D
//   <16 hex digit FNV-1a-64 of the raw text>\t<c1>\t...\t<cD>
//
// Every provider returns unit-norm vectors, except the all-zero vector
// produced for empty text.

#ifndef DECKGEN_EMBEDDING_H_
#define DECKGEN_EMBEDDING_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace deckgen {

struct Vector {
  std::vector<double> components;

  Vector() = default;
  explicit Vector(std::size_t dim) : components(dim, 0.0) {}
  explicit Vector(std::vector<double> values) : components(std::move(values)) {}

  std::size_t dim() const { return components.size(); }
  double Norm() const;
  bool IsZero() const;

  friend bool operator==(const Vector&, const Vector&) = default;
};

// dot(u,v)/(|u||v|), 0 when either norm is 0, clamped to [-1, 1].
// Throws Error{kDimensionMismatch} on unequal dims.
double Cosine(const Vector& u, const Vector& v);

// Scales to unit norm; the zero vector stays zero.
Vector Normalized(Vector v);

enum class ProviderKind { kHashedFallback, kVectorCache };

inline constexpr int kDefaultEmbeddingDim = 256;

struct ProviderConfig {
  ProviderKind kind = ProviderKind::kHashedFallback;
  int dim = kDefaultEmbeddingDim;
  std::optional<std::string> cache_path;

  // Throws Error{kInvalidArgument} if dim < 2 or a cache lacks its path.
  void Validate() const;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual int dim() const = 0;
  virtual Vector Embed(std::string_view text) const = 0;

  std::vector<Vector> EmbedAll(std::span<const std::string> texts) const;
};

Vector HashedFallbackEmbed(std::string_view text, int dim);

class HashedFallbackProvider final : public EmbeddingProvider {
 public:
  explicit HashedFallbackProvider(int dim = kDefaultEmbeddingDim);

  int dim() const override { return dim_; }
  Vector Embed(std::string_view text) const override;

 private:
  int dim_;
};

class VectorCacheProvider final : public EmbeddingProvider {
 public:
  // Parses the TSV format above. Rows are renormalized on load. Throws
  // Error{kDimensionMismatch} if the header or any row disagrees with dim.
  static VectorCacheProvider FromTsv(std::string_view tsv, int dim);
  static VectorCacheProvider FromFile(const std::string& path, int dim);

  int dim() const override { return dim_; }
  // Throws Error{kCacheMiss} naming the missing key.
  Vector Embed(std::string_view text) const override;

  std::size_t size() const { return table_.size(); }

 private:
  explicit VectorCacheProvider(int dim) : dim_(dim) {}

  int dim_;
  std::unordered_map<std::uint64_t, Vector> table_;
};

std::unique_ptr<EmbeddingProvider> MakeProvider(const ProviderConfig& config);

// One vector per text, in order.
std::vector<Vector> Embed(std::span<const std::string> texts,
                          const ProviderConfig& config);

// Writes texts' vectors in the cache TSV format (used to build caches from
// an external encoder's output and in tests).
std::string FormatVectorCache(std::span<const std::string> texts,
                              std::span<const Vector> vectors);

}  // namespace deckgen

#endif  // DECKGEN_EMBEDDING_H_
