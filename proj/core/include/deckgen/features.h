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

// Per-sentence feature rows for the salience regressor.
//
// Every row has 30 scalar features followed by the sentence's own embedding.
// The scalar order is frozen (model files store it and refuse mismatches):
//
//    0- 3  reference counts: literature, table, figure, equation
//    4-10  section one-hot: abstract, introduction, background, model,
//          results, conclusion, acknowledgement (all zero for "other")
//      11  position in section / section size, in (0, 1]
//   12-13  noun phrase count, verb phrase count
//      14  sub-sentence count
//      15  stopword fraction
//   16-17  length in characters, in tokens
//      18  parse depth proxy
//   19-20  mean TF, mean IdF of the tokens
//   21-23  cosine with paper title, own section title, abstract centroid
//   24-29  cosine with the sentences at offsets -1, -2, -3, +1, +2, +3

#ifndef DECKGEN_FEATURES_H_
#define DECKGEN_FEATURES_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "deckgen/document.h"
#include "deckgen/embedding.h"

namespace deckgen {

inline constexpr std::size_t kNumScalarFeatures = 30;

struct FeatureSchema {
  std::vector<std::string> scalar_names;
  int embedding_dim = 0;

  // The frozen 30-name schema with the given embedding width.
  static FeatureSchema Standard(int embedding_dim);

  std::size_t Width() const { return scalar_names.size() + static_cast<std::size_t>(embedding_dim); }

  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

struct FeatureMatrix {
  FeatureSchema schema;
  std::vector<std::vector<double>> rows;

  std::size_t Width() const { return schema.Width(); }
};

enum class PosTag { kNoun, kVerb, kAdj, kDet, kOther };

using PosLexicon = std::unordered_map<std::string, PosTag>;

// Words absent from the lexicon tag as nouns.
PosTag TagOf(const PosLexicon& lexicon, const std::string& word);

struct CorpusStats {
  std::size_t doc_count = 1;
  std::map<std::string, std::size_t> doc_frequency;
  std::unordered_set<std::string> stopwords;
  PosLexicon pos_lexicon;

  // Bundled stopwords and lexicon, one pseudo-document and no frequencies,
  // which makes every IdF zero.
  static CorpusStats Bundled();

  // Replaces doc_count and doc_frequency from "#docs=N" + "word\tdf" rows.
  void LoadDocumentFrequencies(std::string_view tsv);
  void LoadDocumentFrequenciesFile(const std::string& path);
  std::string FormatDocumentFrequencies() const;

  // Document frequencies counted over the given papers (a word counts once
  // per paper).
  void CountDocuments(std::span<const Paper> papers);

  // IdF = ln(doc_count / (1 + df)), df = 0 for unseen words.
  double Idf(const std::string& word) const;
};

std::vector<std::string> ParseStopwords(std::string_view text);
PosLexicon ParsePosLexicon(std::string_view tsv);

// Maximal DET? ADJ* NOUN+ runs, in sentence order.
std::vector<std::vector<std::string>> NounPhrases(std::span<const std::string> tokens,
                                                  const PosLexicon& lexicon);
// Maximal runs of VERB-tagged tokens.
std::size_t VerbPhraseCount(std::span<const std::string> tokens, const PosLexicon& lexicon);

// 1 + ';' count + ", and" / ", but" / ", or" occurrences.
std::size_t SubSentenceCount(std::string_view text);

// 1 + subordinator tokens, capped at 10.
int ParseDepthProxy(std::span<const std::string> tokens);

// sentence_vectors[i] must belong to the sentence with global index i.
// Throws Error{kLengthMismatch} on a count mismatch and
// Error{kDimensionMismatch} if vector dims differ from the provider's.
FeatureMatrix ExtractFeatures(const Paper& paper,
                              std::span<const Vector> sentence_vectors,
                              const EmbeddingProvider& provider,
                              const CorpusStats& stats);

// Header line + one TSV row per sentence.
std::string FormatFeatureMatrix(const FeatureMatrix& matrix);

}  // namespace deckgen

#endif  // DECKGEN_FEATURES_H_
