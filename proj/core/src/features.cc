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

#include "deckgen/features.h"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bundled_data.h"
#include "deckgen/error.h"
#include "deckgen/text.h"

namespace deckgen {
namespace {

constexpr std::array<const char*, kNumScalarFeatures> kScalarNames = {
    "ref_literature",  "ref_table",        "ref_figure",     "ref_equation",
    "sec_abstract",    "sec_introduction", "sec_background", "sec_model",
    "sec_results",     "sec_conclusion",   "sec_acknowledgement",
    "position",        "noun_phrases",     "verb_phrases",   "sub_sentences",
    "stopword_fraction", "char_length",    "token_count",    "parse_depth",
    "mean_tf",         "mean_idf",         "sim_title",      "sim_section_title",
    "sim_abstract",    "sim_prev1",        "sim_prev2",      "sim_prev3",
    "sim_next1",       "sim_next2",        "sim_next3",
};

constexpr int kMaxParseDepth = 10;

const std::set<std::string, std::less<>>& Subordinators() {
  static const std::set<std::string, std::less<>> words = {
      "that", "which",   "because", "although", "while", "when",
      "if",   "since",   "whereas", "who",      "whose", "where"};
  return words;
}

bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') ||
         u >= 0x80;
}

// Lines with the comment marker and blank lines are skipped.
template <typename Fn>
void ForEachDataLine(std::string_view text, Fn&& fn) {
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      fn(line, line_no, true);
      continue;
    }
    fn(line, line_no, false);
  }
}

std::size_t ParseCount(std::string_view field, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("corpus stats line {}: bad count '{}'", line_no, field));
  }
  return value;
}

Vector AbstractCentroid(std::span<const Vector> vectors, std::size_t abstract_count,
                        std::size_t dim) {
  Vector centroid(dim);
  if (abstract_count == 0) return centroid;
  for (std::size_t i = 0; i < abstract_count; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      centroid.components[d] += vectors[i].components[d];
    }
  }
  for (double& c : centroid.components) c /= static_cast<double>(abstract_count);
  return Normalized(std::move(centroid));
}

}  // namespace

FeatureSchema FeatureSchema::Standard(int embedding_dim) {
  FeatureSchema schema;
  schema.scalar_names.assign(kScalarNames.begin(), kScalarNames.end());
  schema.embedding_dim = embedding_dim;
  return schema;
}

PosTag TagOf(const PosLexicon& lexicon, const std::string& word) {
  auto it = lexicon.find(word);
  return it == lexicon.end() ? PosTag::kNoun : it->second;
}

std::vector<std::string> ParseStopwords(std::string_view text) {
  std::vector<std::string> words;
  ForEachDataLine(text, [&](std::string_view line, std::size_t, bool skip) {
    if (skip) return;
    std::string word = NormalizeWhitespace(line);
    if (!word.empty()) words.push_back(ToLowerAscii(word));
  });
  return words;
}

PosLexicon ParsePosLexicon(std::string_view tsv) {
  PosLexicon lexicon;
  ForEachDataLine(tsv, [&](std::string_view line, std::size_t line_no, bool skip) {
    if (skip) return;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("POS lexicon line {}: expected word<TAB>tag", line_no));
    }
    const std::string_view tag = line.substr(tab + 1);
    PosTag parsed;
    if (tag == "NOUN") {
      parsed = PosTag::kNoun;
    } else if (tag == "VERB") {
      parsed = PosTag::kVerb;
    } else if (tag == "ADJ") {
      parsed = PosTag::kAdj;
    } else if (tag == "DET") {
      parsed = PosTag::kDet;
    } else if (tag == "OTHER") {
      parsed = PosTag::kOther;
    } else {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("POS lexicon line {}: unknown tag '{}'", line_no, tag));
    }
    lexicon[ToLowerAscii(line.substr(0, tab))] = parsed;
  });
  return lexicon;
}

CorpusStats CorpusStats::Bundled() {
  static const CorpusStats bundled = [] {
    CorpusStats stats;
    for (auto& word : ParseStopwords(bundled::StopwordsText())) {
      stats.stopwords.insert(std::move(word));
    }
    stats.pos_lexicon = ParsePosLexicon(bundled::PosLexiconText());
    return stats;
  }();
  return bundled;
}

void CorpusStats::LoadDocumentFrequencies(std::string_view tsv) {
  std::size_t docs = 0;
  bool saw_header = false;
  std::map<std::string, std::size_t> frequencies;
  ForEachDataLine(tsv, [&](std::string_view line, std::size_t line_no, bool skip) {
    if (line.starts_with("#docs=")) {
      docs = ParseCount(line.substr(6), line_no);
      saw_header = true;
      return;
    }
    if (skip) return;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("corpus stats line {}: expected word<TAB>df", line_no));
    }
    frequencies[std::string(line.substr(0, tab))] = ParseCount(line.substr(tab + 1), line_no);
  });
  if (!saw_header || docs == 0) {
    throw Error(ErrorKind::kInvalidArgument, "corpus stats need a positive #docs= header");
  }
  for (const auto& [word, df] : frequencies) {
    if (df > docs) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("corpus stats: df({}) = {} exceeds #docs={}", word, df, docs));
    }
  }
  doc_count = docs;
  doc_frequency = std::move(frequencies);
}

void CorpusStats::LoadDocumentFrequenciesFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, fmt::format("cannot read corpus stats {}", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  LoadDocumentFrequencies(buffer.str());
}

std::string CorpusStats::FormatDocumentFrequencies() const {
  std::string out = fmt::format("#docs={}\n", doc_count);
  for (const auto& [word, df] : doc_frequency) out += fmt::format("{}\t{}\n", word, df);
  return out;
}

void CorpusStats::CountDocuments(std::span<const Paper> papers) {
  doc_count = papers.size();
  doc_frequency.clear();
  for (const auto& paper : papers) {
    std::set<std::string> seen;
    for (const auto& sentence : SentenceStream(paper)) {
      seen.insert(sentence.tokens.begin(), sentence.tokens.end());
    }
    for (const auto& word : seen) ++doc_frequency[word];
  }
}

double CorpusStats::Idf(const std::string& word) const {
  auto it = doc_frequency.find(word);
  const double df = it == doc_frequency.end() ? 0.0 : static_cast<double>(it->second);
  return std::log(static_cast<double>(doc_count) / (1.0 + df));
}

std::vector<std::vector<std::string>> NounPhrases(std::span<const std::string> tokens,
                                                  const PosLexicon& lexicon) {
  std::vector<std::vector<std::string>> phrases;
  const std::size_t n = tokens.size();
  std::vector<PosTag> tags(n);
  for (std::size_t i = 0; i < n; ++i) tags[i] = TagOf(lexicon, tokens[i]);

  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    if (tags[j] == PosTag::kDet) ++j;
    while (j < n && tags[j] == PosTag::kAdj) ++j;
    std::size_t k = j;
    while (k < n && tags[k] == PosTag::kNoun) ++k;
    if (k > j) {
      phrases.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                           tokens.begin() + static_cast<std::ptrdiff_t>(k));
      i = k;
    } else {
      ++i;
    }
  }
  return phrases;
}

std::size_t VerbPhraseCount(std::span<const std::string> tokens, const PosLexicon& lexicon) {
  std::size_t count = 0;
  bool in_run = false;
  for (const auto& token : tokens) {
    const bool verb = TagOf(lexicon, token) == PosTag::kVerb;
    if (verb && !in_run) ++count;
    in_run = verb;
  }
  return count;
}

std::size_t SubSentenceCount(std::string_view text) {
  std::size_t count = 1 + static_cast<std::size_t>(std::count(text.begin(), text.end(), ';'));
  const std::string lower = ToLowerAscii(text);
  for (std::string_view conjunction : {", and", ", but", ", or"}) {
    std::size_t pos = lower.find(conjunction);
    while (pos != std::string::npos) {
      const std::size_t after = pos + conjunction.size();
      // ", order" is not ", or".
      if (after == lower.size() || !IsWordByte(lower[after])) ++count;
      pos = lower.find(conjunction, pos + 1);
    }
  }
  return count;
}

int ParseDepthProxy(std::span<const std::string> tokens) {
  int depth = 1;
  for (const auto& token : tokens) {
    if (Subordinators().count(token) > 0) ++depth;
  }
  return std::min(depth, kMaxParseDepth);
}

FeatureMatrix ExtractFeatures(const Paper& paper,
                              std::span<const Vector> sentence_vectors,
                              const EmbeddingProvider& provider,
                              const CorpusStats& stats) {
  const std::vector<Sentence> stream = SentenceStream(paper);
  if (sentence_vectors.size() != stream.size()) {
    throw Error(ErrorKind::kLengthMismatch,
                fmt::format("{} embeddings for {} sentences", sentence_vectors.size(),
                            stream.size()));
  }
  const auto dim = static_cast<std::size_t>(provider.dim());
  for (const auto& v : sentence_vectors) {
    if (v.dim() != dim) {
      throw Error(ErrorKind::kDimensionMismatch,
                  fmt::format("sentence vector dim {} but provider dim {}", v.dim(), dim));
    }
  }

  FeatureMatrix matrix;
  matrix.schema = FeatureSchema::Standard(static_cast<int>(dim));

  std::unordered_map<std::string, std::size_t> term_counts;
  std::size_t total_tokens = 0;
  for (const auto& sentence : stream) {
    for (const auto& token : sentence.tokens) ++term_counts[token];
    total_tokens += sentence.tokens.size();
  }

  const Vector title_vector = provider.Embed(paper.title);
  std::vector<Vector> section_title_vectors;
  section_title_vectors.reserve(paper.sections.size());
  for (const auto& section : paper.sections) {
    section_title_vectors.push_back(provider.Embed(section.name));
  }
  const Vector abstract_centroid =
      AbstractCentroid(sentence_vectors, paper.abstract_sentences.size(), dim);

  const auto n = static_cast<std::ptrdiff_t>(stream.size());
  matrix.rows.reserve(stream.size());
  for (const auto& sentence : stream) {
    std::vector<double> row;
    row.reserve(matrix.Width());

    std::array<double, 4> refs{};
    for (const auto& mark : sentence.ref_marks) refs[static_cast<std::size_t>(mark.kind)] += 1.0;
    row.insert(row.end(), refs.begin(), refs.end());

    const SectionKind kind = KindOfSentence(paper, sentence);
    for (int k = 0; k < kNumOneHotSectionKinds; ++k) {
      row.push_back(static_cast<int>(kind) == k ? 1.0 : 0.0);
    }

    row.push_back(static_cast<double>(sentence.position_in_section) /
                  static_cast<double>(SectionSizeOf(paper, sentence)));

    const auto& tokens = sentence.tokens;
    row.push_back(static_cast<double>(NounPhrases(tokens, stats.pos_lexicon).size()));
    row.push_back(static_cast<double>(VerbPhraseCount(tokens, stats.pos_lexicon)));
    row.push_back(static_cast<double>(SubSentenceCount(sentence.text)));

    const auto stop = std::count_if(tokens.begin(), tokens.end(), [&](const std::string& t) {
      return stats.stopwords.count(t) > 0;
    });
    row.push_back(static_cast<double>(stop) /
                  static_cast<double>(std::max<std::size_t>(1, tokens.size())));

    row.push_back(static_cast<double>(CharacterCount(sentence.text)));
    row.push_back(static_cast<double>(tokens.size()));
    row.push_back(static_cast<double>(ParseDepthProxy(tokens)));

    double tf_sum = 0.0;
    double idf_sum = 0.0;
    for (const auto& token : tokens) {
      tf_sum += static_cast<double>(term_counts[token]) / static_cast<double>(total_tokens);
      idf_sum += stats.Idf(token);
    }
    const double token_count = static_cast<double>(tokens.size());
    row.push_back(tokens.empty() ? 0.0 : tf_sum / token_count);
    row.push_back(tokens.empty() ? 0.0 : idf_sum / token_count);

    const Vector& own = sentence_vectors[sentence.global_index];
    row.push_back(Cosine(own, title_vector));
    row.push_back(sentence.section_index == kAbstractSectionIndex
                      ? 0.0
                      : Cosine(own, section_title_vectors[static_cast<std::size_t>(
                                        sentence.section_index)]));
    row.push_back(Cosine(own, abstract_centroid));

    const auto index = static_cast<std::ptrdiff_t>(sentence.global_index);
    for (std::ptrdiff_t offset : {-1, -2, -3, 1, 2, 3}) {
      const std::ptrdiff_t neighbor = index + offset;
      row.push_back(neighbor < 0 || neighbor >= n
                        ? 0.0
                        : Cosine(own, sentence_vectors[static_cast<std::size_t>(neighbor)]));
    }

    row.insert(row.end(), own.components.begin(), own.components.end());
    for (double value : row) {
      if (!std::isfinite(value)) {
        throw Error(ErrorKind::kInvariant,
                    fmt::format("non-finite feature for sentence {}", sentence.global_index));
      }
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

std::string FormatFeatureMatrix(const FeatureMatrix& matrix) {
  std::string out = "global_index";
  for (const auto& name : matrix.schema.scalar_names) out += "\t" + name;
  for (int d = 0; d < matrix.schema.embedding_dim; ++d) out += fmt::format("\temb_{}", d);
  out += '\n';
  for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
    out += fmt::format("{}", i);
    for (double value : matrix.rows[i]) out += fmt::format("\t{}", value);
    out += '\n';
  }
  return out;
}

}  // namespace deckgen
