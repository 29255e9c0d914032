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

#include "commands.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "deckgen/document.h"
#include "deckgen/embedding.h"
#include "deckgen/error.h"
#include "deckgen/features.h"
#include "deckgen/metrics.h"
#include "deckgen/pipeline.h"
#include "deckgen/salience.h"
#include "deckgen/selection.h"

namespace deckgen::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kPaperSuffix = ".paper.xml";
constexpr std::string_view kSlidesSuffix = ".slides.txt";

// Error raised while handling a specific file.
class FileError : public Error {
 public:
  FileError(const Error& cause, std::string path)
      : Error(cause.kind(), cause.what()), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(Error(ErrorKind::kIo, "cannot open file for reading"), path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError(Error(ErrorKind::kIo, "cannot open file for writing"), path);
  out << contents;
  if (!out.flush()) throw FileError(Error(ErrorKind::kIo, "write failed"), path);
}

// Runs fn and tags any library error with the file it came from.
template <typename Fn>
auto WithPath(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const FileError&) {
    throw;
  } catch (const Error& e) {
    throw FileError(e, path);
  }
}

Paper LoadPaper(const std::string& path) {
  return WithPath(path, [&] { return ParsePaper(ReadFile(path)); });
}

SlideText LoadSlides(const std::string& path) {
  return WithPath(path, [&] { return ParseSlides(ReadFile(path)); });
}

std::string OneLine(std::string_view text) {
  std::string line(text);
  std::replace(line.begin(), line.end(), '\n', ' ');
  return line;
}

void ReportError(std::ostream& err, const Error& e, const std::string* path) {
  err << "error: kind=" << ErrorKindName(e.kind());
  if (path != nullptr) err << " path=" << *path;
  err << " message=" << OneLine(e.what()) << "\n";
}

int ExitCodeFor(const Error& e) {
  return e.kind() == ErrorKind::kInvariant ? kExitInternal : kExitInput;
}

// Options shared by every command that embeds text.
struct ProviderOptions {
  std::string provider = "hashed";
  std::string cache;
  int dim = kDefaultEmbeddingDim;
  std::string stats;

  void Attach(CLI::App* app) {
    app->add_option("--provider", provider, "Embedding provider")
        ->check(CLI::IsMember({"hashed", "cache"}))
        ->capture_default_str();
    app->add_option("--cache", cache, "Vector cache TSV (for --provider cache)");
    app->add_option("--dim", dim, "Embedding dimension")->capture_default_str();
    app->add_option("--stats", stats, "Corpus document-frequency TSV");
  }

  ProviderConfig Config() const {
    ProviderConfig config;
    config.kind = provider == "cache" ? ProviderKind::kVectorCache : ProviderKind::kHashedFallback;
    config.dim = dim;
    if (!cache.empty()) config.cache_path = cache;
    return config;
  }

  std::unique_ptr<EmbeddingProvider> Provider() const {
    const ProviderConfig config = Config();
    if (config.kind == ProviderKind::kVectorCache && config.cache_path) {
      return WithPath(*config.cache_path, [&] { return MakeProvider(config); });
    }
    return MakeProvider(config);
  }

  CorpusStats Stats() const {
    CorpusStats result = CorpusStats::Bundled();
    if (!stats.empty()) {
      WithPath(stats, [&] { result.LoadDocumentFrequencies(ReadFile(stats)); });
    }
    return result;
  }
};

struct GenerateOptions {
  ProviderOptions provider;
  std::string paper;
  std::string model;
  std::string size_model;
  std::string out;
  double theta = kDefaultTheta;
  std::optional<std::int64_t> size;
  double size_fraction = kDefaultSizeFraction;
  std::uint64_t seed = 42;
  std::size_t cutover = kDefaultExactCutover;
  std::size_t slide_capacity = 8;
  bool no_abstract = false;
  bool no_title_slide = false;

  void AttachRunFlags(CLI::App* app) {
    provider.Attach(app);
    app->add_option("--size-model", size_model, "Size regression model JSON");
    app->add_option("--theta", theta, "Redundancy bound on mean pairwise similarity")
        ->capture_default_str();
    app->add_option("--size", size, "Explicit size budget in characters");
    app->add_option("--size-fraction", size_fraction,
                    "Budget as a fraction of paper characters when no size is given")
        ->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--exact-cutover", cutover, "Largest N solved exactly")
        ->capture_default_str();
    app->add_option("--slide-capacity", slide_capacity, "Sentence bullets per slide")
        ->capture_default_str();
    app->add_flag("--no-abstract", no_abstract, "Exclude abstract sentences from selection");
    app->add_flag("--no-title-slide", no_title_slide, "Omit the title slide");
  }

  RunConfig Config() const {
    RunConfig config;
    config.theta = theta;
    config.size = size;
    config.size_fraction = size_fraction;
    config.seed = seed;
    config.provider = provider.Config();
    config.exact_cutover = cutover;
    config.include_abstract = !no_abstract;
    config.layout.max_second_level_per_slide = slide_capacity;
    config.layout.include_title_slide = !no_title_slide;
    return config;
  }
};

MlpModel LoadModel(const std::string& path) {
  return WithPath(path, [&] { return DeserializeModel(ReadFile(path)); });
}

std::optional<SizeModel> LoadSizeModel(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return WithPath(path, [&] { return DeserializeSizeModel(ReadFile(path)); });
}

// Failures of individual corpus members are reported and skipped.
void ReportSkip(std::ostream& out, const std::string& path, const Error& e) {
  out << "skipped=" << path << " kind=" << ErrorKindName(e.kind())
      << " message=" << OneLine(e.what()) << "\n";
}

struct LoadedPair {
  std::string stem;
  Paper paper;
  SlideText slides;
};

std::vector<LoadedPair> LoadPairs(const std::string& dir, std::ostream& out) {
  if (!fs::is_directory(dir)) {
    throw FileError(Error(ErrorKind::kIo, "not a directory"), dir);
  }
  std::vector<fs::path> unmatched;
  std::vector<LoadedPair> loaded;
  for (const auto& files : ListPairs(dir, &unmatched)) {
    try {
      LoadedPair pair{files.stem, LoadPaper(files.paper.string()),
                      LoadSlides(files.slides.string())};
      loaded.push_back(std::move(pair));
    } catch (const FileError& e) {
      ReportSkip(out, e.path(), e);
    }
  }
  for (const auto& path : unmatched) {
    ReportSkip(out, path.string(), Error(ErrorKind::kIo, "no matching paper/slides partner"));
  }
  return loaded;
}

std::vector<int> ParseHidden(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      sizes.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, fmt::format("bad hidden size '{}'", part));
    }
  }
  if (sizes.size() != 3) {
    throw Error(ErrorKind::kInvalidArgument, "--hidden needs exactly three sizes, e.g. 128,64,32");
  }
  return sizes;
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteFile(path, text);
  }
}

}  // namespace

std::vector<PairFiles> ListPairs(const fs::path& dir, std::vector<fs::path>* unmatched) {
  std::map<std::string, PairFiles> by_stem;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.ends_with(kPaperSuffix)) {
      auto& files = by_stem[name.substr(0, name.size() - kPaperSuffix.size())];
      files.paper = entry.path();
    } else if (name.ends_with(kSlidesSuffix)) {
      auto& files = by_stem[name.substr(0, name.size() - kSlidesSuffix.size())];
      files.slides = entry.path();
    }
  }
  std::vector<PairFiles> pairs;
  for (auto& [stem, files] : by_stem) {
    files.stem = stem;
    if (!files.paper.empty() && !files.slides.empty()) {
      pairs.push_back(files);
    } else if (unmatched != nullptr) {
      unmatched->push_back(files.paper.empty() ? files.slides : files.paper);
    }
  }
  return pairs;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Turn a structured paper into a two-level bullet slide deck", "deckgen");
  app.require_subcommand(1);

  // generate
  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "Generate a deck for one paper");
  generate->add_option("paper", gen.paper, "Paper XML")->required();
  generate->add_option("--model", gen.model, "Salience model JSON")->required();
  generate->add_option("--out", gen.out, "Deck output path")->required();
  gen.AttachRunFlags(generate);

  // label
  ProviderOptions label_provider;
  std::string label_paper, label_slides, label_out;
  CLI::App* label = app.add_subcommand("label", "Salience labels of a paper against its slides");
  label->add_option("paper", label_paper, "Paper XML")->required();
  label->add_option("slides", label_slides, "Slides text")->required();
  label->add_option("--out", label_out, "Labels TSV (stdout if omitted)");
  label_provider.Attach(label);

  // features
  ProviderOptions feature_provider;
  std::string feature_paper, feature_out;
  CLI::App* features = app.add_subcommand("features", "Per-sentence feature matrix as TSV");
  features->add_option("paper", feature_paper, "Paper XML")->required();
  features->add_option("--out", feature_out, "Features TSV (stdout if omitted)");
  feature_provider.Attach(features);

  // train
  ProviderOptions train_provider;
  TrainConfig train_config;
  std::string train_pairs, train_out, train_hidden = "128,64,32", train_stats_out;
  double holdout = 0.0;
  CLI::App* train = app.add_subcommand("train", "Train the salience regressor");
  train->add_option("--pairs", train_pairs, "Pairs directory")->required();
  train->add_option("--out", train_out, "Model output path")->required();
  train->add_option("--seed", train_config.seed, "Random seed")->capture_default_str();
  train->add_option("--lr", train_config.learning_rate, "Learning rate")->capture_default_str();
  train->add_option("--batch", train_config.batch_size, "Batch size")->capture_default_str();
  train->add_option("--epochs", train_config.epochs, "Epochs")->capture_default_str();
  train->add_option("--hidden", train_hidden, "Hidden layer widths")->capture_default_str();
  train->add_option("--holdout", holdout, "Fraction of pairs held out for evaluation")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  train->add_option("--stats-out", train_stats_out,
                    "Write document frequencies of the training papers");
  train_provider.Attach(train);

  // train-size
  std::string size_pairs, size_out;
  CLI::App* train_size = app.add_subcommand("train-size", "Fit the size regression");
  train_size->add_option("--pairs", size_pairs, "Pairs directory")->required();
  train_size->add_option("--out", size_out, "Size model output path")->required();

  // rouge
  std::string rouge_candidate, rouge_reference;
  CLI::App* rouge = app.add_subcommand("rouge", "ROUGE-1/2/SU4 of a candidate text");
  rouge->add_option("candidate", rouge_candidate, "Candidate text file")->required();
  rouge->add_option("reference", rouge_reference, "Reference text file")->required();

  // evaluate
  GenerateOptions eval;
  std::string eval_pairs, eval_decks;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Generate decks for a corpus and score them");
  evaluate->add_option("--pairs", eval_pairs, "Pairs directory")->required();
  evaluate->add_option("--model", eval.model, "Salience model JSON")->required();
  evaluate->add_option("--out", eval_decks, "Directory for generated decks");
  eval.AttachRunFlags(evaluate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: kind=Usage message=" << OneLine(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      const RunConfig config = gen.Config();
      WithPath(gen.paper, [&] { config.Validate(); });
      const Paper paper = LoadPaper(gen.paper);
      const MlpModel model = LoadModel(gen.model);
      const std::optional<SizeModel> size_model = LoadSizeModel(gen.size_model);
      const auto provider = gen.provider.Provider();
      const CorpusStats stats = gen.provider.Stats();
      const GenerateResult result = WithPath(gen.paper, [&] {
        return Generate(paper, model, size_model ? &*size_model : nullptr, config, *provider,
                        stats);
      });
      WriteFile(gen.out, result.deck_text);
      out << "deck=" << gen.out << "\n" << FormatReport(result, config);
      return kExitOk;
    }

    if (label->parsed()) {
      const Paper paper = LoadPaper(label_paper);
      const SlideText slides = LoadSlides(label_slides);
      const auto provider = label_provider.Provider();
      const SalienceLabels labels =
          WithPath(label_slides, [&] { return LabelPaper(paper, slides, *provider); });
      std::string tsv;
      for (std::size_t i = 0; i < labels.values.size(); ++i) {
        tsv += fmt::format("{}\t{}\n", i, labels.values[i]);
      }
      Emit(label_out, tsv, out);
      return kExitOk;
    }

    if (features->parsed()) {
      const Paper paper = LoadPaper(feature_paper);
      const auto provider = feature_provider.Provider();
      const CorpusStats stats = feature_provider.Stats();
      const FeatureMatrix matrix = WithPath(feature_paper, [&] {
        std::vector<std::string> texts;
        for (const auto& s : SentenceStream(paper)) texts.push_back(s.text);
        return ExtractFeatures(paper, provider->EmbedAll(texts), *provider, stats);
      });
      Emit(feature_out, FormatFeatureMatrix(matrix), out);
      return kExitOk;
    }

    if (train->parsed()) {
      const std::vector<int> hidden = ParseHidden(train_hidden);
      std::copy(hidden.begin(), hidden.end(), train_config.hidden_sizes.begin());
      train_config.Validate();
      if (holdout >= 1.0) {
        throw Error(ErrorKind::kInvalidArgument, "--holdout must leave training pairs");
      }
      std::vector<LoadedPair> pairs = LoadPairs(train_pairs, out);
      const auto provider = train_provider.Provider();
      CorpusStats stats = train_provider.Stats();
      if (!train_stats_out.empty()) {
        std::vector<Paper> papers;
        for (const auto& pair : pairs) papers.push_back(pair.paper);
        if (!papers.empty()) stats.CountDocuments(papers);
        WriteFile(train_stats_out, stats.FormatDocumentFrequencies());
      }
      std::vector<FeatureMatrix> matrices;
      std::vector<SalienceLabels> labels;
      std::vector<std::string> used;
      for (const auto& pair : pairs) {
        try {
          TrainingExample example = BuildTrainingExample(pair.paper, pair.slides, *provider, stats);
          matrices.push_back(std::move(example.features));
          labels.push_back(std::move(example.labels));
          used.push_back(pair.stem);
        } catch (const Error& e) {
          ReportSkip(out, pair.stem, e);
        }
      }
      if (matrices.empty()) {
        throw FileError(Error(ErrorKind::kEmptyTrainingSet, "no usable training pairs"),
                        train_pairs);
      }
      const auto held = static_cast<std::size_t>(
          std::floor(holdout * static_cast<double>(matrices.size())));
      const std::size_t train_count = matrices.size() - held;
      const std::span<const FeatureMatrix> all_features(matrices);
      const std::span<const SalienceLabels> all_labels(labels);
      const TrainResult result = Train(all_features.first(train_count),
                                       all_labels.first(train_count), train_config);
      WriteFile(train_out, SerializeModel(result.model));
      out << "model=" << train_out << "\n";
      out << "pairs=" << train_count << "\n";
      for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
        out << fmt::format("epoch={} mse={}\n", e + 1, result.epoch_losses[e]);
      }
      if (held > 0) {
        out << "holdout_pairs=" << held << "\n";
        out << fmt::format("holdout_mse={}\n",
                           MeanSquaredError(result.model, all_features.last(held),
                                            all_labels.last(held)));
      }
      return kExitOk;
    }

    if (train_size->parsed()) {
      const std::vector<LoadedPair> pairs = LoadPairs(size_pairs, out);
      std::vector<SizeSample> samples;
      for (const auto& pair : pairs) samples.push_back(MakeSizeSample(pair.paper, pair.slides));
      const SizeModel model =
          WithPath(size_pairs, [&] { return TrainSizeModel(samples); });
      WriteFile(size_out, SerializeSizeModel(model));
      out << "size_model=" << size_out << "\npairs=" << samples.size() << "\n";
      return kExitOk;
    }

    if (rouge->parsed()) {
      const std::string candidate = ReadFile(rouge_candidate);
      const std::string reference = ReadFile(rouge_reference);
      const std::vector<std::pair<std::string, std::string>> pair = {{candidate, reference}};
      const CorpusScores scores = EvaluateCorpus(pair);
      out << fmt::format("rouge1_f1={}\nrouge2_f1={}\nrouge_su4_f1={}\n", scores.rouge1,
                         scores.rouge2, scores.rouge_su4);
      const std::vector<std::pair<std::string, CorpusScores>> rows = {{"candidate", scores}};
      out << FormatScoreTable(rows);
      return kExitOk;
    }

    if (evaluate->parsed()) {
      const RunConfig config = eval.Config();
      config.Validate();
      const MlpModel model = LoadModel(eval.model);
      const std::optional<SizeModel> size_model = LoadSizeModel(eval.size_model);
      const auto provider = eval.provider.Provider();
      const CorpusStats stats = eval.provider.Stats();
      if (!eval_decks.empty()) fs::create_directories(eval_decks);

      std::vector<fs::path> unmatched;
      if (!fs::is_directory(eval_pairs)) {
        throw FileError(Error(ErrorKind::kIo, "not a directory"), eval_pairs);
      }
      std::vector<std::pair<std::string, std::string>> scored;
      for (const auto& files : ListPairs(eval_pairs, &unmatched)) {
        try {
          const Paper paper = LoadPaper(files.paper.string());
          const SlideText slides = LoadSlides(files.slides.string());
          const GenerateResult result = WithPath(files.paper.string(), [&] {
            return Generate(paper, model, size_model ? &*size_model : nullptr, config, *provider,
                            stats);
          });
          if (!eval_decks.empty()) {
            WriteFile((fs::path(eval_decks) / (files.stem + ".deck.md")).string(),
                      result.deck_text);
          }
          std::string reference;
          for (const auto& sentence : slides.sentences) reference += sentence + "\n";
          scored.emplace_back(result.deck_text, reference);
          out << "evaluated=" << files.stem << "\n";
        } catch (const FileError& e) {
          ReportSkip(out, e.path(), e);
        }
      }
      for (const auto& path : unmatched) {
        ReportSkip(out, path.string(), Error(ErrorKind::kIo, "no matching paper/slides partner"));
      }
      if (scored.empty()) {
        throw FileError(Error(ErrorKind::kEmptyCorpus, "no pair could be evaluated"), eval_pairs);
      }
      const CorpusScores scores = EvaluateCorpus(scored);
      out << fmt::format("pairs={}\nrouge1_f1={}\nrouge2_f1={}\nrouge_su4_f1={}\n", scores.pairs,
                         scores.rouge1, scores.rouge2, scores.rouge_su4);
      const std::vector<std::pair<std::string, CorpusScores>> rows = {{"deckgen", scores}};
      out << FormatScoreTable(rows);
      return kExitOk;
    }
  } catch (const FileError& e) {
    ReportError(err, e, &e.path());
    return ExitCodeFor(e);
  } catch (const Error& e) {
    ReportError(err, e, nullptr);
    return ExitCodeFor(e);
  } catch (const fs::filesystem_error& e) {
    ReportError(err, Error(ErrorKind::kIo, e.what()), nullptr);
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace deckgen::cli
