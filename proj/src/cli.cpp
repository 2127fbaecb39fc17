// Copyright 2026 The shortopic Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shortopic/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "shortopic/error.hpp"
#include "shortopic/evaluation.hpp"
#include "shortopic/inference.hpp"
#include "shortopic/model.hpp"
#include "shortopic/persistence.hpp"

namespace shortopic::cli {
namespace {

namespace fs = std::filesystem;

struct Flag {
  const char* name;
  const char* fallback;  // shown in help; empty when required or derived
  const char* help;
};

const std::vector<Flag> kTrainFlags = {
    {"model", "", "LDA | DMM | BTM | WNTM | PTM | GPUDMM (required)"},
    {"corpus", "", "training corpus, one document per line (required)"},
    {"ntopics", "20", "number of topics K"},
    {"alpha", "0.1", "document-topic Dirichlet prior"},
    {"beta", "0.01", "topic-word Dirichlet prior"},
    {"niters", "1000", "Gibbs sweeps"},
    {"twords", "20", "top words per topic in .topWords"},
    {"name", "model", "output file prefix"},
    {"seed", "1", "random seed"},
    {"dir", "directory of -corpus", "output directory"},
    {"window", "BTM: 0 (whole document), WNTM: 10", "co-occurrence window (BTM, WNTM)"},
    {"P", "ceil(D/10)", "number of pseudo-documents (PTM)"},
    {"lambda", "0.1", "pseudo-document prior (PTM)"},
    {"vectors", "", "word2vec text embeddings (GPUDMM, required)"},
    {"epsilon", "0.5", "cosine threshold for promotion (GPUDMM)"},
    {"mu", "0.1", "promotion weight (GPUDMM)"},
};

const std::vector<Flag> kInferFlags = {
    {"model", "taken from .paras", "expected model kind; must match the saved model"},
    {"dir", "directory of -corpus", "directory holding the trained model"},
    {"name", "", "prefix of the trained model (required)"},
    {"corpus", "", "unseen corpus, one document per line (required)"},
    {"niters", "100", "fold-in Gibbs sweeps"},
    {"seed", "1", "random seed"},
};

const std::vector<Flag> kEvalFlags = {
    {"task", "", "coherence | clustering | classification (required)"},
    {"prob", "", "theta file (or phi file for coherence) (required)"},
    {"label", "", "gold labels, one per line (clustering, classification)"},
    {"t", "10", "top words per topic (coherence)"},
    {"ref", "training corpus from .paras", "reference corpus (coherence)"},
    {"k", "5", "nearest neighbours (classification)"},
    {"trainfrac", "0.8", "training fraction of the split (classification)"},
    {"splitseed", "1", "split seed (classification)"},
};

using Args = std::map<std::string, std::string>;

Args parse_flags(std::span<const std::string> args, const std::vector<Flag>& table,
                 const std::string& command) {
  Args out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a.size() < 2 || a[0] != '-') throw UsageError("unexpected argument '" + a + "'");
    const std::string name = a.substr(a[1] == '-' ? 2 : 1);
    bool known = false;
    for (const auto& f : table) known = known || name == f.name;
    if (!known) throw UsageError("unknown flag -" + name + " for '" + command + "'");
    if (i + 1 >= args.size()) throw UsageError("flag -" + name + " needs a value");
    if (!out.emplace(name, args[++i]).second) throw UsageError("flag -" + name + " given twice");
  }
  return out;
}

std::string require(const Args& args, const std::string& name) {
  auto it = args.find(name);
  if (it == args.end()) throw UsageError("missing required flag -" + name);
  return it->second;
}

template <class T>
T parse_value(const std::string& flag, const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("bad value '" + text + "' for -" + flag);
  }
  return v;
}

template <class T>
T get(const Args& args, const std::string& name, T fallback) {
  auto it = args.find(name);
  return it == args.end() ? fallback : parse_value<T>(name, it->second);
}

fs::path default_dir(const std::string& corpus) {
  auto parent = fs::path(corpus).parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

void reject_unless(const Args& args, std::initializer_list<const char*> flags, bool allowed,
                   const std::string& why) {
  for (const char* f : flags) {
    if (!allowed && args.contains(f)) throw UsageError("flag -" + std::string(f) + " " + why);
  }
}

int cmd_train(const Args& args, std::ostream& out) {
  const std::string model_text = require(args, "model");
  const std::string corpus_path = require(args, "corpus");
  auto kind = parse_model_kind(model_text);
  if (!kind) throw UsageError("unknown model '" + model_text + "'");

  const bool windowed = *kind == ModelKind::kBtm || *kind == ModelKind::kWntm;
  reject_unless(args, {"window"}, windowed, "only applies to BTM and WNTM");
  reject_unless(args, {"P", "lambda"}, *kind == ModelKind::kPtm, "only applies to PTM");
  reject_unless(args, {"vectors", "epsilon", "mu"}, *kind == ModelKind::kGpuDmm,
                "only applies to GPUDMM");
  if (*kind == ModelKind::kGpuDmm && !args.contains("vectors")) {
    throw UsageError("GPUDMM requires -vectors");
  }

  ModelParams params;
  params.num_topics = get<int>(args, "ntopics", params.num_topics);
  params.alpha = get<double>(args, "alpha", params.alpha);
  params.beta = get<double>(args, "beta", params.beta);
  params.niters = get<int>(args, "niters", params.niters);
  params.twords = get<int>(args, "twords", params.twords);
  params.seed = get<std::uint64_t>(args, "seed", params.seed);
  for (const char* key : {"window", "P", "lambda", "epsilon", "mu"}) {
    if (args.contains(key)) params.extras[key] = get<double>(args, key, 0.0);
  }
  if (*kind == ModelKind::kGpuDmm) {
    params.extras.try_emplace("epsilon", kDefaultEpsilon);
    params.extras.try_emplace("mu", kDefaultMu);
    if (!(params.extras["epsilon"] > 0)) throw UsageError("-epsilon must be > 0");
    if (!(params.extras["mu"] > 0)) throw UsageError("-mu must be > 0");
  }
  params.validate();
  const std::string name = args.contains("name") ? args.at("name") : "model";
  const fs::path dir = args.contains("dir") ? fs::path(args.at("dir")) : default_dir(corpus_path);

  if (!fs::is_directory(dir)) throw IoError("output directory " + dir.string() + " does not exist");
  const Corpus corpus = load_corpus(corpus_path);
  std::optional<WordEmbeddings> emb;
  if (*kind == ModelKind::kGpuDmm) emb = load_embeddings(args.at("vectors"), corpus.vocab);

  TrainedModel model = train_model(*kind, corpus, params, emb ? &*emb : nullptr);
  model.sources["corpus"] = corpus_path;
  if (emb) model.sources["vectors"] = args.at("vectors");

  write_model(model, dir, name);
  out << "trained " << model_name(*kind) << " on " << corpus.num_docs() << " documents, "
      << corpus.vocab_size() << " words, K=" << params.num_topics << "\n";
  for (const char* suffix : kModelSuffixes) {
    out << "wrote " << artifact_path(dir, name, suffix).string() << "\n";
  }
  return kOk;
}

int cmd_infer(const Args& args, std::ostream& out, std::ostream& err) {
  const std::string name = require(args, "name");
  const std::string corpus_path = require(args, "corpus");
  std::optional<ModelKind> expected;
  if (args.contains("model")) {
    expected = parse_model_kind(args.at("model"));
    if (!expected) throw UsageError("unknown model '" + args.at("model") + "'");
  }
  const int iters = get<int>(args, "niters", kDefaultFoldInIters);
  const auto seed = get<std::uint64_t>(args, "seed", 1);
  if (iters < 1) throw UsageError("-niters must be >= 1");
  const fs::path dir = args.contains("dir") ? fs::path(args.at("dir")) : default_dir(corpus_path);

  const TrainedModel model = read_model(dir, name);
  if (expected && *expected != model.kind) {
    throw DataError("saved model is " + std::string(model_name(model.kind)) + ", not " +
                    args.at("model"));
  }
  const auto projected = load_corpus_with_vocab(corpus_path, model.vocab);
  const auto result = fold_in(model, projected, iters, seed);
  if (result.oov_tokens > 0) {
    std::size_t fully_oov = 0;
    for (double f : result.oov_fraction) fully_oov += f == 1.0;
    err << "warning: dropped " << result.oov_tokens << " of " << projected.raw_tokens()
        << " tokens not in the model vocabulary; " << fully_oov
        << " documents had no known words and got uniform topics\n";
  }
  const auto path = artifact_path(dir, name, ".inf.theta");
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  write_matrix(file, result.theta);
  file.flush();
  if (!file) throw IoError("write failed for " + path.string());
  out << "wrote " << path.string() << "\n";
  return kOk;
}

// Model prefix of a theta/phi file: "dir/name.theta" -> (dir, name).
std::pair<fs::path, std::string> model_prefix(const std::string& prob) {
  fs::path p(prob);
  std::string file = p.filename().string();
  for (const char* suffix : {".inf.theta", ".theta", ".phi"}) {
    const std::string s(suffix);
    if (file.size() > s.size() && file.ends_with(s)) {
      file.resize(file.size() - s.size());
      break;
    }
  }
  auto dir = p.parent_path();
  return {dir.empty() ? fs::path(".") : dir, file};
}

int cmd_eval(const Args& args, std::ostream& out) {
  const std::string task = require(args, "task");
  const std::string prob = require(args, "prob");
  if (task != "coherence" && task != "clustering" && task != "classification") {
    throw UsageError("unknown task '" + task + "'");
  }
  reject_unless(args, {"t", "ref"}, task == "coherence", "only applies to -task coherence");
  reject_unless(args, {"k", "trainfrac", "splitseed"}, task == "classification",
                "only applies to -task classification");
  reject_unless(args, {"label"}, task != "coherence", "does not apply to -task coherence");

  if (task == "coherence") {
    const int t = get<int>(args, "t", 10);
    if (t < 2) throw UsageError("-t must be >= 2");
    const auto [dir, name] = model_prefix(prob);
    const TrainedModel model = read_model(dir, name);
    std::string ref;
    if (args.contains("ref")) {
      ref = args.at("ref");
    } else if (model.sources.contains("corpus")) {
      ref = model.sources.at("corpus");
    } else {
      throw UsageError("no -ref given and the model does not record its training corpus");
    }
    const auto reference = load_corpus_with_vocab(ref, model.vocab);
    const auto report = pmi_coherence(model, reference.corpus, t);
    std::vector<std::pair<std::string, double>> lines{{"PMI", report.mean}};
    for (std::size_t k = 0; k < report.per_topic.size(); ++k) {
      lines.emplace_back("Topic " + std::to_string(k), report.per_topic[k]);
    }
    write_report(prob + ".PMI", lines);
    out << "PMI: " << format_double(report.mean) << "\n";
    if (report.skipped_pairs > 0) {
      out << "skipped " << report.skipped_pairs << " pairs with zero document frequency\n";
    }
    return kOk;
  }

  const std::string label_path = require(args, "label");
  if (task == "clustering") {
    const Matrix theta = read_stochastic_matrix(prob);
    const GoldLabels gold = load_labels(label_path, theta.rows());
    const auto pred = argmax_assign(theta);
    const double p = purity(pred, gold.labels);
    const double n = nmi(pred, gold.labels);
    write_report(prob + ".PurityNMI", {{"Purity", p}, {"NMI", n}});
    out << "Purity: " << format_double(p) << "\nNMI: " << format_double(n) << "\n";
    return kOk;
  }

  const int k = get<int>(args, "k", kDefaultNeighbors);
  const double frac = get<double>(args, "trainfrac", kDefaultTrainFraction);
  const auto split_seed = get<std::uint64_t>(args, "splitseed", 1);
  if (k < 1) throw UsageError("-k must be >= 1");
  if (!(frac > 0 && frac < 1)) throw UsageError("-trainfrac must be in (0, 1)");
  const Matrix theta = read_stochastic_matrix(prob);
  const GoldLabels gold = load_labels(label_path, theta.rows());
  const auto report = classify_eval(theta, gold, split_seed, frac, k);
  write_report(prob + ".ClassPRF", {{"Precision", report.at("precision")},
                                    {"Recall", report.at("recall")},
                                    {"F1", report.at("f1")}});
  out << "Precision: " << format_double(report.at("precision"))
      << "\nRecall: " << format_double(report.at("recall"))
      << "\nF1: " << format_double(report.at("f1")) << "\n";
  return kOk;
}

void append_flags(std::ostringstream& os, const std::vector<Flag>& flags) {
  for (const auto& f : flags) {
    os << "  -" << f.name;
    for (std::size_t pad = std::string(f.name).size(); pad < 10; ++pad) os << ' ';
    os << f.help;
    if (*f.fallback) os << " [default: " << f.fallback << "]";
    os << "\n";
  }
}

}  // namespace

std::string usage() {
  std::ostringstream os;
  os << "usage: shortopic <train|infer|eval> [-flag value]...\n\n"
     << "train: fit a topic model and write <name>.theta, .phi, .topWords,\n"
     << "       .topicAssignments and .paras\n";
  append_flags(os, kTrainFlags);
  os << "\ninfer: fold unseen documents into a trained model, writing <name>.inf.theta\n";
  append_flags(os, kInferFlags);
  os << "\neval: score a model; writes <prob>.PMI, <prob>.PurityNMI or <prob>.ClassPRF\n";
  append_flags(os, kEvalFlags);
  os << "\nexit codes: 0 success, 1 usage error, 2 data error, 3 I/O error\n";
  return os.str();
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  for (const auto& a : args) {
    if (a == "--help" || a == "-help" || a == "-h" || a == "help") {
      out << usage();
      return kOk;
    }
  }
  try {
    if (args.empty()) throw UsageError("missing subcommand");
    const std::string& command = args[0];
    const auto rest = args.subspan(1);
    if (command == "train") return cmd_train(parse_flags(rest, kTrainFlags, command), out);
    if (command == "infer") return cmd_infer(parse_flags(rest, kInferFlags, command), out, err);
    if (command == "eval") return cmd_eval(parse_flags(rest, kEvalFlags, command), out);
    throw UsageError("unknown subcommand '" + command + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage();
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace shortopic::cli
