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

#include "shortopic/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "shortopic/error.hpp"
#include "shortopic/kernels.hpp"

namespace shortopic {
namespace {

void check_lengths(std::span<const int> pred, std::span<const int> gold) {
  if (pred.size() != gold.size()) {
    throw std::invalid_argument("prediction and gold label lengths differ");
  }
  if (pred.empty()) throw std::invalid_argument("no labels to evaluate");
}

// Sparse contingency table plus marginals.
struct Contingency {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> pred;
  std::map<int, double> gold;
};

Contingency tabulate(std::span<const int> pred, std::span<const int> gold) {
  Contingency t;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    t.joint[{pred[i], gold[i]}] += 1;
    t.pred[pred[i]] += 1;
    t.gold[gold[i]] += 1;
  }
  return t;
}

double entropy(const std::map<int, double>& counts, double n) {
  double h = 0.0;
  for (const auto& [label, c] : counts) h -= (c / n) * std::log(c / n);
  return h;
}

}  // namespace

std::vector<int> argmax_assign(const Matrix& theta) {
  std::vector<int> out(theta.rows());
  for (std::size_t d = 0; d < theta.rows(); ++d) {
    auto row = theta.row(d);
    out[d] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

double purity(std::span<const int> pred, std::span<const int> gold) {
  check_lengths(pred, gold);
  std::map<int, double> best;
  for (const auto& [cell, c] : tabulate(pred, gold).joint) {
    auto& b = best[cell.first];
    b = std::max(b, c);
  }
  double correct = 0.0;
  for (const auto& [cluster, c] : best) correct += c;
  return correct / static_cast<double>(pred.size());
}

double nmi(std::span<const int> pred, std::span<const int> gold) {
  check_lengths(pred, gold);
  const auto t = tabulate(pred, gold);
  const double n = static_cast<double>(pred.size());
  const double h_pred = entropy(t.pred, n);
  const double h_gold = entropy(t.gold, n);
  const bool pred_trivial = t.pred.size() == 1;
  const bool gold_trivial = t.gold.size() == 1;
  if (pred_trivial && gold_trivial) return 1.0;
  if (pred_trivial || gold_trivial) return 0.0;
  double mi = 0.0;
  for (const auto& [cell, c] : t.joint) {
    mi += (c / n) * std::log(n * c / (t.pred.at(cell.first) * t.gold.at(cell.second)));
  }
  return std::clamp(2.0 * mi / (h_pred + h_gold), 0.0, 1.0);
}

CoherenceReport pmi_coherence(const Matrix& phi, std::span<const Document> reference, int t) {
  if (t < 2) throw std::invalid_argument("coherence needs at least 2 top words");
  if (reference.empty()) throw std::invalid_argument("reference corpus is empty");

  const auto tops = top_word_ids(phi, t);
  std::vector<int> tracked;
  for (const auto& topic : tops) tracked.insert(tracked.end(), topic.begin(), topic.end());
  std::sort(tracked.begin(), tracked.end());
  tracked.erase(std::unique(tracked.begin(), tracked.end()), tracked.end());
  auto pos = [&](int w) {
    return static_cast<std::size_t>(std::lower_bound(tracked.begin(), tracked.end(), w) -
                                    tracked.begin());
  };

  const auto counts = kernels::parallel::document_cooccurrence(reference, tracked, phi.cols());
  const double D = static_cast<double>(reference.size());

  CoherenceReport report;
  double total = 0.0;
  std::size_t scored_topics = 0;
  for (const auto& topic : tops) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < topic.size(); ++a) {
      for (std::size_t b = a + 1; b < topic.size(); ++b) {
        const auto i = pos(topic[a]);
        const auto j = pos(topic[b]);
        const double ci = static_cast<double>(counts.doc_freq[i]);
        const double cj = static_cast<double>(counts.doc_freq[j]);
        if (ci == 0 || cj == 0) {
          ++report.skipped_pairs;
          continue;
        }
        const double joint = static_cast<double>(counts.pair(i, j)) + 1.0;
        sum += std::log((joint / D) / ((ci / D) * (cj / D)));
        ++pairs;
      }
    }
    const double score = pairs > 0 ? sum / static_cast<double>(pairs) : std::nan("");
    report.per_topic.push_back(score);
    if (pairs > 0) {
      total += score;
      ++scored_topics;
    }
  }
  report.mean = scored_topics > 0 ? total / static_cast<double>(scored_topics) : std::nan("");
  return report;
}

CoherenceReport pmi_coherence(const TrainedModel& model, const Corpus& reference, int t) {
  if (reference.vocab_size() != model.phi.cols()) {
    throw std::invalid_argument("reference corpus must be tokenized against the model vocabulary");
  }
  return pmi_coherence(model.phi, reference.docs, t);
}

ClassScores macro_scores(std::span<const int> pred, std::span<const int> gold) {
  check_lengths(pred, gold);
  std::map<int, double> tp, predicted, actual;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    predicted[pred[i]] += 1;
    actual[gold[i]] += 1;
    if (pred[i] == gold[i]) tp[gold[i]] += 1;
  }
  ClassScores out;
  for (const auto& [label, n_actual] : actual) {
    PrfScores c;
    const double hits = tp.contains(label) ? tp.at(label) : 0.0;
    const double n_pred = predicted.contains(label) ? predicted.at(label) : 0.0;
    c.precision = n_pred > 0 ? hits / n_pred : 0.0;
    c.recall = hits / n_actual;
    c.f1 = c.precision + c.recall > 0
               ? 2 * c.precision * c.recall / (c.precision + c.recall)
               : 0.0;
    out.macro.precision += c.precision;
    out.macro.recall += c.recall;
    out.macro.f1 += c.f1;
    out.per_class.emplace(label, c);
  }
  const double n = static_cast<double>(actual.size());
  out.macro.precision /= n;
  out.macro.recall /= n;
  out.macro.f1 /= n;
  return out;
}

EvalReport classify_eval(const Matrix& theta, const GoldLabels& gold, std::uint64_t split_seed,
                         double train_frac, int k_neighbors) {
  if (!(train_frac > 0 && train_frac < 1)) {
    throw std::invalid_argument("train fraction must be in (0, 1)");
  }
  if (k_neighbors < 1) throw std::invalid_argument("k must be >= 1");
  if (gold.labels.size() != theta.rows()) {
    throw DataError("label count does not match theta rows");
  }
  const std::size_t L = gold.num_labels();
  if (theta.rows() < 2 * L) throw DataError("need at least two documents per class");

  std::vector<std::vector<std::size_t>> by_class(L);
  for (std::size_t d = 0; d < gold.labels.size(); ++d) {
    by_class[static_cast<std::size_t>(gold.labels[d])].push_back(d);
  }
  RngStream rng(split_seed);
  std::vector<std::size_t> train_idx, test_idx;
  for (std::size_t c = 0; c < L; ++c) {
    auto& members = by_class[c];
    if (members.size() < 2) {
      throw DataError("class '" + gold.label_names[c] + "' has fewer than 2 documents");
    }
    for (std::size_t i = members.size() - 1; i > 0; --i) {
      std::swap(members[i], members[rng.uniform_index(i + 1)]);
    }
    auto n_train = static_cast<std::size_t>(
        std::llround(train_frac * static_cast<double>(members.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);
    train_idx.insert(train_idx.end(), members.begin(),
                     members.begin() + static_cast<std::ptrdiff_t>(n_train));
    test_idx.insert(test_idx.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train),
                    members.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  auto gather = [&](const std::vector<std::size_t>& idx) {
    Matrix m(idx.size(), theta.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      std::copy_n(theta.row(idx[r]).begin(), theta.cols(), m.row(r).begin());
    }
    return m;
  };
  std::vector<int> train_labels, test_labels;
  for (auto d : train_idx) train_labels.push_back(gold.labels[d]);
  for (auto d : test_idx) test_labels.push_back(gold.labels[d]);

  const auto pred = kernels::parallel::knn_predict(gather(train_idx), train_labels,
                                                   gather(test_idx), k_neighbors, L);
  const auto scores = macro_scores(pred, test_labels);

  EvalReport report;
  report.metrics["precision"] = scores.macro.precision;
  report.metrics["recall"] = scores.macro.recall;
  report.metrics["f1"] = scores.macro.f1;
  report.details["train_size"] = std::to_string(train_idx.size());
  report.details["test_size"] = std::to_string(test_idx.size());
  return report;
}

}  // namespace shortopic
