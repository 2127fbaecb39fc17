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

#include "shortopic/gpudmm.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "shortopic/error.hpp"
#include "shortopic/kernels.hpp"

namespace shortopic {
namespace {

constexpr double kFixedScale = 0x1.0p30;
static_assert(kPromotionFractionBits == 30);

double to_real(std::int64_t fixed) { return static_cast<double>(fixed) / kFixedScale; }

}  // namespace

std::size_t SimilarityTable::num_pairs() const {
  std::size_t n = 0;
  for (const auto& row : neighbors) n += row.size();
  return n / 2;
}

SimilarityTable build_similarity_table(const WordEmbeddings& emb, std::size_t vocab_size,
                                       double epsilon, double mu) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(mu > 0)) throw std::invalid_argument("mu must be > 0");
  if (emb.vectors.empty()) throw DataError("embeddings cover no vocabulary words");

  SimilarityTable table;
  table.epsilon = epsilon;
  table.mu = mu;
  table.neighbors.resize(vocab_size);
  if (epsilon >= 1.0) return table;

  // Unit-normalize covered vectors; zero vectors have no neighbours.
  std::vector<int> ids;
  Matrix unit(emb.vectors.size(), emb.dim);
  for (const auto& [id, vec] : emb.vectors) {
    const std::size_t r = ids.size();
    ids.push_back(id);
    double norm = 0.0;
    for (double v : vec) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (std::size_t e = 0; e < emb.dim; ++e) unit(r, e) = vec[e] / norm;
  }
  auto rows = kernels::parallel::cosine_neighbors(unit, epsilon);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto& out = table.neighbors[static_cast<std::size_t>(ids[r])];
    for (int j : rows[r]) out.emplace_back(ids[static_cast<std::size_t>(j)], mu);
  }
  return table;
}

GpuDmmSampler::GpuDmmSampler(const Corpus& corpus, const SimilarityTable& table,
                             const ModelParams& params)
    : corpus_(&corpus),
      params_(params),
      rng_(params.seed),
      fixed_n_kw_(static_cast<std::size_t>(params.num_topics) * corpus.vocab_size(), 0),
      fixed_n_k_(static_cast<std::size_t>(params.num_topics), 0),
      m_k_(static_cast<std::size_t>(params.num_topics), 0.0),
      n_kw_(static_cast<std::size_t>(params.num_topics), corpus.vocab_size()),
      n_k_(static_cast<std::size_t>(params.num_topics), 0.0),
      z_(corpus.num_docs()),
      posterior_(corpus.num_docs(), static_cast<std::size_t>(params.num_topics)) {
  if (table.neighbors.size() != corpus.vocab_size()) {
    throw std::invalid_argument("similarity table does not match the corpus vocabulary");
  }
  const auto one = static_cast<std::int64_t>(kFixedScale);
  const auto promoted = static_cast<std::int64_t>(std::llround(table.mu * kFixedScale));
  doc_words_.reserve(corpus.num_docs());
  promotions_.reserve(corpus.num_docs());
  for (const auto& doc : corpus.docs) {
    doc_words_.push_back(count_words(doc));
    std::map<int, std::int64_t> amounts;
    for (int w : doc) {
      amounts[w] += one;
      for (const auto& nb : table.neighbors[static_cast<std::size_t>(w)]) {
        amounts[nb.first] += promoted;
      }
    }
    Promotion rec;
    for (const auto& [w, a] : amounts) {
      if (a == 0) continue;
      rec.amounts.emplace_back(w, a);
      rec.total += a;
    }
    promotions_.push_back(std::move(rec));
  }
  const auto K = static_cast<std::size_t>(params.num_topics);
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    auto k = rng_.uniform_index(K);
    z_[d] = static_cast<int>(k);
    apply(d, k, 1);
  }
}

void GpuDmmSampler::apply(std::size_t d, std::size_t k, int sign) {
  const std::size_t V = n_kw_.cols();
  m_k_[k] += sign;
  for (const auto& [w, a] : promotions_[d].amounts) {
    auto& cell = fixed_n_kw_[k * V + static_cast<std::size_t>(w)];
    cell += sign * a;
    n_kw_(k, static_cast<std::size_t>(w)) = to_real(cell);
  }
  fixed_n_k_[k] += sign * promotions_[d].total;
  n_k_[k] = to_real(fixed_n_k_[k]);
}

void GpuDmmSampler::sweep() {
  for (std::size_t d = 0; d < corpus_->num_docs(); ++d) {
    apply(d, static_cast<std::size_t>(z_[d]), -1);
    auto weights = posterior_.row(d);
    dmm_conditional(m_k_, n_kw_, n_k_, doc_words_[d], corpus_->docs[d].size(), params_, weights);
    auto k = sample_discrete(weights, rng_);
    z_[d] = static_cast<int>(k);
    apply(d, k, 1);
  }
  ++sweeps_;
}

std::optional<std::string> GpuDmmSampler::check() const {
  if (auto v = check_topic_word(n_kw_, n_k_, false, 1e-9)) return v;
  const std::size_t V = n_kw_.cols();
  for (std::size_t k = 0; k < fixed_n_k_.size(); ++k) {
    std::int64_t sum = 0;
    for (std::size_t w = 0; w < V; ++w) sum += fixed_n_kw_[k * V + w];
    if (sum != fixed_n_k_[k]) {
      return "topic " + std::to_string(k) + ": promoted counts do not add up to n_k";
    }
  }
  double docs = 0;
  for (double m : m_k_) {
    if (m < 0) return "negative document count";
    docs += m;
  }
  if (docs != static_cast<double>(corpus_->num_docs())) {
    std::ostringstream os;
    os << "sum of m_k " << docs << " != D " << corpus_->num_docs();
    return os.str();
  }
  return std::nullopt;
}

TrainedModel GpuDmmSampler::finish() const {
  if (sweeps_ == 0) throw std::logic_error("GpuDmmSampler::finish called before any sweep");
  TrainedModel model;
  model.kind = ModelKind::kGpuDmm;
  model.params = params_;
  model.vocab = corpus_->vocab;
  model.theta = posterior_;
  normalize_rows(model.theta);
  model.phi = smoothed_rows(n_kw_, n_k_, params_.beta);
  model.topic_weights = mixture_weights(m_k_, params_.alpha);
  for (int k : z_) model.assignments.push_back({k});
  return model;
}

TrainedModel gpudmm_train(const Corpus& corpus, const SimilarityTable& table,
                          const ModelParams& params, const SweepObserver& observer) {
  params.validate();
  if (corpus.total_tokens == 0) throw DataError("corpus has no tokens");
  GpuDmmSampler sampler(corpus, table, params);
  for (int it = 0; it < params.niters; ++it) {
    sampler.sweep();
    if (observer) observer(it, sampler.check());
  }
  auto model = sampler.finish();
  model.params.extras["epsilon"] = table.epsilon;
  model.params.extras["mu"] = table.mu;
  return model;
}

TrainedModel gpudmm_train(const Corpus& corpus, const WordEmbeddings& emb,
                          const ModelParams& params, const SweepObserver& observer) {
  params.validate();
  auto table = build_similarity_table(emb, corpus.vocab_size(),
                                      params.extra("epsilon", kDefaultEpsilon),
                                      params.extra("mu", kDefaultMu));
  return gpudmm_train(corpus, table, params, observer);
}

}  // namespace shortopic
