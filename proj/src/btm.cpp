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

#include "shortopic/btm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "shortopic/error.hpp"
#include "shortopic/kernels.hpp"

namespace shortopic {

std::size_t window_from_params(const ModelParams& params, std::size_t fallback) {
  double w = params.extra("window", static_cast<double>(fallback));
  if (w < 0 || w != std::floor(w)) throw std::invalid_argument("window must be a whole number");
  if (w == 1) throw std::invalid_argument("window must be >= 2 (or 0 for whole document)");
  return static_cast<std::size_t>(w);
}

void append_biterms(const Document& doc, int doc_id, std::size_t window,
                    std::vector<Biterm>& out) {
  if (window == 1) throw std::invalid_argument("window must be >= 2");
  for (std::size_t i = 0; i < doc.size(); ++i) {
    for (std::size_t j = i + 1; j < doc.size(); ++j) {
      if (window != kWholeDocument && j - i >= window) break;
      out.push_back({std::min(doc[i], doc[j]), std::max(doc[i], doc[j]), doc_id});
    }
  }
}

std::vector<Biterm> extract_biterms(const Corpus& corpus, std::size_t window) {
  std::vector<Biterm> out;
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    append_biterms(corpus.docs[d], static_cast<int>(d), window, out);
  }
  return out;
}

void btm_conditional(std::span<const double> nb_k, const Matrix& n_kw, const Biterm& b,
                     const ModelParams& params, std::span<double> out) {
  const double vbeta = static_cast<double>(n_kw.cols()) * params.beta;
  const auto w1 = static_cast<std::size_t>(b.w1);
  const auto w2 = static_cast<std::size_t>(b.w2);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double denom = 2 * nb_k[k] + vbeta;
    const double words = (n_kw(k, w1) + params.beta) * (n_kw(k, w2) + params.beta);
    out[k] = (nb_k[k] + params.alpha) * words / (denom * denom);
  }
}

std::vector<double> btm_conditional(std::span<const double> nb_k, const Matrix& n_kw,
                                    const Biterm& b, const ModelParams& params) {
  std::vector<double> out(nb_k.size());
  btm_conditional(nb_k, n_kw, b, params, out);
  return out;
}

BtmSampler::BtmSampler(const Corpus& corpus, const ModelParams& params)
    : corpus_(&corpus),
      params_(params),
      window_(window_from_params(params, kWholeDocument)),
      rng_(params.seed),
      biterms_(extract_biterms(corpus, window_)),
      nb_k_(static_cast<std::size_t>(params.num_topics), 0.0),
      n_kw_(static_cast<std::size_t>(params.num_topics), corpus.vocab_size()),
      z_(biterms_.size()),
      weights_(static_cast<std::size_t>(params.num_topics)) {
  params_.extras["window"] = static_cast<double>(window_);
  const auto K = static_cast<std::size_t>(params.num_topics);
  for (std::size_t b = 0; b < biterms_.size(); ++b) {
    auto k = rng_.uniform_index(K);
    z_[b] = static_cast<int>(k);
    add_biterm(b, k, 1.0);
  }
}

void BtmSampler::add_biterm(std::size_t b, std::size_t k, double sign) {
  nb_k_[k] += sign;
  n_kw_(k, static_cast<std::size_t>(biterms_[b].w1)) += sign;
  n_kw_(k, static_cast<std::size_t>(biterms_[b].w2)) += sign;
}

void BtmSampler::sweep() {
  for (std::size_t b = 0; b < biterms_.size(); ++b) {
    add_biterm(b, static_cast<std::size_t>(z_[b]), -1.0);
    btm_conditional(nb_k_, n_kw_, biterms_[b], params_, weights_);
    auto k = sample_discrete(weights_, rng_);
    z_[b] = static_cast<int>(k);
    add_biterm(b, k, 1.0);
  }
}

std::optional<std::string> BtmSampler::check() const {
  std::vector<double> slots(nb_k_.size());
  for (std::size_t k = 0; k < nb_k_.size(); ++k) slots[k] = 2 * nb_k_[k];
  if (auto v = check_topic_word(n_kw_, slots, true)) return v;
  double total = 0;
  for (std::size_t k = 0; k < nb_k_.size(); ++k) {
    if (nb_k_[k] < 0) return "negative biterm count nb_k[" + std::to_string(k) + "]";
    total += nb_k_[k];
  }
  if (total != static_cast<double>(biterms_.size())) {
    std::ostringstream os;
    os << "sum of nb_k " << total << " != |B| " << biterms_.size();
    return os.str();
  }
  return std::nullopt;
}

TrainedModel BtmSampler::finish() const {
  TrainedModel model;
  model.kind = ModelKind::kBtm;
  model.params = params_;
  model.vocab = corpus_->vocab;
  std::vector<double> slots(nb_k_.size());
  for (std::size_t k = 0; k < nb_k_.size(); ++k) slots[k] = 2 * nb_k_[k];
  model.phi = smoothed_rows(n_kw_, slots, params_.beta);
  model.topic_weights = std::vector<double>(nb_k_.size());
  const double denom = static_cast<double>(biterms_.size()) +
                       static_cast<double>(nb_k_.size()) * params_.alpha;
  for (std::size_t k = 0; k < nb_k_.size(); ++k) {
    model.topic_weights[k] = (nb_k_[k] + params_.alpha) / denom;
  }
  model.theta = btm_doc_topics(corpus_->docs, model.topic_weights, model.phi, window_);
  model.assignments.resize(corpus_->num_docs());
  for (std::size_t b = 0; b < biterms_.size(); ++b) {
    model.assignments[static_cast<std::size_t>(biterms_[b].doc)].push_back(z_[b]);
  }
  return model;
}

Matrix btm_doc_topics(std::span<const Document> docs, std::span<const double> topic_weights,
                      const Matrix& phi, std::size_t window) {
  return kernels::parallel::btm_doc_topics(docs, topic_weights, phi, window);
}

TrainedModel btm_train(const Corpus& corpus, const ModelParams& params,
                       const SweepObserver& observer) {
  params.validate();
  if (corpus.total_tokens == 0) throw DataError("corpus has no tokens");
  BtmSampler sampler(corpus, params);
  for (int it = 0; it < params.niters; ++it) {
    sampler.sweep();
    if (observer) observer(it, sampler.check());
  }
  return sampler.finish();
}

}  // namespace shortopic
