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

#include "shortopic/dmm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "shortopic/error.hpp"

namespace shortopic {

std::vector<WordCount> count_words(const Document& doc) {
  std::vector<WordCount> out;
  for (int w : doc) {
    auto it = std::find_if(out.begin(), out.end(), [w](const WordCount& wc) { return wc.word == w; });
    if (it == out.end()) {
      out.push_back({w, 1});
    } else {
      ++it->count;
    }
  }
  return out;
}

void dmm_conditional(std::span<const double> m_k, const Matrix& n_kw,
                     std::span<const double> n_k, std::span<const WordCount> doc_words,
                     std::size_t doc_length, const ModelParams& params, std::span<double> out) {
  const double vbeta = static_cast<double>(n_kw.cols()) * params.beta;
  const std::size_t K = out.size();
  if (doc_length == 0) {
    for (std::size_t k = 0; k < K; ++k) out[k] = m_k[k] + params.alpha;
    return;
  }
  if (doc_length == 1) {
    const auto w = static_cast<std::size_t>(doc_words.front().word);
    for (std::size_t k = 0; k < K; ++k) {
      out[k] = (m_k[k] + params.alpha) * (n_kw(k, w) + params.beta) / (n_k[k] + vbeta);
    }
    return;
  }
  for (std::size_t k = 0; k < K; ++k) {
    double lw = std::log(m_k[k] + params.alpha);
    for (const auto& wc : doc_words) {
      const double base = n_kw(k, static_cast<std::size_t>(wc.word)) + params.beta;
      for (int j = 0; j < wc.count; ++j) lw += std::log(base + j);
    }
    for (std::size_t i = 0; i < doc_length; ++i) {
      lw -= std::log(n_k[k] + vbeta + static_cast<double>(i));
    }
    out[k] = lw;
  }
  exp_normalize_max(out);
}

std::vector<double> dmm_conditional(std::span<const double> m_k, const Matrix& n_kw,
                                    std::span<const double> n_k, const Document& doc,
                                    const ModelParams& params) {
  std::vector<double> out(m_k.size());
  auto words = count_words(doc);
  dmm_conditional(m_k, n_kw, n_k, words, doc.size(), params, out);
  return out;
}

std::vector<double> mixture_weights(std::span<const double> m_k, double alpha) {
  const double total = std::accumulate(m_k.begin(), m_k.end(), 0.0);
  const double denom = total + static_cast<double>(m_k.size()) * alpha;
  std::vector<double> out(m_k.size());
  for (std::size_t k = 0; k < m_k.size(); ++k) out[k] = (m_k[k] + alpha) / denom;
  return out;
}

DmmSampler::DmmSampler(const Corpus& corpus, const ModelParams& params)
    : corpus_(&corpus),
      params_(params),
      rng_(params.seed),
      m_k_(static_cast<std::size_t>(params.num_topics), 0.0),
      n_kw_(static_cast<std::size_t>(params.num_topics), corpus.vocab_size()),
      n_k_(static_cast<std::size_t>(params.num_topics), 0.0),
      z_(corpus.num_docs()),
      posterior_(corpus.num_docs(), static_cast<std::size_t>(params.num_topics)) {
  const auto K = static_cast<std::size_t>(params.num_topics);
  doc_words_.reserve(corpus.num_docs());
  for (const auto& doc : corpus.docs) doc_words_.push_back(count_words(doc));
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    auto k = rng_.uniform_index(K);
    z_[d] = static_cast<int>(k);
    add_doc(d, k, 1.0);
  }
}

void DmmSampler::add_doc(std::size_t d, std::size_t k, double sign) {
  m_k_[k] += sign;
  for (const auto& wc : doc_words_[d]) {
    n_kw_(k, static_cast<std::size_t>(wc.word)) += sign * wc.count;
  }
  n_k_[k] += sign * static_cast<double>(corpus_->docs[d].size());
}

void DmmSampler::sweep() {
  for (std::size_t d = 0; d < corpus_->num_docs(); ++d) {
    add_doc(d, static_cast<std::size_t>(z_[d]), -1.0);
    auto weights = posterior_.row(d);
    dmm_conditional(m_k_, n_kw_, n_k_, doc_words_[d], corpus_->docs[d].size(), params_, weights);
    auto k = sample_discrete(weights, rng_);
    z_[d] = static_cast<int>(k);
    add_doc(d, k, 1.0);
  }
  ++sweeps_;
}

std::optional<std::string> DmmSampler::check() const {
  if (auto v = check_topic_word(n_kw_, n_k_, true)) return v;
  double docs = 0;
  for (std::size_t k = 0; k < m_k_.size(); ++k) {
    if (m_k_[k] < 0) return "negative document count m_k[" + std::to_string(k) + "]";
    docs += m_k_[k];
  }
  if (docs != static_cast<double>(corpus_->num_docs())) {
    std::ostringstream os;
    os << "sum of m_k " << docs << " != D " << corpus_->num_docs();
    return os.str();
  }
  return std::nullopt;
}

TrainedModel DmmSampler::finish() const {
  if (sweeps_ == 0) throw std::logic_error("DmmSampler::finish called before any sweep");
  TrainedModel model;
  model.kind = ModelKind::kDmm;
  model.params = params_;
  model.vocab = corpus_->vocab;
  model.theta = posterior_;
  normalize_rows(model.theta);
  model.phi = smoothed_rows(n_kw_, n_k_, params_.beta);
  model.topic_weights = mixture_weights(m_k_, params_.alpha);
  for (int k : z_) model.assignments.push_back({k});
  return model;
}

TrainedModel dmm_train(const Corpus& corpus, const ModelParams& params,
                       const SweepObserver& observer) {
  params.validate();
  if (corpus.total_tokens == 0) throw DataError("corpus has no tokens");
  DmmSampler sampler(corpus, params);
  for (int it = 0; it < params.niters; ++it) {
    sampler.sweep();
    if (observer) observer(it, sampler.check());
  }
  return sampler.finish();
}

}  // namespace shortopic
