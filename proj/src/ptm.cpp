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

#include "shortopic/ptm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "shortopic/error.hpp"
#include "shortopic/lda.hpp"

namespace shortopic {

void ptm_doc_conditional(const PtmState& state, std::span<const int> doc_topics,
                         const ModelParams& params, double lambda, std::span<double> out) {
  const std::size_t P = out.size();
  const std::size_t K = state.n_pk.cols();
  const double kalpha = static_cast<double>(K) * params.alpha;
  if (doc_topics.empty()) {
    for (std::size_t p = 0; p < P; ++p) out[p] = state.m_p[p] + lambda;
    return;
  }
  if (doc_topics.size() == 1) {
    const auto k = static_cast<std::size_t>(doc_topics[0]);
    for (std::size_t p = 0; p < P; ++p) {
      out[p] = (state.m_p[p] + lambda) * (state.n_pk(p, k) + params.alpha) /
               (state.n_p[p] + kalpha);
    }
    return;
  }
  std::vector<int> inc(K, 0);
  for (std::size_t p = 0; p < P; ++p) {
    std::fill(inc.begin(), inc.end(), 0);
    double lw = std::log(state.m_p[p] + lambda);
    for (std::size_t i = 0; i < doc_topics.size(); ++i) {
      const auto k = static_cast<std::size_t>(doc_topics[i]);
      lw += std::log(state.n_pk(p, k) + params.alpha + inc[k]);
      lw -= std::log(state.n_p[p] + kalpha + static_cast<double>(i));
      ++inc[k];
    }
    out[p] = lw;
  }
  exp_normalize_max(out);
}

void ptm_word_conditional(const PtmState& state, std::size_t p, int w,
                          const ModelParams& params, std::span<double> out) {
  token_conditional(state.n_pk.row(p), state.n_kw, state.n_k, w, params.alpha, params.beta, out);
}

namespace {

std::size_t pseudo_doc_count(const ModelParams& params, std::size_t num_docs) {
  const double fallback = std::ceil(static_cast<double>(num_docs) / 10.0);
  const double P = params.extra("P", std::max(1.0, fallback));
  if (P < 1 || P != std::floor(P)) throw std::invalid_argument("P must be a whole number >= 1");
  return static_cast<std::size_t>(P);
}

}  // namespace

PtmSampler::PtmSampler(const Corpus& corpus, const ModelParams& params)
    : corpus_(&corpus),
      params_(params),
      lambda_(params.extra("lambda", kDefaultPtmLambda)),
      rng_(params.seed) {
  if (!(lambda_ > 0)) throw std::invalid_argument("lambda must be > 0");
  const std::size_t P = pseudo_doc_count(params, corpus.num_docs());
  const auto K = static_cast<std::size_t>(params.num_topics);
  params_.extras["P"] = static_cast<double>(P);
  params_.extras["lambda"] = lambda_;

  state_.l_d.resize(corpus.num_docs());
  state_.m_p.assign(P, 0.0);
  state_.n_pk = Matrix(P, K);
  state_.n_p.assign(P, 0.0);
  state_.n_kw = Matrix(K, corpus.vocab_size());
  state_.n_k.assign(K, 0.0);
  state_.z.resize(corpus.num_docs());
  weights_.resize(std::max(P, K));

  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    const auto p = rng_.uniform_index(P);
    state_.l_d[d] = static_cast<int>(p);
    const auto& doc = corpus.docs[d];
    state_.z[d].resize(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto k = rng_.uniform_index(K);
      state_.z[d][i] = static_cast<int>(k);
      state_.n_kw(k, static_cast<std::size_t>(doc[i])) += 1;
      state_.n_k[k] += 1;
    }
    move_doc(d, p, 1.0);
  }
}

void PtmSampler::move_doc(std::size_t d, std::size_t p, double sign) {
  state_.m_p[p] += sign;
  for (int k : state_.z[d]) state_.n_pk(p, static_cast<std::size_t>(k)) += sign;
  state_.n_p[p] += sign * static_cast<double>(state_.z[d].size());
}

void PtmSampler::sweep_documents() {
  std::span<double> weights(weights_.data(), state_.m_p.size());
  for (std::size_t d = 0; d < corpus_->num_docs(); ++d) {
    move_doc(d, static_cast<std::size_t>(state_.l_d[d]), -1.0);
    ptm_doc_conditional(state_, state_.z[d], params_, lambda_, weights);
    const auto p = sample_discrete(weights, rng_);
    state_.l_d[d] = static_cast<int>(p);
    move_doc(d, p, 1.0);
  }
}

void PtmSampler::sweep_words() {
  std::span<double> weights(weights_.data(), state_.n_k.size());
  for (std::size_t d = 0; d < corpus_->num_docs(); ++d) {
    const auto p = static_cast<std::size_t>(state_.l_d[d]);
    const auto& doc = corpus_->docs[d];
    auto& zd = state_.z[d];
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto w = static_cast<std::size_t>(doc[i]);
      auto k = static_cast<std::size_t>(zd[i]);
      state_.n_pk(p, k) -= 1;
      state_.n_kw(k, w) -= 1;
      state_.n_k[k] -= 1;

      ptm_word_conditional(state_, p, doc[i], params_, weights);
      k = sample_discrete(weights, rng_);

      zd[i] = static_cast<int>(k);
      state_.n_pk(p, k) += 1;
      state_.n_kw(k, w) += 1;
      state_.n_k[k] += 1;
    }
  }
}

void PtmSampler::sweep() {
  sweep_documents();
  sweep_words();
}

std::optional<std::string> PtmSampler::check() const {
  if (auto v = check_topic_word(state_.n_kw, state_.n_k, true)) return v;
  CountState pseudo;
  pseudo.n_dk = state_.n_pk;
  pseudo.n_d = state_.n_p;
  pseudo.n_kw = Matrix(state_.n_pk.cols(), 0);
  pseudo.n_k.assign(state_.n_pk.cols(), 0.0);
  if (auto v = check_counts(pseudo)) return "pseudo-document counts: " + *v;
  double docs = 0;
  std::vector<double> tokens(state_.m_p.size(), 0.0);
  for (std::size_t p = 0; p < state_.m_p.size(); ++p) {
    if (state_.m_p[p] < 0) return "negative document count m_p[" + std::to_string(p) + "]";
    docs += state_.m_p[p];
  }
  for (std::size_t d = 0; d < state_.l_d.size(); ++d) {
    tokens[static_cast<std::size_t>(state_.l_d[d])] += static_cast<double>(state_.z[d].size());
  }
  if (docs != static_cast<double>(corpus_->num_docs())) {
    std::ostringstream os;
    os << "sum of m_p " << docs << " != D " << corpus_->num_docs();
    return os.str();
  }
  for (std::size_t p = 0; p < tokens.size(); ++p) {
    if (tokens[p] != state_.n_p[p]) {
      return "pseudo-document " + std::to_string(p) + ": n_p disagrees with member documents";
    }
  }
  return std::nullopt;
}

TrainedModel PtmSampler::finish() const {
  const std::size_t K = state_.n_k.size();
  const Matrix psi = smoothed_rows(state_.n_pk, state_.n_p, params_.alpha);
  TrainedModel model;
  model.kind = ModelKind::kPtm;
  model.params = params_;
  model.vocab = corpus_->vocab;
  model.phi = smoothed_rows(state_.n_kw, state_.n_k, params_.beta);
  model.theta = Matrix(corpus_->num_docs(), K);
  std::vector<double> c(K);
  for (std::size_t d = 0; d < corpus_->num_docs(); ++d) {
    std::fill(c.begin(), c.end(), 0.0);
    for (int k : state_.z[d]) c[static_cast<std::size_t>(k)] += 1;
    const auto p = static_cast<std::size_t>(state_.l_d[d]);
    const double denom = static_cast<double>(state_.z[d].size()) + params_.alpha;
    for (std::size_t k = 0; k < K; ++k) {
      model.theta(d, k) = (c[k] + params_.alpha * psi(p, k)) / denom;
    }
  }
  model.assignments = state_.z;
  return model;
}

TrainedModel ptm_train(const Corpus& corpus, const ModelParams& params,
                       const SweepObserver& observer) {
  params.validate();
  if (corpus.total_tokens == 0) throw DataError("corpus has no tokens");
  PtmSampler sampler(corpus, params);
  for (int it = 0; it < params.niters; ++it) {
    sampler.sweep();
    if (observer) observer(it, sampler.check());
  }
  return sampler.finish();
}

}  // namespace shortopic
