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

#include "shortopic/lda.hpp"

#include "shortopic/error.hpp"

namespace shortopic {

void token_conditional(std::span<const double> doc_topic, const Matrix& n_kw,
                       std::span<const double> n_k, int w, double alpha, double beta,
                       std::span<double> out) {
  const double vbeta = static_cast<double>(n_kw.cols()) * beta;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = (doc_topic[k] + alpha) * (n_kw(k, static_cast<std::size_t>(w)) + beta) /
             (n_k[k] + vbeta);
  }
}

std::vector<double> lda_conditional(const CountState& counts, std::size_t d, int w,
                                    const ModelParams& params) {
  std::vector<double> out(counts.n_k.size());
  token_conditional(counts.n_dk.row(d), counts.n_kw, counts.n_k, w, params.alpha, params.beta,
                    out);
  return out;
}

LdaSampler::LdaSampler(std::span<const Document> docs, std::size_t vocab_size,
                       const ModelParams& params)
    : docs_(docs),
      params_(params),
      rng_(params.seed),
      counts_(docs.size(), static_cast<std::size_t>(params.num_topics), vocab_size),
      weights_(static_cast<std::size_t>(params.num_topics)) {
  const auto K = static_cast<std::size_t>(params.num_topics);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    auto& zd = counts_.z[d];
    zd.resize(docs_[d].size());
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      auto k = rng_.uniform_index(K);
      auto w = static_cast<std::size_t>(docs_[d][i]);
      zd[i] = static_cast<int>(k);
      counts_.n_dk(d, k) += 1;
      counts_.n_kw(k, w) += 1;
      counts_.n_k[k] += 1;
    }
    counts_.n_d[d] = static_cast<double>(docs_[d].size());
  }
}

void LdaSampler::sweep() {
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& doc = docs_[d];
    auto& zd = counts_.z[d];
    auto doc_topic = counts_.n_dk.row(d);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto w = static_cast<std::size_t>(doc[i]);
      auto k = static_cast<std::size_t>(zd[i]);
      doc_topic[k] -= 1;
      counts_.n_kw(k, w) -= 1;
      counts_.n_k[k] -= 1;

      token_conditional(doc_topic, counts_.n_kw, counts_.n_k, doc[i], params_.alpha,
                        params_.beta, weights_);
      k = sample_discrete(weights_, rng_);

      zd[i] = static_cast<int>(k);
      doc_topic[k] += 1;
      counts_.n_kw(k, w) += 1;
      counts_.n_k[k] += 1;
    }
  }
}

TrainedModel lda_train(const Corpus& corpus, const ModelParams& params,
                       const SweepObserver& observer) {
  params.validate();
  if (corpus.total_tokens == 0) throw DataError("corpus has no tokens");
  LdaSampler sampler(corpus.docs, corpus.vocab_size(), params);
  for (int it = 0; it < params.niters; ++it) {
    sampler.sweep();
    if (observer) observer(it, sampler.check());
  }
  TrainedModel model;
  model.kind = ModelKind::kLda;
  model.params = params;
  model.vocab = corpus.vocab;
  std::tie(model.theta, model.phi) = point_estimates(sampler.counts(), params);
  model.assignments = sampler.counts().z;
  return model;
}

}  // namespace shortopic
