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

#include "shortopic/wntm.hpp"

#include <algorithm>
#include <stdexcept>

#include "shortopic/btm.hpp"
#include "shortopic/error.hpp"
#include "shortopic/kernels.hpp"
#include "shortopic/lda.hpp"

namespace shortopic {

std::size_t WordNetwork::total_length() const {
  std::size_t n = 0;
  for (const auto& d : pseudo_docs) n += d.size();
  return n;
}

WordNetwork build_word_network(const Corpus& corpus, std::size_t window) {
  if (window == 1) throw std::invalid_argument("window must be >= 2");
  WordNetwork net;
  net.pseudo_docs.resize(corpus.vocab_size());
  for (const auto& doc : corpus.docs) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      for (std::size_t j = i + 1; j < doc.size(); ++j) {
        if (window != kWholeDocument && j - i >= window) break;
        net.pseudo_docs[static_cast<std::size_t>(doc[i])].push_back(doc[j]);
        net.pseudo_docs[static_cast<std::size_t>(doc[j])].push_back(doc[i]);
      }
    }
  }
  return net;
}

Matrix wntm_doc_topics(const Matrix& p_k_given_w, std::span<const Document> docs) {
  return kernels::parallel::mean_word_posteriors(docs, p_k_given_w);
}

TrainedModel wntm_train(const Corpus& corpus, const ModelParams& params,
                        const SweepObserver& observer) {
  params.validate();
  const std::size_t window = window_from_params(params, kDefaultWntmWindow);
  auto network = build_word_network(corpus, window);
  if (network.total_length() == 0) throw DataError("no co-occurring word pairs; word network is empty");

  LdaSampler sampler(network.pseudo_docs, corpus.vocab_size(), params);
  for (int it = 0; it < params.niters; ++it) {
    sampler.sweep();
    if (observer) observer(it, sampler.check());
  }
  const auto& counts = sampler.counts();
  const Matrix p_k_given_w = smoothed_rows(counts.n_dk, counts.n_d, params.alpha);

  std::vector<double> freq(corpus.vocab_size(), 0.0);
  for (const auto& doc : corpus.docs) {
    for (int w : doc) freq[static_cast<std::size_t>(w)] += 1;
  }

  const auto K = static_cast<std::size_t>(params.num_topics);
  TrainedModel model;
  model.kind = ModelKind::kWntm;
  model.params = params;
  model.params.extras["window"] = static_cast<double>(window);
  model.vocab = corpus.vocab;
  model.phi = Matrix(K, corpus.vocab_size());
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t w = 0; w < corpus.vocab_size(); ++w) {
      model.phi(k, w) = p_k_given_w(w, k) * freq[w];
    }
  }
  normalize_rows(model.phi);
  model.theta = wntm_doc_topics(p_k_given_w, corpus.docs);

  // Each real token is reported with its word's most probable topic.
  for (const auto& doc : corpus.docs) {
    auto& line = model.assignments.emplace_back();
    for (int w : doc) {
      auto row = p_k_given_w.row(static_cast<std::size_t>(w));
      line.push_back(static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin()));
    }
  }
  return model;
}

}  // namespace shortopic
