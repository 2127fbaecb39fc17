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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/sampling.hpp"

namespace shortopic {

inline constexpr double kDefaultPtmLambda = 0.1;

// Sufficient statistics of the pseudo-document topic model. Each short text
// d belongs to pseudo-document l_d; topic counts are pooled per
// pseudo-document.
struct PtmState {
  std::vector<int> l_d;
  std::vector<double> m_p;  // documents per pseudo-document
  Matrix n_pk;              // P x K
  std::vector<double> n_p;  // tokens per pseudo-document
  Matrix n_kw;
  std::vector<double> n_k;
  std::vector<std::vector<int>> z;
};

// Weights over pseudo-documents for a document whose tokens carry topics
// `doc_topics`, with the document removed from the pseudo-document counts:
//   (m_p + lambda) prod_i (n_p,z_i + alpha + inc_i) / (n_p + K alpha + i),
// where inc_i counts earlier tokens of the document with topic z_i.
// Documents longer than one token are accumulated in log space and scaled so
// the largest weight is 1.
void ptm_doc_conditional(const PtmState& state, std::span<const int> doc_topics,
                         const ModelParams& params, double lambda, std::span<double> out);

// LDA conditional with pseudo-document p in the document role.
void ptm_word_conditional(const PtmState& state, std::size_t p, int w,
                          const ModelParams& params, std::span<double> out);

class PtmSampler {
 public:
  // Uses params.extras["P"] (default ceil(D / 10)) and ["lambda"] (default 0.1).
  PtmSampler(const Corpus& corpus, const ModelParams& params);

  // Resamples every l_d, then every token topic.
  void sweep();
  void sweep_documents();
  void sweep_words();

  const PtmState& state() const { return state_; }
  std::size_t num_pseudo_docs() const { return state_.m_p.size(); }
  std::optional<std::string> check() const;
  TrainedModel finish() const;

 private:
  void move_doc(std::size_t d, std::size_t p, double sign);

  const Corpus* corpus_;
  ModelParams params_;
  double lambda_;
  RngStream rng_;
  PtmState state_;
  std::vector<double> weights_;
};

// Errors: std::invalid_argument when P < 1; DataError on an empty corpus.
TrainedModel ptm_train(const Corpus& corpus, const ModelParams& params,
                       const SweepObserver& observer = {});

}  // namespace shortopic
