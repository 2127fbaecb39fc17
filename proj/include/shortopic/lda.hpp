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

// Unnormalized collapsed-Gibbs weights for one token of word `w` whose
// document-side topic counts are `doc_topic`:
//   out[k] = (doc_topic[k] + alpha) * (n_kw[k][w] + beta) / (n_k[k] + V beta).
// Shared by LDA, WNTM (on pseudo-documents) and PTM (on pseudo-documents).
void token_conditional(std::span<const double> doc_topic, const Matrix& n_kw,
                       std::span<const double> n_k, int w, double alpha, double beta,
                       std::span<double> out);

// The token being resampled must already be removed from `counts`.
std::vector<double> lda_conditional(const CountState& counts, std::size_t d, int w,
                                    const ModelParams& params);

// Collapsed Gibbs sampler over an arbitrary document collection. Tokens are
// visited in document-then-position order every sweep.
class LdaSampler {
 public:
  // Initializes every token's topic uniformly from the seeded stream.
  // `docs` must outlive the sampler.
  LdaSampler(std::span<const Document> docs, std::size_t vocab_size, const ModelParams& params);

  void sweep();
  const CountState& counts() const { return counts_; }
  std::optional<std::string> check() const { return check_counts(counts_); }

 private:
  std::span<const Document> docs_;
  ModelParams params_;
  RngStream rng_;
  CountState counts_;
  std::vector<double> weights_;
};

// Errors: DataError when the corpus has no tokens; std::invalid_argument for
// invalid parameters.
TrainedModel lda_train(const Corpus& corpus, const ModelParams& params,
                       const SweepObserver& observer = {});

}  // namespace shortopic
