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

struct WordCount {
  int word;
  int count;
};

// Distinct words of `doc` with their multiplicities, in first-occurrence order.
std::vector<WordCount> count_words(const Document& doc);

// Unnormalized weights for assigning a whole document to each topic, with
// the document already removed from the counts:
//   (m_k + alpha) * prod_w prod_{j<c_w} (n_kw + beta + j)
//                 / prod_{i<|d|} (n_k + V beta + i).
// Documents of length <= 1 use the direct product. Longer documents are
// accumulated in log space and returned scaled so the largest weight is 1.
// `n_kw` and `n_k` may hold real-valued (promoted) counts.
void dmm_conditional(std::span<const double> m_k, const Matrix& n_kw,
                     std::span<const double> n_k, std::span<const WordCount> doc_words,
                     std::size_t doc_length, const ModelParams& params, std::span<double> out);
std::vector<double> dmm_conditional(std::span<const double> m_k, const Matrix& n_kw,
                                    std::span<const double> n_k, const Document& doc,
                                    const ModelParams& params);

// Dirichlet Multinomial Mixture: one topic per document.
class DmmSampler {
 public:
  // `corpus` must outlive the sampler.
  DmmSampler(const Corpus& corpus, const ModelParams& params);

  void sweep();
  std::optional<std::string> check() const;
  TrainedModel finish() const;

  std::span<const double> m_k() const { return m_k_; }
  const Matrix& n_kw() const { return n_kw_; }
  std::span<const double> n_k() const { return n_k_; }
  std::span<const int> z() const { return z_; }

 private:
  void add_doc(std::size_t d, std::size_t k, double sign);

  const Corpus* corpus_;
  ModelParams params_;
  RngStream rng_;
  std::vector<std::vector<WordCount>> doc_words_;
  std::vector<double> m_k_;
  Matrix n_kw_;
  std::vector<double> n_k_;
  std::vector<int> z_;
  Matrix posterior_;  // normalized conditional from the latest sweep, D x K
  int sweeps_ = 0;
};

TrainedModel dmm_train(const Corpus& corpus, const ModelParams& params,
                       const SweepObserver& observer = {});

// Mixture weights (m_k + alpha) / (D + K alpha).
std::vector<double> mixture_weights(std::span<const double> m_k, double alpha);

}  // namespace shortopic
