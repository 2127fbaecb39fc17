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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/dmm.hpp"
#include "shortopic/sampling.hpp"

namespace shortopic {

inline constexpr double kDefaultEpsilon = 0.5;
inline constexpr double kDefaultMu = 0.1;

// Embedding neighbours of each vocabulary word: (neighbour id, promotion
// weight) pairs, sorted by id. Symmetric, no self pairs.
struct SimilarityTable {
  std::vector<std::vector<std::pair<int, double>>> neighbors;
  double epsilon = kDefaultEpsilon;
  double mu = kDefaultMu;

  std::size_t num_pairs() const;
  bool empty() const { return num_pairs() == 0; }
};

// Pairs of covered words with cosine similarity > epsilon, each weighted mu.
// epsilon >= 1 yields an empty table. Errors: std::invalid_argument for
// epsilon <= 0 or mu <= 0; DataError when no vocabulary word is covered.
SimilarityTable build_similarity_table(const WordEmbeddings& emb, std::size_t vocab_size,
                                       double epsilon, double mu);

// Promoted counts are kept in fixed point with this many fractional bits so
// that removing a document subtracts exactly what adding it contributed.
inline constexpr int kPromotionFractionBits = 30;

// DMM whose counts go through a generalized Polya urn: assigning a document
// to topic k adds 1 to n_kw for each of its tokens and mu for each
// embedding neighbour of that token.
class GpuDmmSampler {
 public:
  // `corpus` and `table` must outlive the sampler.
  GpuDmmSampler(const Corpus& corpus, const SimilarityTable& table, const ModelParams& params);

  void sweep();
  std::optional<std::string> check() const;
  TrainedModel finish() const;

  std::span<const double> m_k() const { return m_k_; }
  // Real-valued views of the promoted counts.
  const Matrix& n_kw() const { return n_kw_; }
  std::span<const double> n_k() const { return n_k_; }
  std::span<const int> z() const { return z_; }

 private:
  struct Promotion {
    std::vector<std::pair<int, std::int64_t>> amounts;  // per word, fixed point
    std::int64_t total = 0;
  };

  void apply(std::size_t d, std::size_t k, int sign);

  const Corpus* corpus_;
  ModelParams params_;
  RngStream rng_;
  std::vector<std::vector<WordCount>> doc_words_;
  std::vector<Promotion> promotions_;
  std::vector<std::int64_t> fixed_n_kw_;
  std::vector<std::int64_t> fixed_n_k_;
  std::vector<double> m_k_;
  Matrix n_kw_;
  std::vector<double> n_k_;
  std::vector<int> z_;
  Matrix posterior_;
  int sweeps_ = 0;
};

// Uses params.extras["epsilon"] (default 0.5) and ["mu"] (default 0.1).
TrainedModel gpudmm_train(const Corpus& corpus, const WordEmbeddings& emb,
                          const ModelParams& params, const SweepObserver& observer = {});
TrainedModel gpudmm_train(const Corpus& corpus, const SimilarityTable& table,
                          const ModelParams& params, const SweepObserver& observer = {});

}  // namespace shortopic
