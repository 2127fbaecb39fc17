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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/sampling.hpp"

namespace shortopic {

// Window value meaning "the whole document is one window".
inline constexpr std::size_t kWholeDocument = 0;

// Unordered word pair from one document, stored with w1 <= w2.
struct Biterm {
  int w1;
  int w2;
  int doc;

  bool operator==(const Biterm&) const = default;
};

// All position pairs (i, j), i < j, j - i < window within each document.
// Identical-word pairs are kept. Throws std::invalid_argument for window 1.
std::vector<Biterm> extract_biterms(const Corpus& corpus, std::size_t window);
void append_biterms(const Document& doc, int doc_id, std::size_t window,
                    std::vector<Biterm>& out);

// With the biterm removed from the counts:
//   out[k] = (nb_k + alpha) (n_kw1 + beta) (n_kw2 + beta) / (2 nb_k + V beta)^2.
void btm_conditional(std::span<const double> nb_k, const Matrix& n_kw, const Biterm& b,
                     const ModelParams& params, std::span<double> out);
std::vector<double> btm_conditional(std::span<const double> nb_k, const Matrix& n_kw,
                                    const Biterm& b, const ModelParams& params);

class BtmSampler {
 public:
  // Uses params.extras["window"] (default: whole document).
  BtmSampler(const Corpus& corpus, const ModelParams& params);

  void sweep();
  std::optional<std::string> check() const;
  TrainedModel finish() const;

  std::span<const Biterm> biterms() const { return biterms_; }
  std::span<const double> nb_k() const { return nb_k_; }
  const Matrix& n_kw() const { return n_kw_; }
  std::span<const int> z() const { return z_; }

 private:
  void add_biterm(std::size_t b, std::size_t k, double sign);

  const Corpus* corpus_;
  ModelParams params_;
  std::size_t window_;
  RngStream rng_;
  std::vector<Biterm> biterms_;
  std::vector<double> nb_k_;
  Matrix n_kw_;
  std::vector<int> z_;
  std::vector<double> weights_;
};

// Document topics from trained BTM quantities (see kernels::btm_doc_topics).
Matrix btm_doc_topics(std::span<const Document> docs, std::span<const double> topic_weights,
                      const Matrix& phi, std::size_t window);

// Errors: DataError when the corpus yields no biterms and no single-token
// documents.
TrainedModel btm_train(const Corpus& corpus, const ModelParams& params,
                       const SweepObserver& observer = {});

std::size_t window_from_params(const ModelParams& params, std::size_t fallback);

}  // namespace shortopic
