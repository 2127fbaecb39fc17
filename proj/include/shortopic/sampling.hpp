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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/matrix.hpp"
#include "shortopic/rng.hpp"

namespace shortopic {

enum class ModelKind { kLda, kDmm, kBtm, kWntm, kPtm, kGpuDmm };

std::string_view model_name(ModelKind kind);
// Accepts the CLI spellings LDA, DMM, BTM, WNTM, PTM, GPUDMM.
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct ModelParams {
  int num_topics = 20;
  double alpha = 0.1;
  double beta = 0.01;
  int niters = 1000;
  int twords = 20;
  std::uint64_t seed = 1;
  // Model-specific settings: window, P, lambda, epsilon, mu.
  std::map<std::string, double> extras;

  double extra(const std::string& key, double fallback) const;
  // Throws std::invalid_argument on K < 1, alpha <= 0, beta <= 0, niters < 1
  // or twords < 1.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

struct TrainedModel {
  ModelKind kind = ModelKind::kLda;
  ModelParams params;
  Matrix theta;  // D x K
  Matrix phi;    // K x V
  Vocabulary vocab;
  // Corpus-level topic proportions used by fold-in: the document mixture
  // weights for DMM/GPU-DMM and the biterm topic proportions for BTM.
  std::vector<double> topic_weights;
  // Per-document sampling-unit topics (tokens, biterms, or one per document).
  std::vector<std::vector<int>> assignments;
  // Input files the model was trained from (corpus, vectors).
  std::map<std::string, std::string> sources;
};

// Collapsed Gibbs sufficient statistics for token-level models. Stored as
// doubles; for every model except GPU-DMM the values are integral.
struct CountState {
  Matrix n_dk;
  std::vector<double> n_d;
  Matrix n_kw;
  std::vector<double> n_k;
  std::vector<std::vector<int>> z;

  CountState() = default;
  CountState(std::size_t docs, std::size_t topics, std::size_t vocab)
      : n_dk(docs, topics), n_d(docs, 0.0), n_kw(topics, vocab), n_k(topics, 0.0), z(docs) {}
};

// Called after each Gibbs sweep with the sweep index (0-based) and the
// sampler's consistency check result (nullopt when all invariants hold).
using SweepObserver =
    std::function<void(int sweep, const std::optional<std::string>& violation)>;

// Draws index i with probability weights[i] / sum(weights) using exactly one
// uniform draw. Throws std::invalid_argument if any weight is negative or
// NaN, or all weights are zero.
std::size_t sample_discrete(std::span<const double> weights, RngStream& rng);

// Returns the first violated invariant of the count tables: row sums of n_kw
// against n_k, row sums of n_dk against n_d, non-negativity, and (when
// `integral`) integrality.
std::optional<std::string> check_counts(const CountState& counts, bool integral = true);
std::optional<std::string> check_topic_word(const Matrix& n_kw, std::span<const double> n_k,
                                            bool integral, double tolerance = 1e-9);

// Smoothed posterior means (n + prior) / (total + dim * prior), row by row.
Matrix smoothed_rows(const Matrix& counts, std::span<const double> totals, double prior);

// theta[d][k] = (n_dk + alpha) / (n_d + K alpha); phi[k][w] = (n_kw + beta) / (n_k + V beta).
std::pair<Matrix, Matrix> point_estimates(const CountState& counts, const ModelParams& params);

// Per topic the min(t, V) most probable word ids; ties go to the smaller id.
std::vector<std::vector<int>> top_word_ids(const Matrix& phi, int t);
std::vector<std::vector<std::string>> top_words(const Matrix& phi, const Vocabulary& vocab, int t);

// Divides each row by its sum.
void normalize_rows(Matrix& m);
// Turns log weights into weights scaled so the largest is 1.
void exp_normalize_max(std::span<double> log_weights);

}  // namespace shortopic
