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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/sampling.hpp"

namespace shortopic {

inline constexpr int kDefaultNeighbors = 5;
inline constexpr double kDefaultTrainFraction = 0.8;

struct EvalReport {
  std::map<std::string, double> metrics;
  std::map<std::string, std::string> details;

  double at(const std::string& name) const { return metrics.at(name); }
};

// label[d] = argmax_k theta[d][k]; ties go to the smallest k.
std::vector<int> argmax_assign(const Matrix& theta);

// Both throw std::invalid_argument when lengths differ or are zero.
double purity(std::span<const int> pred, std::span<const int> gold);
// 2 I(pred; gold) / (H(pred) + H(gold)), natural logs. 1 when both
// partitions are trivial, 0 when exactly one is.
double nmi(std::span<const int> pred, std::span<const int> gold);

struct CoherenceReport {
  double mean = 0.0;
  std::vector<double> per_topic;
  std::size_t skipped_pairs = 0;  // pairs with a zero-frequency word
};

// Mean over topics of the mean pairwise PMI of each topic's top-t words:
//   PMI(wi, wj) = log[ ((C(wi,wj) + 1) / D) / ((C(wi) / D) (C(wj) / D)) ]
// with document-frequency counts C from `reference`, whose word ids must
// share phi's vocabulary. Throws std::invalid_argument when t < 2 or the
// reference corpus is empty.
CoherenceReport pmi_coherence(const Matrix& phi, std::span<const Document> reference, int t);
CoherenceReport pmi_coherence(const TrainedModel& model, const Corpus& reference, int t);

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ClassScores {
  PrfScores macro;
  std::map<int, PrfScores> per_class;
};

// Macro-averaged precision, recall and F1 over the classes present in
// `gold`. A class never predicted contributes precision 0.
ClassScores macro_scores(std::span<const int> pred, std::span<const int> gold);

// Stratified seeded train/test split of the theta rows, k-NN (cosine) on the
// training rows, macro P/R/F1 on the test rows. Errors: std::invalid_argument
// if train_frac is outside (0, 1) or k < 1; DataError if a class has fewer
// than two documents or D < 2 L.
EvalReport classify_eval(const Matrix& theta, const GoldLabels& gold, std::uint64_t split_seed,
                         double train_frac = kDefaultTrainFraction,
                         int k_neighbors = kDefaultNeighbors);

}  // namespace shortopic
