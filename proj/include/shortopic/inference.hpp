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
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/sampling.hpp"

namespace shortopic {

inline constexpr int kDefaultFoldInIters = 100;

struct FoldInResult {
  Matrix theta;
  // Fraction of each document's raw tokens that were out of vocabulary.
  std::vector<double> oov_fraction;
  std::size_t oov_tokens = 0;
};

// Estimates topic proportions of unseen documents with phi frozen.
//  - LDA, WNTM, PTM: per-token Gibbs with weights (n_dk + alpha) phi[k][w].
//  - DMM, GPU-DMM: posterior topic_weights[k] prod phi[k][w].
//  - BTM: biterm posteriors averaged per document.
// Empty or fully out-of-vocabulary documents get a uniform row. The model is
// never modified. Errors: DataError when no token of the new corpus is in
// the model vocabulary.
FoldInResult fold_in(const TrainedModel& model, const ProjectedCorpus& new_corpus, int iters,
                     std::uint64_t seed);

}  // namespace shortopic
