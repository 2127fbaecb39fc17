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
#include <span>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/sampling.hpp"

namespace shortopic {

inline constexpr std::size_t kDefaultWntmWindow = 10;

// One pseudo-document per vocabulary word: the multiset of words that
// co-occur with it inside a window.
struct WordNetwork {
  std::vector<Document> pseudo_docs;

  std::size_t total_length() const;
};

// For each position pair (i, j), i < j, j - i < window: appends token j to
// pseudo_docs[token i] and token i to pseudo_docs[token j]. A window of 0
// means the whole document.
WordNetwork build_word_network(const Corpus& corpus, std::size_t window);

// theta[d] = mean of p(.|w) over the tokens of doc d; empty docs uniform.
Matrix wntm_doc_topics(const Matrix& p_k_given_w, std::span<const Document> docs);

// Runs LDA on the word network, then maps topics back: phi[k][w] is
// p(k|w) * freq(w) renormalized over w. Uses params.extras["window"]
// (default 10). Errors: DataError when no word pair co-occurs.
TrainedModel wntm_train(const Corpus& corpus, const ModelParams& params,
                        const SweepObserver& observer = {});

}  // namespace shortopic
