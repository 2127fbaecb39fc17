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

// Data-parallel kernels. Every kernel has a serial reference implementation
// and an OpenMP implementation with the same signature; both produce
// bit-identical results for any thread count. Library code calls the
// parallel versions; the serial ones are kept for testing and benchmarks.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/matrix.hpp"

namespace shortopic::kernels {

// Document-frequency statistics for a tracked word set.
struct CooccurrenceCounts {
  std::size_t size = 0;
  std::vector<std::int64_t> doc_freq;  // documents containing tracked word i
  std::vector<std::int64_t> joint;     // size x size, documents containing both

  std::int64_t pair(std::size_t i, std::size_t j) const { return joint[i * size + j]; }
};

namespace serial {

// Per row i, the ascending indices j != i whose dot product with row i
// exceeds epsilon. Rows are expected to be unit length.
std::vector<std::vector<int>> cosine_neighbors(const Matrix& unit_rows, double epsilon);

// BTM document topics: the mean over a document's biterms of the normalized
// topic_weights[k] * phi[k][w1] * phi[k][w2]. Single-token documents use
// topic_weights[k] * phi[k][w]; empty documents are uniform. A window of 0
// means the whole document.
Matrix btm_doc_topics(std::span<const Document> docs, std::span<const double> topic_weights,
                      const Matrix& phi, std::size_t window);

// Row d is the mean of p_k_given_w rows over the tokens of docs[d]
// (with multiplicity). Empty documents are uniform.
Matrix mean_word_posteriors(std::span<const Document> docs, const Matrix& p_k_given_w);

// Per-document Gibbs fold-in against a frozen phi with weights
// (n_dk + alpha) * phi[k][w]. Document d draws from
// RngStream(derive_seed(seed, d)), so results do not depend on scheduling.
Matrix fold_in_tokens(std::span<const Document> docs, const Matrix& phi, double alpha, int iters,
                      std::uint64_t seed);

// Whole-document posterior topic_weights[k] * prod_i phi[k][w_i], normalized
// in log space. Empty documents are uniform.
Matrix fold_in_documents(std::span<const Document> docs, std::span<const double> topic_weights,
                         const Matrix& phi);

// Document frequencies of the `tracked` word ids and of every tracked pair.
CooccurrenceCounts document_cooccurrence(std::span<const Document> docs,
                                         std::span<const int> tracked, std::size_t vocab_size);

// k-nearest-neighbour vote by cosine similarity. Ties in similarity go to
// the smaller training index, ties in the vote to the smaller label.
std::vector<int> knn_predict(const Matrix& train, std::span<const int> train_labels,
                             const Matrix& test, int k, std::size_t num_labels);

}  // namespace serial

// OpenMP versions of the kernels above, same contracts.
namespace parallel {

std::vector<std::vector<int>> cosine_neighbors(const Matrix& unit_rows, double epsilon);
Matrix btm_doc_topics(std::span<const Document> docs, std::span<const double> topic_weights,
                      const Matrix& phi, std::size_t window);
Matrix mean_word_posteriors(std::span<const Document> docs, const Matrix& p_k_given_w);
Matrix fold_in_tokens(std::span<const Document> docs, const Matrix& phi, double alpha, int iters,
                      std::uint64_t seed);
Matrix fold_in_documents(std::span<const Document> docs, std::span<const double> topic_weights,
                         const Matrix& phi);
CooccurrenceCounts document_cooccurrence(std::span<const Document> docs,
                                         std::span<const int> tracked, std::size_t vocab_size);
std::vector<int> knn_predict(const Matrix& train, std::span<const int> train_labels,
                             const Matrix& test, int k, std::size_t num_labels);

}  // namespace parallel

}  // namespace shortopic::kernels
