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

#include "kernel_rows.hpp"
#include "shortopic/kernels.hpp"

namespace shortopic::kernels::serial {

std::vector<std::vector<int>> cosine_neighbors(const Matrix& unit_rows, double epsilon) {
  std::vector<std::vector<int>> out(unit_rows.rows());
  for (std::size_t i = 0; i < unit_rows.rows(); ++i) {
    detail::neighbor_row(unit_rows, i, epsilon, out[i]);
  }
  return out;
}

Matrix btm_doc_topics(std::span<const Document> docs, std::span<const double> topic_weights,
                      const Matrix& phi, std::size_t window) {
  Matrix theta(docs.size(), phi.rows());
  std::vector<double> scratch;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    detail::btm_doc_row(docs[d], topic_weights, phi, window, theta.row(d), scratch);
  }
  return theta;
}

Matrix mean_word_posteriors(std::span<const Document> docs, const Matrix& p_k_given_w) {
  Matrix theta(docs.size(), p_k_given_w.cols());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    detail::mean_posterior_row(docs[d], p_k_given_w, theta.row(d));
  }
  return theta;
}

Matrix fold_in_tokens(std::span<const Document> docs, const Matrix& phi, double alpha, int iters,
                      std::uint64_t seed) {
  Matrix theta(docs.size(), phi.rows());
  std::vector<int> z;
  std::vector<double> weights;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    RngStream rng(derive_seed(seed, d));
    detail::fold_in_tokens_row(docs[d], phi, alpha, iters, rng, theta.row(d), z, weights);
  }
  return theta;
}

Matrix fold_in_documents(std::span<const Document> docs, std::span<const double> topic_weights,
                         const Matrix& phi) {
  Matrix theta(docs.size(), phi.rows());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    detail::fold_in_documents_row(docs[d], topic_weights, phi, theta.row(d));
  }
  return theta;
}

CooccurrenceCounts document_cooccurrence(std::span<const Document> docs,
                                         std::span<const int> tracked, std::size_t vocab_size) {
  CooccurrenceCounts out;
  out.size = tracked.size();
  out.doc_freq.assign(out.size, 0);
  out.joint.assign(out.size * out.size, 0);
  auto index = detail::tracked_index(tracked, vocab_size);
  std::vector<std::size_t> stamp(out.size, 0);
  std::vector<int> present;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    detail::cooccurrence_doc(docs[d], index, stamp, d + 1, present, out.doc_freq.data(),
                             out.joint.data(), out.size);
  }
  return out;
}

std::vector<int> knn_predict(const Matrix& train, std::span<const int> train_labels,
                             const Matrix& test, int k, std::size_t num_labels) {
  auto train_norms = detail::row_norms(train);
  auto test_norms = detail::row_norms(test);
  std::vector<int> out(test.rows());
  std::vector<std::pair<double, int>> sims;
  std::vector<int> votes;
  for (std::size_t i = 0; i < test.rows(); ++i) {
    out[i] = detail::knn_row(test.row(i), test_norms[i], train, train_norms, train_labels, k,
                             num_labels, sims, votes);
  }
  return out;
}

}  // namespace shortopic::kernels::serial
