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

#include <cstdint>

#include "kernel_rows.hpp"
#include "shortopic/kernels.hpp"

namespace shortopic::kernels::parallel {

// Loop indices are signed for OpenMP 3.x compatibility.
using Index = std::int64_t;

std::vector<std::vector<int>> cosine_neighbors(const Matrix& unit_rows, double epsilon) {
  std::vector<std::vector<int>> out(unit_rows.rows());
  const auto n = static_cast<Index>(unit_rows.rows());
#pragma omp parallel for schedule(dynamic, 16)
  for (Index i = 0; i < n; ++i) {
    detail::neighbor_row(unit_rows, static_cast<std::size_t>(i), epsilon,
                         out[static_cast<std::size_t>(i)]);
  }
  return out;
}

Matrix btm_doc_topics(std::span<const Document> docs, std::span<const double> topic_weights,
                      const Matrix& phi, std::size_t window) {
  Matrix theta(docs.size(), phi.rows());
  const auto n = static_cast<Index>(docs.size());
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(dynamic, 64)
    for (Index d = 0; d < n; ++d) {
      const auto i = static_cast<std::size_t>(d);
      detail::btm_doc_row(docs[i], topic_weights, phi, window, theta.row(i), scratch);
    }
  }
  return theta;
}

Matrix mean_word_posteriors(std::span<const Document> docs, const Matrix& p_k_given_w) {
  Matrix theta(docs.size(), p_k_given_w.cols());
  const auto n = static_cast<Index>(docs.size());
#pragma omp parallel for schedule(static)
  for (Index d = 0; d < n; ++d) {
    const auto i = static_cast<std::size_t>(d);
    detail::mean_posterior_row(docs[i], p_k_given_w, theta.row(i));
  }
  return theta;
}

Matrix fold_in_tokens(std::span<const Document> docs, const Matrix& phi, double alpha, int iters,
                      std::uint64_t seed) {
  Matrix theta(docs.size(), phi.rows());
  const auto n = static_cast<Index>(docs.size());
#pragma omp parallel
  {
    std::vector<int> z;
    std::vector<double> weights;
#pragma omp for schedule(dynamic, 16)
    for (Index d = 0; d < n; ++d) {
      const auto i = static_cast<std::size_t>(d);
      RngStream rng(derive_seed(seed, i));
      detail::fold_in_tokens_row(docs[i], phi, alpha, iters, rng, theta.row(i), z, weights);
    }
  }
  return theta;
}

Matrix fold_in_documents(std::span<const Document> docs, std::span<const double> topic_weights,
                         const Matrix& phi) {
  Matrix theta(docs.size(), phi.rows());
  const auto n = static_cast<Index>(docs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (Index d = 0; d < n; ++d) {
    const auto i = static_cast<std::size_t>(d);
    detail::fold_in_documents_row(docs[i], topic_weights, phi, theta.row(i));
  }
  return theta;
}

CooccurrenceCounts document_cooccurrence(std::span<const Document> docs,
                                         std::span<const int> tracked, std::size_t vocab_size) {
  CooccurrenceCounts out;
  out.size = tracked.size();
  out.doc_freq.assign(out.size, 0);
  out.joint.assign(out.size * out.size, 0);
  const auto index = detail::tracked_index(tracked, vocab_size);
  const auto n = static_cast<Index>(docs.size());
#pragma omp parallel
  {
    std::vector<std::int64_t> df(out.size, 0);
    std::vector<std::int64_t> joint(out.size * out.size, 0);
    std::vector<std::size_t> stamp(out.size, 0);
    std::vector<int> present;
#pragma omp for schedule(static)
    for (Index d = 0; d < n; ++d) {
      detail::cooccurrence_doc(docs[static_cast<std::size_t>(d)], index, stamp,
                               static_cast<std::size_t>(d) + 1, present, df.data(), joint.data(),
                               out.size);
    }
    // Integer sums, so the reduction order does not matter.
#pragma omp critical(shortopic_cooccurrence)
    {
      for (std::size_t i = 0; i < df.size(); ++i) out.doc_freq[i] += df[i];
      for (std::size_t i = 0; i < joint.size(); ++i) out.joint[i] += joint[i];
    }
  }
  return out;
}

std::vector<int> knn_predict(const Matrix& train, std::span<const int> train_labels,
                             const Matrix& test, int k, std::size_t num_labels) {
  const auto train_norms = detail::row_norms(train);
  const auto test_norms = detail::row_norms(test);
  std::vector<int> out(test.rows());
  const auto n = static_cast<Index>(test.rows());
#pragma omp parallel
  {
    std::vector<std::pair<double, int>> sims;
    std::vector<int> votes;
#pragma omp for schedule(dynamic, 16)
    for (Index i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(i);
      out[r] = detail::knn_row(test.row(r), test_norms[r], train, train_norms, train_labels, k,
                               num_labels, sims, votes);
    }
  }
  return out;
}

}  // namespace shortopic::kernels::parallel
