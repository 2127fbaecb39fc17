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

// Per-item bodies shared by the serial and OpenMP kernel loops.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/matrix.hpp"
#include "shortopic/rng.hpp"
#include "shortopic/sampling.hpp"

namespace shortopic::kernels::detail {

inline void fill_uniform(std::span<double> out) {
  std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
}

inline void normalize(std::span<double> v) {
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
}

inline void neighbor_row(const Matrix& unit, std::size_t i, double epsilon,
                         std::vector<int>& out) {
  auto a = unit.row(i);
  for (std::size_t j = 0; j < unit.rows(); ++j) {
    if (j == i) continue;
    auto b = unit.row(j);
    double dot = 0.0;
    for (std::size_t e = 0; e < a.size(); ++e) dot += a[e] * b[e];
    if (dot > epsilon) out.push_back(static_cast<int>(j));
  }
}

inline void btm_doc_row(const Document& doc, std::span<const double> topic_weights,
                        const Matrix& phi, std::size_t window, std::span<double> out,
                        std::vector<double>& scratch) {
  const std::size_t K = out.size();
  scratch.resize(K);
  if (doc.empty()) {
    fill_uniform(out);
    return;
  }
  if (doc.size() == 1) {
    const auto w = static_cast<std::size_t>(doc[0]);
    for (std::size_t k = 0; k < K; ++k) out[k] = topic_weights[k] * phi(k, w);
    normalize(out);
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    for (std::size_t j = i + 1; j < doc.size(); ++j) {
      if (window != 0 && j - i >= window) break;
      const auto w1 = static_cast<std::size_t>(std::min(doc[i], doc[j]));
      const auto w2 = static_cast<std::size_t>(std::max(doc[i], doc[j]));
      double sum = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        scratch[k] = topic_weights[k] * phi(k, w1) * phi(k, w2);
        sum += scratch[k];
      }
      for (std::size_t k = 0; k < K; ++k) out[k] += scratch[k] / sum;
      ++count;
    }
  }
  for (double& v : out) v /= static_cast<double>(count);
}

inline void mean_posterior_row(const Document& doc, const Matrix& p_k_given_w,
                               std::span<double> out) {
  if (doc.empty()) {
    fill_uniform(out);
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (int w : doc) {
    auto p = p_k_given_w.row(static_cast<std::size_t>(w));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += p[k];
  }
  for (double& v : out) v /= static_cast<double>(doc.size());
}

inline void fold_in_tokens_row(const Document& doc, const Matrix& phi, double alpha, int iters,
                               RngStream& rng, std::span<double> out, std::vector<int>& z,
                               std::vector<double>& weights) {
  const std::size_t K = out.size();
  weights.resize(K);
  std::fill(out.begin(), out.end(), 0.0);
  z.resize(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto k = rng.uniform_index(K);
    z[i] = static_cast<int>(k);
    out[k] += 1;
  }
  for (int it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto w = static_cast<std::size_t>(doc[i]);
      out[static_cast<std::size_t>(z[i])] -= 1;
      for (std::size_t k = 0; k < K; ++k) weights[k] = (out[k] + alpha) * phi(k, w);
      auto k = sample_discrete(weights, rng);
      z[i] = static_cast<int>(k);
      out[k] += 1;
    }
  }
  const double denom = static_cast<double>(doc.size()) + static_cast<double>(K) * alpha;
  for (double& v : out) v = (v + alpha) / denom;
}

inline void fold_in_documents_row(const Document& doc, std::span<const double> topic_weights,
                                  const Matrix& phi, std::span<double> out) {
  if (doc.empty()) {
    fill_uniform(out);
    return;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    double lw = std::log(topic_weights[k]);
    for (int w : doc) lw += std::log(phi(k, static_cast<std::size_t>(w)));
    out[k] = lw;
  }
  exp_normalize_max(out);
  normalize(out);
}

// Adds one document's presence pattern into df/joint. `index` maps word id
// to tracked index (-1 if untracked); `stamp` marks which tracked words were
// already seen in this document.
inline void cooccurrence_doc(const Document& doc, std::span<const int> index,
                             std::vector<std::size_t>& stamp, std::size_t doc_mark,
                             std::vector<int>& present, std::int64_t* df, std::int64_t* joint,
                             std::size_t size) {
  present.clear();
  for (int w : doc) {
    int t = index[static_cast<std::size_t>(w)];
    if (t < 0 || stamp[static_cast<std::size_t>(t)] == doc_mark) continue;
    stamp[static_cast<std::size_t>(t)] = doc_mark;
    present.push_back(t);
  }
  for (std::size_t a = 0; a < present.size(); ++a) {
    const auto i = static_cast<std::size_t>(present[a]);
    ++df[i];
    ++joint[i * size + i];
    for (std::size_t b = a + 1; b < present.size(); ++b) {
      const auto j = static_cast<std::size_t>(present[b]);
      ++joint[i * size + j];
      ++joint[j * size + i];
    }
  }
}

inline std::vector<int> tracked_index(std::span<const int> tracked, std::size_t vocab_size) {
  std::vector<int> index(vocab_size, -1);
  for (std::size_t t = 0; t < tracked.size(); ++t) {
    index[static_cast<std::size_t>(tracked[t])] = static_cast<int>(t);
  }
  return index;
}

inline std::vector<double> row_norms(const Matrix& m) {
  std::vector<double> norms(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (double v : m.row(r)) s += v * v;
    norms[r] = std::sqrt(s);
  }
  return norms;
}

inline int knn_row(std::span<const double> x, double x_norm, const Matrix& train,
                   std::span<const double> train_norms, std::span<const int> train_labels, int k,
                   std::size_t num_labels, std::vector<std::pair<double, int>>& sims,
                   std::vector<int>& votes) {
  sims.clear();
  for (std::size_t t = 0; t < train.rows(); ++t) {
    double sim = 0.0;
    if (x_norm > 0 && train_norms[t] > 0) {
      auto r = train.row(t);
      double dot = 0.0;
      for (std::size_t e = 0; e < x.size(); ++e) dot += x[e] * r[e];
      sim = dot / (x_norm * train_norms[t]);
    }
    sims.emplace_back(sim, static_cast<int>(t));
  }
  const auto take = std::min(static_cast<std::size_t>(k), sims.size());
  std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(take), sims.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                    });
  votes.assign(num_labels, 0);
  for (std::size_t i = 0; i < take; ++i) {
    ++votes[static_cast<std::size_t>(train_labels[static_cast<std::size_t>(sims[i].second)])];
  }
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

}  // namespace shortopic::kernels::detail
