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

#include "shortopic/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace shortopic {
namespace {

constexpr std::pair<ModelKind, std::string_view> kModelNames[] = {
    {ModelKind::kLda, "LDA"},   {ModelKind::kDmm, "DMM"}, {ModelKind::kBtm, "BTM"},
    {ModelKind::kWntm, "WNTM"}, {ModelKind::kPtm, "PTM"}, {ModelKind::kGpuDmm, "GPUDMM"},
};

bool is_integral(double v) { return std::floor(v) == v; }

}  // namespace

std::string_view model_name(ModelKind kind) {
  for (auto [k, name] : kModelNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (auto [k, n] : kModelNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

double ModelParams::extra(const std::string& key, double fallback) const {
  auto it = extras.find(key);
  return it == extras.end() ? fallback : it->second;
}

void ModelParams::validate() const {
  if (num_topics < 1) throw std::invalid_argument("number of topics must be >= 1");
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be > 0");
  if (!(beta > 0)) throw std::invalid_argument("beta must be > 0");
  if (niters < 1) throw std::invalid_argument("niters must be >= 1");
  if (twords < 1) throw std::invalid_argument("twords must be >= 1");
}

std::size_t sample_discrete(std::span<const double> weights, RngStream& rng) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("sample_discrete: negative or NaN weight");
    total += w;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("sample_discrete: weights must have a positive finite sum");
  }
  double u = rng.uniform() * total;
  std::size_t last_positive = 0;
  double cum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cum += weights[i];
    last_positive = i;
    if (u < cum) return i;
  }
  return last_positive;
}

std::optional<std::string> check_topic_word(const Matrix& n_kw, std::span<const double> n_k,
                                            bool integral, double tolerance) {
  if (n_k.size() != n_kw.rows()) return "n_k length does not match n_kw rows";
  for (std::size_t k = 0; k < n_kw.rows(); ++k) {
    double sum = 0.0;
    for (std::size_t w = 0; w < n_kw.cols(); ++w) {
      double v = n_kw(k, w);
      if (v < 0) {
        std::ostringstream os;
        os << "negative count n_kw[" << k << "][" << w << "] = " << v;
        return os.str();
      }
      if (integral && !is_integral(v)) {
        std::ostringstream os;
        os << "non-integral count n_kw[" << k << "][" << w << "] = " << v;
        return os.str();
      }
      sum += v;
    }
    if (n_k[k] < 0) {
      std::ostringstream os;
      os << "negative count n_k[" << k << "] = " << n_k[k];
      return os.str();
    }
    if (std::abs(sum - n_k[k]) > tolerance * std::max(1.0, std::abs(n_k[k]))) {
      std::ostringstream os;
      os << "topic " << k << ": sum of topic-word counts " << sum << " != n_k " << n_k[k];
      return os.str();
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_counts(const CountState& counts, bool integral) {
  if (auto v = check_topic_word(counts.n_kw, counts.n_k, integral)) return v;
  if (counts.n_d.size() != counts.n_dk.rows()) return "n_d length does not match n_dk rows";
  for (std::size_t d = 0; d < counts.n_dk.rows(); ++d) {
    double sum = 0.0;
    for (std::size_t k = 0; k < counts.n_dk.cols(); ++k) {
      double v = counts.n_dk(d, k);
      if (v < 0) {
        std::ostringstream os;
        os << "negative count n_dk[" << d << "][" << k << "] = " << v;
        return os.str();
      }
      if (integral && !is_integral(v)) {
        std::ostringstream os;
        os << "non-integral count n_dk[" << d << "][" << k << "] = " << v;
        return os.str();
      }
      sum += v;
    }
    if (std::abs(sum - counts.n_d[d]) > 1e-9 * std::max(1.0, counts.n_d[d])) {
      std::ostringstream os;
      os << "document " << d << ": sum of doc-topic counts " << sum << " != n_d "
         << counts.n_d[d];
      return os.str();
    }
  }
  return std::nullopt;
}

Matrix smoothed_rows(const Matrix& counts, std::span<const double> totals, double prior) {
  Matrix out(counts.rows(), counts.cols());
  const double dim_prior = static_cast<double>(counts.cols()) * prior;
  for (std::size_t r = 0; r < counts.rows(); ++r) {
    const double denom = totals[r] + dim_prior;
    for (std::size_t c = 0; c < counts.cols(); ++c) out(r, c) = (counts(r, c) + prior) / denom;
  }
  return out;
}

std::pair<Matrix, Matrix> point_estimates(const CountState& counts, const ModelParams& params) {
  return {smoothed_rows(counts.n_dk, counts.n_d, params.alpha),
          smoothed_rows(counts.n_kw, counts.n_k, params.beta)};
}

std::vector<std::vector<int>> top_word_ids(const Matrix& phi, int t) {
  const std::size_t take = std::min(static_cast<std::size_t>(std::max(t, 0)), phi.cols());
  std::vector<std::vector<int>> out(phi.rows());
  std::vector<int> order(phi.cols());
  for (std::size_t k = 0; k < phi.rows(); ++k) {
    std::iota(order.begin(), order.end(), 0);
    auto row = phi.row(k);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                      order.end(), [&](int a, int b) {
                        if (row[a] != row[b]) return row[a] > row[b];
                        return a < b;
                      });
    out[k].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

std::vector<std::vector<std::string>> top_words(const Matrix& phi, const Vocabulary& vocab,
                                                int t) {
  std::vector<std::vector<std::string>> out;
  for (const auto& ids : top_word_ids(phi, t)) {
    auto& words = out.emplace_back();
    for (int id : ids) words.push_back(vocab.word(id));
  }
  return out;
}

void normalize_rows(Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& v : row) v /= sum;
  }
}

void exp_normalize_max(std::span<double> log_weights) {
  if (log_weights.empty()) return;
  double max = *std::max_element(log_weights.begin(), log_weights.end());
  for (double& v : log_weights) v = std::exp(v - max);
}

}  // namespace shortopic
