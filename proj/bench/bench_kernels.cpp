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

// Serial vs OpenMP timings for the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <sstream>

#include "shortopic/corpus.hpp"
#include "shortopic/kernels.hpp"

namespace {

using namespace shortopic;

struct Fixture {
  Corpus corpus;
  Matrix phi;
  std::vector<double> weights;
  Matrix unit_rows;
  Matrix train, test;
  std::vector<int> labels;
  std::vector<int> tracked;
};

Matrix random_rows(std::size_t rows, std::size_t cols, std::mt19937_64& gen, bool unit) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = unit ? g(gen) : u(gen);
      s += unit ? m(r, c) * m(r, c) : m(r, c);
    }
    if (unit) s = std::sqrt(s);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) /= s;
  }
  return m;
}

const Fixture& fixture() {
  static const Fixture f = [] {
    constexpr int D = 20000, V = 2000, K = 50, len = 12;
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<int> word(0, V - 1);
    std::ostringstream os;
    for (int w = 0; w < V; ++w) os << 'w' << w << (w + 1 < V ? ' ' : '\n');
    for (int d = 1; d < D; ++d) {
      for (int i = 0; i < len; ++i) os << 'w' << word(gen) << (i + 1 < len ? ' ' : '\n');
    }
    std::istringstream in(os.str());
    Fixture out;
    out.corpus = parse_corpus(in);
    out.phi = random_rows(K, V, gen, false);
    out.weights.assign(K, 1.0 / K);
    out.unit_rows = random_rows(V, 100, gen, true);
    out.train = random_rows(8000, K, gen, false);
    out.test = random_rows(2000, K, gen, false);
    for (int i = 0; i < 8000; ++i) out.labels.push_back(i % 10);
    for (int w = 0; w < 200; ++w) out.tracked.push_back(w * 10);
    return out;
  }();
  return f;
}

template <bool Parallel>
void BM_FoldInTokens(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    auto m = Parallel ? kernels::parallel::fold_in_tokens(f.corpus.docs, f.phi, 0.1, 20, 1)
                      : kernels::serial::fold_in_tokens(f.corpus.docs, f.phi, 0.1, 20, 1);
    benchmark::DoNotOptimize(m);
  }
}

template <bool Parallel>
void BM_BtmDocTopics(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    auto m = Parallel ? kernels::parallel::btm_doc_topics(f.corpus.docs, f.weights, f.phi, 0)
                      : kernels::serial::btm_doc_topics(f.corpus.docs, f.weights, f.phi, 0);
    benchmark::DoNotOptimize(m);
  }
}

template <bool Parallel>
void BM_CosineNeighbors(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    auto n = Parallel ? kernels::parallel::cosine_neighbors(f.unit_rows, 0.3)
                      : kernels::serial::cosine_neighbors(f.unit_rows, 0.3);
    benchmark::DoNotOptimize(n);
  }
}

template <bool Parallel>
void BM_Cooccurrence(benchmark::State& state) {
  const auto& f = fixture();
  const std::size_t V = f.corpus.vocab_size();
  for (auto _ : state) {
    auto c = Parallel ? kernels::parallel::document_cooccurrence(f.corpus.docs, f.tracked, V)
                      : kernels::serial::document_cooccurrence(f.corpus.docs, f.tracked, V);
    benchmark::DoNotOptimize(c);
  }
}

template <bool Parallel>
void BM_Knn(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    auto p = Parallel ? kernels::parallel::knn_predict(f.train, f.labels, f.test, 5, 10)
                      : kernels::serial::knn_predict(f.train, f.labels, f.test, 5, 10);
    benchmark::DoNotOptimize(p);
  }
}

BENCHMARK(BM_FoldInTokens<false>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FoldInTokens<true>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BtmDocTopics<false>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BtmDocTopics<true>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CosineNeighbors<false>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CosineNeighbors<true>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Cooccurrence<false>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Cooccurrence<true>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Knn<false>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Knn<true>)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
