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

#include <numeric>
#include <sstream>

#include "doctest.h"
#include "shortopic/error.hpp"
#include "shortopic/evaluation.hpp"
#include "shortopic/inference.hpp"
#include "shortopic/model.hpp"
#include "support/oracles.hpp"

namespace shortopic {
namespace {

ProjectedCorpus project(const std::string& text, const Vocabulary& vocab) {
  std::istringstream in(text);
  return project_corpus(in, vocab);
}

ProjectedCorpus same_corpus(const Corpus& c) {
  ProjectedCorpus p;
  p.corpus = c;
  p.oov_per_doc.assign(c.num_docs(), 0);
  for (const auto& d : c.docs) p.raw_length.push_back(d.size());
  return p;
}

TEST_CASE("fold_in: OOV-only document gets a uniform row") {
  auto c = testing::corpus_from_text("a b\nb c\na c\n");
  ModelParams p;
  p.num_topics = 2;
  p.niters = 5;
  for (auto kind : {ModelKind::kLda, ModelKind::kDmm, ModelKind::kBtm, ModelKind::kWntm,
                    ModelKind::kPtm}) {
    auto m = train_model(kind, c, p);
    auto r = fold_in(m, project("x y\na b\n", m.vocab), 10, 1);
    CHECK(r.theta(0, 0) == 0.5);
    CHECK(r.theta(0, 1) == 0.5);
    CHECK(r.oov_fraction[0] == 1.0);
    CHECK(r.oov_fraction[1] == 0.0);
    CHECK(r.oov_tokens == 2);
  }
}

TEST_CASE("fold_in: one topic gives rows of one") {
  auto c = testing::corpus_from_text("a b\nb c\n");
  ModelParams p;
  p.num_topics = 1;
  p.niters = 3;
  for (auto kind : {ModelKind::kLda, ModelKind::kDmm, ModelKind::kBtm}) {
    auto m = train_model(kind, c, p);
    auto r = fold_in(m, project("a c\nb\n\n", m.vocab), 10, 2);
    for (std::size_t d = 0; d < 3; ++d) CHECK(r.theta(d, 0) == doctest::Approx(1.0));
  }
}

TEST_CASE("fold_in: model untouched, rows stochastic, deterministic") {
  auto c = testing::random_corpus(40, 20, 8, 41);
  ModelParams p;
  p.num_topics = 3;
  p.niters = 10;
  for (auto kind : {ModelKind::kLda, ModelKind::kDmm, ModelKind::kBtm, ModelKind::kWntm,
                    ModelKind::kPtm}) {
    auto m = train_model(kind, c, p);
    const auto phi = m.phi;
    const auto weights = m.topic_weights;
    auto nc = same_corpus(c);
    auto a = fold_in(m, nc, 20, 5);
    auto b = fold_in(m, nc, 20, 5);
    CHECK(m.phi == phi);
    CHECK(m.topic_weights == weights);
    CHECK(a.theta == b.theta);
    for (std::size_t d = 0; d < a.theta.rows(); ++d) {
      auto r = a.theta.row(d);
      CHECK(std::abs(std::accumulate(r.begin(), r.end(), 0.0) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("fold_in: vocabulary mismatch") {
  auto c = testing::corpus_from_text("a b\n");
  ModelParams p;
  p.num_topics = 2;
  p.niters = 2;
  auto m = train_model(ModelKind::kLda, c, p);
  CHECK_THROWS_AS(fold_in(m, project("x y\nz\n", m.vocab), 5, 1), DataError);
}

TEST_CASE("fold_in: LDA re-inference agrees with training") {
  auto s = testing::disjoint_topic_corpus(150, 30, 3, 50, 43);
  ModelParams p;
  p.num_topics = 3;
  p.niters = 200;
  for (std::uint64_t seed : {1, 2, 3}) {
    p.seed = seed;
    auto m = train_model(ModelKind::kLda, s.corpus, p);
    auto r = fold_in(m, same_corpus(s.corpus), kDefaultFoldInIters, seed);
    auto a = argmax_assign(m.theta);
    auto b = argmax_assign(r.theta);
    std::size_t agree = 0;
    for (std::size_t d = 0; d < a.size(); ++d) agree += a[d] == b[d];
    CHECK(static_cast<double>(agree) / static_cast<double>(a.size()) >= 0.9);
  }
}

}  // namespace
}  // namespace shortopic
