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

#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "shortopic/error.hpp"
#include "shortopic/evaluation.hpp"
#include "shortopic/wntm.hpp"
#include "support/oracles.hpp"

namespace shortopic {
namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

TEST_CASE("build_word_network: examples") {
  auto c = testing::corpus_from_text("a b\nb c\n");
  auto n = build_word_network(c, 10);
  REQUIRE(n.pseudo_docs.size() == 3);
  CHECK(n.pseudo_docs[0] == Document{1});
  CHECK(sorted(n.pseudo_docs[1]) == Document{0, 2});
  CHECK(n.pseudo_docs[2] == Document{1});
  CHECK(n.total_length() == 4);

  auto single = build_word_network(testing::corpus_from_text("a\n"), 10);
  CHECK(single.pseudo_docs.at(0).empty());

  auto w2 = build_word_network(testing::corpus_from_text("a b c\n"), 2);
  CHECK(w2.pseudo_docs[0] == Document{1});
  CHECK(sorted(w2.pseudo_docs[1]) == Document{0, 2});
  CHECK(w2.pseudo_docs[2] == Document{1});
}

TEST_CASE("build_word_network: symmetric and twice the pair count") {
  auto c = testing::random_corpus(40, 15, 9, 13);
  const std::size_t window = 4;
  auto n = build_word_network(c, window);
  std::size_t pairs = 0;
  for (const auto& d : c.docs) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = i + 1; j < d.size() && j - i < window; ++j) ++pairs;
    }
  }
  CHECK(n.total_length() == 2 * pairs);
  std::map<std::pair<int, int>, int> count;
  for (std::size_t w = 0; w < n.pseudo_docs.size(); ++w) {
    for (int v : n.pseudo_docs[w]) ++count[{static_cast<int>(w), v}];
  }
  for (auto [key, cnt] : count) CHECK(count[{key.second, key.first}] == cnt);
}

TEST_CASE("wntm_doc_topics: averaging") {
  Matrix p(2, 2);
  p(0, 0) = 1;
  p(1, 1) = 1;
  std::vector<Document> docs{{0, 1}, {1}, {}};
  auto t = wntm_doc_topics(p, docs);
  CHECK(t(0, 0) == 0.5);
  CHECK(t(0, 1) == 0.5);
  CHECK(t(1, 0) == 0.0);
  CHECK(t(1, 1) == 1.0);
  CHECK(t(2, 0) == 0.5);
}

TEST_CASE("wntm_train: one topic") {
  auto c = testing::corpus_from_text("a b\na b\n");
  ModelParams p;
  p.num_topics = 1;
  p.niters = 3;
  auto m = wntm_train(c, p);
  CHECK(m.theta(0, 0) == doctest::Approx(1.0));
  CHECK(m.theta(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("wntm_train: determinism and stochastic rows") {
  auto c = testing::random_corpus(50, 30, 8, 7);
  ModelParams p;
  p.num_topics = 4;
  p.niters = 20;
  auto a = wntm_train(c, p);
  auto b = wntm_train(c, p);
  CHECK(a.theta == b.theta);
  CHECK(a.phi == b.phi);
  for (const Matrix* m : {&a.theta, &a.phi}) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      auto row = m->row(r);
      CHECK(std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("wntm_train: synthetic recovery") {
  auto s = testing::disjoint_topic_corpus(300, 8, 3, 50, 3);
  ModelParams p;
  p.num_topics = 3;
  p.niters = 200;
  auto m = wntm_train(s.corpus, p);
  CHECK(purity(argmax_assign(m.theta), s.gold) >= 0.9);
}

TEST_CASE("wntm_train: no co-occurrence") {
  CHECK_THROWS_AS(wntm_train(testing::corpus_from_text("a\nb\n"), ModelParams{}), DataError);
}

}  // namespace
}  // namespace shortopic
