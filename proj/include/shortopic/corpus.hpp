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
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shortopic {

// Bijective token <-> id map. Ids are handed out contiguously in
// first-occurrence order.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);

  // Returns the id of `word`, inserting it if it is new.
  int add(std::string_view word);
  std::optional<int> find(std::string_view word) const;
  const std::string& word(int id) const { return id_to_word_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return id_to_word_.size(); }
  std::span<const std::string> words() const { return id_to_word_; }

  bool operator==(const Vocabulary& other) const { return id_to_word_ == other.id_to_word_; }

 private:
  std::unordered_map<std::string, int> word_to_id_;
  std::vector<std::string> id_to_word_;
};

using Document = std::vector<int>;

struct Corpus {
  std::vector<Document> docs;
  Vocabulary vocab;
  std::size_t total_tokens = 0;

  std::size_t num_docs() const { return docs.size(); }
  std::size_t vocab_size() const { return vocab.size(); }
};

// A corpus tokenized against a fixed vocabulary. Out-of-vocabulary tokens
// are dropped; per-document drop counts are kept so callers can report them.
struct ProjectedCorpus {
  Corpus corpus;
  std::vector<std::size_t> oov_per_doc;
  std::vector<std::size_t> raw_length;

  std::size_t oov_tokens() const;
  std::size_t raw_tokens() const;
};

struct GoldLabels {
  std::vector<int> labels;
  std::vector<std::string> label_names;

  std::size_t num_labels() const { return label_names.size(); }
};

// Vectors keyed by vocabulary id. Only in-vocabulary words are stored.
struct WordEmbeddings {
  std::map<int, std::vector<double>> vectors;
  std::size_t dim = 0;
  std::vector<int> uncovered;  // vocabulary ids with no vector, ascending
};

// One document per line, tokens split on any run of whitespace, taken
// verbatim. Blank lines become empty documents.
Corpus parse_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

ProjectedCorpus project_corpus(std::istream& in, const Vocabulary& vocab);
ProjectedCorpus load_corpus_with_vocab(const std::filesystem::path& path,
                                       const Vocabulary& vocab);

// One non-empty label per line; the line count must equal `expected_docs`.
GoldLabels parse_labels(std::istream& in, std::size_t expected_docs);
GoldLabels load_labels(const std::filesystem::path& path, std::size_t expected_docs);
GoldLabels load_labels(const std::filesystem::path& path, const Corpus& corpus);

// word2vec text format: "word v1 ... vE" per line, with an optional
// "count dim" header line.
WordEmbeddings parse_embeddings(std::istream& in, const Vocabulary& vocab);
WordEmbeddings load_embeddings(const std::filesystem::path& path, const Vocabulary& vocab);

}  // namespace shortopic
