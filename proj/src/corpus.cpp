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

#include "shortopic/corpus.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "shortopic/error.hpp"

namespace shortopic {
namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_integer(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> words) {
  for (const auto& w : words) {
    if (find(w)) throw DataError("duplicate vocabulary word '" + w + "'");
    add(w);
  }
}

int Vocabulary::add(std::string_view word) {
  auto it = word_to_id_.find(std::string(word));
  if (it != word_to_id_.end()) return it->second;
  int id = static_cast<int>(id_to_word_.size());
  id_to_word_.emplace_back(word);
  word_to_id_.emplace(id_to_word_.back(), id);
  return id;
}

std::optional<int> Vocabulary::find(std::string_view word) const {
  auto it = word_to_id_.find(std::string(word));
  if (it == word_to_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t ProjectedCorpus::oov_tokens() const {
  return std::accumulate(oov_per_doc.begin(), oov_per_doc.end(), std::size_t{0});
}

std::size_t ProjectedCorpus::raw_tokens() const {
  return std::accumulate(raw_length.begin(), raw_length.end(), std::size_t{0});
}

Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    Document doc;
    for (auto tok : split_whitespace(line)) doc.push_back(corpus.vocab.add(tok));
    corpus.total_tokens += doc.size();
    corpus.docs.push_back(std::move(doc));
  }
  if (corpus.docs.empty()) throw DataError("empty corpus");
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_corpus(in);
}

ProjectedCorpus project_corpus(std::istream& in, const Vocabulary& vocab) {
  ProjectedCorpus out;
  out.corpus.vocab = vocab;
  std::string line;
  while (std::getline(in, line)) {
    Document doc;
    auto tokens = split_whitespace(line);
    for (auto tok : tokens) {
      if (auto id = vocab.find(tok)) doc.push_back(*id);
    }
    out.raw_length.push_back(tokens.size());
    out.oov_per_doc.push_back(tokens.size() - doc.size());
    out.corpus.total_tokens += doc.size();
    out.corpus.docs.push_back(std::move(doc));
  }
  if (out.corpus.docs.empty()) throw DataError("empty corpus");
  return out;
}

ProjectedCorpus load_corpus_with_vocab(const std::filesystem::path& path,
                                       const Vocabulary& vocab) {
  auto in = open_input(path);
  return project_corpus(in, vocab);
}

GoldLabels parse_labels(std::istream& in, std::size_t expected_docs) {
  GoldLabels gold;
  std::map<std::string, int, std::less<>> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_whitespace(line);
    if (tokens.empty()) throw DataError("blank label on line " + std::to_string(line_no));
    std::string label(line);
    // Trim surrounding whitespace but keep interior spaces verbatim.
    label.erase(0, label.find_first_not_of(" \t\r\v\f"));
    label.erase(label.find_last_not_of(" \t\r\v\f") + 1);
    auto [it, inserted] = ids.try_emplace(label, static_cast<int>(gold.label_names.size()));
    if (inserted) gold.label_names.push_back(label);
    gold.labels.push_back(it->second);
  }
  if (gold.labels.size() != expected_docs) {
    throw DataError("label file has " + std::to_string(gold.labels.size()) +
                    " lines but corpus has " + std::to_string(expected_docs) + " documents");
  }
  return gold;
}

GoldLabels load_labels(const std::filesystem::path& path, std::size_t expected_docs) {
  auto in = open_input(path);
  return parse_labels(in, expected_docs);
}

GoldLabels load_labels(const std::filesystem::path& path, const Corpus& corpus) {
  return load_labels(path, corpus.num_docs());
}

WordEmbeddings parse_embeddings(std::istream& in, const Vocabulary& vocab) {
  WordEmbeddings emb;
  std::string line;
  std::size_t line_no = 0;
  bool dim_known = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    if (line_no == 1 && tokens.size() == 2 && is_integer(tokens[0]) && is_integer(tokens[1])) {
      continue;
    }
    std::size_t dim = tokens.size() - 1;
    if (!dim_known) {
      if (dim == 0) throw DataError("embedding line " + std::to_string(line_no) + " has no vector");
      emb.dim = dim;
      dim_known = true;
    } else if (dim != emb.dim) {
      throw DataError("embedding line " + std::to_string(line_no) + " has dimension " +
                      std::to_string(dim) + ", expected " + std::to_string(emb.dim));
    }
    auto id = vocab.find(tokens[0]);
    if (!id) continue;
    std::vector<double> vec(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_double(tokens[i + 1], vec[i])) {
        throw DataError("bad number '" + std::string(tokens[i + 1]) + "' on embedding line " +
                        std::to_string(line_no));
      }
    }
    emb.vectors.insert_or_assign(*id, std::move(vec));
  }
  if (emb.vectors.empty()) throw DataError("embeddings cover no vocabulary words");
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    if (!emb.vectors.contains(static_cast<int>(w))) emb.uncovered.push_back(static_cast<int>(w));
  }
  return emb;
}

WordEmbeddings load_embeddings(const std::filesystem::path& path, const Vocabulary& vocab) {
  auto in = open_input(path);
  return parse_embeddings(in, vocab);
}

}  // namespace shortopic
