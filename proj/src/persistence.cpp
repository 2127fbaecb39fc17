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

#include "shortopic/persistence.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "shortopic/error.hpp"

namespace shortopic {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("bad number '" + s + "' in " + what);
  }
  return v;
}

long long parse_integer(const std::string& s, const std::string& what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("bad integer '" + s + "' in " + what);
  }
  return v;
}

void check_stochastic(Matrix& m, const std::string& what) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (double v : row) {
      if (!(v >= 0) || !std::isfinite(v)) {
        throw DataError(what + ": row " + std::to_string(r) + " has a negative or non-finite entry");
      }
    }
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    const double dev = std::abs(sum - 1.0);
    if (dev >= 1e-6) {
      throw DataError(what + ": row " + std::to_string(r) + " sums to " + format_double(sum));
    }
    if (dev > 1e-9) {
      for (double& v : row) v /= sum;
    }
  }
}

}  // namespace

std::filesystem::path artifact_path(const std::filesystem::path& dir, const std::string& name,
                                    const std::string& suffix) {
  return dir / (name + suffix);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  std::string line;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    line.clear();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) line += ' ';
      line += format_double(m(r, c));
    }
    line += '\n';
    out << line;
  }
}

Matrix parse_matrix(std::istream& in, const std::string& what) {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = split(line);
    if (rows == 0) {
      cols = tokens.size();
      if (cols == 0) throw DataError(what + ": first row is empty");
    } else if (tokens.size() != cols) {
      throw DataError(what + ": ragged row " + std::to_string(rows) + " has " +
                      std::to_string(tokens.size()) + " entries, expected " +
                      std::to_string(cols));
    }
    for (const auto& t : tokens) values.push_back(parse_number(t, what));
    ++rows;
  }
  if (rows == 0) throw DataError(what + ": no rows");
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.values().begin());
  return m;
}

Matrix read_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_matrix(in, path.string());
}

Matrix read_stochastic_matrix(const std::filesystem::path& path) {
  auto m = read_matrix(path);
  check_stochastic(m, path.string());
  return m;
}

void write_model(const TrainedModel& model, const std::filesystem::path& dir,
                 const std::string& name) {
  {
    auto path = artifact_path(dir, name, ".theta");
    auto out = open_output(path);
    write_matrix(out, model.theta);
    finish_output(out, path);
  }
  {
    auto path = artifact_path(dir, name, ".phi");
    auto out = open_output(path);
    write_matrix(out, model.phi);
    finish_output(out, path);
  }
  {
    auto path = artifact_path(dir, name, ".topWords");
    auto out = open_output(path);
    auto tops = top_words(model.phi, model.vocab, model.params.twords);
    for (std::size_t k = 0; k < tops.size(); ++k) {
      out << "Topic " << k << ":";
      for (const auto& w : tops[k]) out << ' ' << w;
      out << '\n';
    }
    finish_output(out, path);
  }
  {
    auto path = artifact_path(dir, name, ".topicAssignments");
    auto out = open_output(path);
    for (const auto& line : model.assignments) {
      for (std::size_t i = 0; i < line.size(); ++i) out << (i ? " " : "") << line[i];
      out << '\n';
    }
    finish_output(out, path);
  }
  {
    auto path = artifact_path(dir, name, ".paras");
    auto out = open_output(path);
    const auto& p = model.params;
    out << "model=" << model_name(model.kind) << '\n'
        << "K=" << p.num_topics << '\n'
        << "alpha=" << format_double(p.alpha) << '\n'
        << "beta=" << format_double(p.beta) << '\n'
        << "niters=" << p.niters << '\n'
        << "twords=" << p.twords << '\n'
        << "seed=" << p.seed << '\n';
    for (const auto& [key, value] : p.extras) out << key << '=' << format_double(value) << '\n';
    for (const auto& [key, value] : model.sources) out << key << '=' << value << '\n';
    if (!model.topic_weights.empty()) {
      out << "topic_weights=";
      for (std::size_t k = 0; k < model.topic_weights.size(); ++k) {
        out << (k ? " " : "") << format_double(model.topic_weights[k]);
      }
      out << '\n';
    }
    out << "vocab=";
    for (std::size_t w = 0; w < model.vocab.size(); ++w) {
      out << (w ? " " : "") << model.vocab.word(static_cast<int>(w));
    }
    out << '\n';
    finish_output(out, path);
  }
}

TrainedModel read_model(const std::filesystem::path& dir, const std::string& name) {
  TrainedModel model;
  const auto paras_path = artifact_path(dir, name, ".paras");
  const std::string what = paras_path.string();
  bool have_model = false;
  bool have_vocab = false;
  {
    auto in = open_input(paras_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw DataError(what + ": malformed line '" + line + "'");
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      if (key == "model") {
        auto kind = parse_model_kind(value);
        if (!kind) throw DataError(what + ": unknown model '" + value + "'");
        model.kind = *kind;
        have_model = true;
      } else if (key == "K") {
        model.params.num_topics = static_cast<int>(parse_integer(value, what));
      } else if (key == "alpha") {
        model.params.alpha = parse_number(value, what);
      } else if (key == "beta") {
        model.params.beta = parse_number(value, what);
      } else if (key == "niters") {
        model.params.niters = static_cast<int>(parse_integer(value, what));
      } else if (key == "twords") {
        model.params.twords = static_cast<int>(parse_integer(value, what));
      } else if (key == "seed") {
        model.params.seed = static_cast<std::uint64_t>(parse_integer(value, what));
      } else if (key == "corpus" || key == "vectors") {
        model.sources[key] = value;
      } else if (key == "topic_weights") {
        for (const auto& t : split(value)) model.topic_weights.push_back(parse_number(t, what));
      } else if (key == "vocab") {
        model.vocab = Vocabulary(split(value));
        have_vocab = true;
      } else {
        model.params.extras[key] = parse_number(value, what);
      }
    }
  }
  if (!have_model) throw DataError(what + ": missing model=");
  if (!have_vocab) throw DataError(what + ": missing vocab=");

  model.theta = read_stochastic_matrix(artifact_path(dir, name, ".theta"));
  model.phi = read_stochastic_matrix(artifact_path(dir, name, ".phi"));
  const auto K = static_cast<std::size_t>(model.params.num_topics);
  if (model.theta.cols() != K || model.phi.rows() != K) {
    throw DataError("theta/phi dimensions do not match K=" + std::to_string(K));
  }
  if (model.phi.cols() != model.vocab.size()) {
    throw DataError("phi has " + std::to_string(model.phi.cols()) + " columns but vocabulary has " +
                    std::to_string(model.vocab.size()) + " words");
  }
  if (!model.topic_weights.empty() && model.topic_weights.size() != K) {
    throw DataError(what + ": topic_weights length does not match K");
  }

  const auto assign_path = artifact_path(dir, name, ".topicAssignments");
  if (std::filesystem::exists(assign_path)) {
    auto in = open_input(assign_path);
    std::string line;
    while (std::getline(in, line)) {
      auto& row = model.assignments.emplace_back();
      for (const auto& t : split(line)) {
        row.push_back(static_cast<int>(parse_integer(t, assign_path.string())));
      }
    }
  }
  return model;
}

TrainedModel read_model(const std::filesystem::path& dir, const std::string& name,
                        const Vocabulary& vocab) {
  auto model = read_model(dir, name);
  if (!(model.vocab == vocab)) throw DataError("model vocabulary does not match the given vocabulary");
  return model;
}

void write_report(const std::filesystem::path& path,
                  const std::vector<std::pair<std::string, double>>& lines) {
  auto out = open_output(path);
  for (const auto& [key, value] : lines) out << key << ": " << format_double(value) << '\n';
  finish_output(out, path);
}

}  // namespace shortopic
