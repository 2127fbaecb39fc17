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

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "shortopic/corpus.hpp"
#include "shortopic/sampling.hpp"

namespace shortopic {

// Artifact suffixes written by write_model, in write order.
inline constexpr const char* kModelSuffixes[] = {".theta", ".phi", ".topWords",
                                                 ".topicAssignments", ".paras"};

std::filesystem::path artifact_path(const std::filesystem::path& dir, const std::string& name,
                                    const std::string& suffix);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

// One row per line, entries separated by single spaces.
void write_matrix(std::ostream& out, const Matrix& m);
// Throws DataError on ragged rows or unparsable entries.
Matrix parse_matrix(std::istream& in, const std::string& what);
Matrix read_matrix(const std::filesystem::path& path);
// read_matrix plus the row-stochastic check used for theta/phi: rows off by
// at least 1e-6 are an error, rows off by more than 1e-9 are renormalized.
Matrix read_stochastic_matrix(const std::filesystem::path& path);

// Writes <name>.theta, .phi, .topWords, .topicAssignments and .paras into
// `dir`. Throws IoError on failure.
void write_model(const TrainedModel& model, const std::filesystem::path& dir,
                 const std::string& name);

// Reads .paras, .theta, .phi (and .topicAssignments when present). The
// vocabulary is taken from .paras; the overload taking `vocab` checks that
// it matches.
TrainedModel read_model(const std::filesystem::path& dir, const std::string& name);
TrainedModel read_model(const std::filesystem::path& dir, const std::string& name,
                        const Vocabulary& vocab);

// Writes "key: value" lines.
void write_report(const std::filesystem::path& path,
                  const std::vector<std::pair<std::string, double>>& lines);

}  // namespace shortopic
