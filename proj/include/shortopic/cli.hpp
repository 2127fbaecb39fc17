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

#include <ostream>
#include <span>
#include <string>

namespace shortopic::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kIoError = 3 };

// Runs one subcommand. `args` excludes the program name, e.g.
// {"train", "-model", "BTM", "-corpus", "dataset/test.txt"}.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// Every subcommand and flag with its default.
std::string usage();

}  // namespace shortopic::cli
