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
#include <cstdint>
#include <random>

namespace shortopic {

// Seeded random stream backed by MT19937-64. The engine's output sequence is
// fixed by the C++ standard (the 10000th draw from the default seed 5489 is
// 9981545732273789042), and the conversions below use only integer
// arithmetic and a power-of-two scale, so draws are identical on every
// platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n). Consumes exactly one draw.
  std::size_t uniform_index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer applied to (seed, stream). Gives independent,
// reproducible sub-stream seeds, e.g. one per document in parallel loops.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace shortopic
