// Copyright 2026 The btsim Authors
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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace btsim {

// Seeded pseudo-random stream. Wraps mt19937_64 and implements its own
// distributions so draws are reproducible across standard library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  // Independent sub-stream keyed by (seed, labels...). Distinct label tuples
  // give uncorrelated streams; the same tuple always gives the same stream.
  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> labels);

  std::uint64_t next_u64() { return engine_(); }
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }

  // Uniform integer in [lo, hi], unbiased.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  // Uniform double in [0, 1).
  double uniform01();
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace btsim
