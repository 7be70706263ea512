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
#include <limits>

namespace btsim {

// Simulation clock in microseconds since start. Durations share the unit.
using SimTime = std::uint64_t;
using Duration = std::uint64_t;

inline constexpr SimTime kNever = std::numeric_limits<SimTime>::max();

constexpr Duration usec(std::uint64_t v) { return v; }
constexpr Duration msec(std::uint64_t v) { return v * 1000; }
constexpr Duration sec(std::uint64_t v) { return v * 1000 * 1000; }

constexpr double to_ms(Duration d) { return static_cast<double>(d) / 1000.0; }

}  // namespace btsim
