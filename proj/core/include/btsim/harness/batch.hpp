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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "btsim/harness/config.hpp"
#include "btsim/harness/scenario.hpp"

namespace btsim::harness {

struct RunSummary {
  std::string scenario;
  std::uint64_t seed = 0;
  double success_rate = 0;
  std::optional<Duration> p50;
  std::optional<Duration> p80;
  std::optional<Duration> p99;
  std::uint64_t total_tx = 0;
};

RunSummary summarize(const std::string& scenario, std::uint64_t seed,
                     const std::vector<ArrivalRecord>& arrivals,
                     const std::vector<TrafficRecord>& traffic);
RunSummary summarize(const RunResult& run);

// Writes arrivals.csv, traffic.csv, cdf.csv and manifest.json into `dir`.
void write_run_directory(const RunResult& run, const std::filesystem::path& dir);

// One row per run followed by mean, min and max rows per scenario, which
// carry the aggregate name in the seed column.
void write_summary_csv(std::ostream& out, const std::vector<RunSummary>& runs);

struct BatchOutcome {
  std::vector<RunSummary> runs;
  std::vector<std::filesystem::path> run_dirs;
};

// Runs every scenario x seed pair on up to `jobs` threads. An empty seed list
// uses each scenario's own seed. Output is one directory per run plus
// summary.csv under `out`.
BatchOutcome run_batch(const BatchConfig& batch, const std::filesystem::path& out,
                       std::ostream* progress = nullptr);

// Recomputes cdf.csv for every run directory below `out` and rewrites
// summary.csv from the stored arrivals and traffic.
std::vector<RunSummary> report(const std::filesystem::path& out);

}  // namespace btsim::harness
