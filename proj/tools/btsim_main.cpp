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

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "btsim/harness/batch.hpp"
#include "btsim/harness/config.hpp"
#include "btsim/sim/error.hpp"

namespace {

using namespace btsim;
using namespace btsim::harness;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
  std::string config;
  std::string preset;
  std::string scenario;
  std::vector<std::uint64_t> seeds;
  std::string out = "out";
  unsigned jobs = 1;
};

BatchConfig load(const Options& o) {
  if (!o.config.empty() && !o.preset.empty()) {
    throw ConfigError("--config and --preset are mutually exclusive");
  }
  BatchConfig batch;
  if (!o.preset.empty()) {
    if (o.preset != "paper-suite") throw ConfigError("unknown preset '" + o.preset + "'");
    batch.scenarios = evaluation_grid();
  } else if (!o.config.empty()) {
    batch = load_batch_file(o.config);
  } else {
    throw ConfigError("one of --config or --preset is required");
  }
  if (!o.seeds.empty()) batch.seeds = o.seeds;
  return batch;
}

void print_summary(const std::vector<RunSummary>& runs) {
  std::printf("%-36s %6s %8s %10s %10s %10s %9s\n", "scenario", "seed", "success", "p50_us",
              "p80_us", "p99_us", "total_tx");
  auto opt = [](const std::optional<Duration>& d) {
    return d ? std::to_string(*d) : std::string("-");
  };
  for (const auto& r : runs) {
    std::printf("%-36s %6llu %8.4f %10s %10s %10s %9llu\n", r.scenario.c_str(),
                static_cast<unsigned long long>(r.seed), r.success_rate, opt(r.p50).c_str(),
                opt(r.p80).c_str(), opt(r.p99).c_str(),
                static_cast<unsigned long long>(r.total_tx));
  }
}

int cmd_run(const Options& o) {
  BatchConfig batch = load(o);
  std::vector<ScenarioConfig> picked;
  for (const auto& s : batch.scenarios) {
    const std::string name = s.name.empty() ? s.label() : s.name;
    if (o.scenario.empty() || o.scenario == name) picked.push_back(s);
  }
  if (picked.size() != 1) {
    throw ConfigError(picked.empty() ? "no scenario named '" + o.scenario + "'"
                                     : "config holds several scenarios; pick one with --scenario");
  }
  ScenarioConfig cfg = picked.front();
  if (o.seeds.size() > 1) throw ConfigError("run takes a single --seed");
  if (!o.seeds.empty()) cfg.seed = o.seeds.front();
  BatchConfig single;
  single.scenarios = {cfg};
  const BatchOutcome outcome = run_batch(single, o.out, nullptr);
  print_summary(outcome.runs);
  std::cout << "wrote " << outcome.run_dirs.front().string() << '\n';
  return kExitOk;
}

int cmd_batch(const Options& o) {
  BatchConfig batch = load(o);
  if (o.jobs > 0) batch.jobs = std::max(batch.jobs, o.jobs);
  const BatchOutcome outcome = run_batch(batch, o.out, &std::cerr);
  print_summary(outcome.runs);
  std::cout << "wrote " << (std::filesystem::path(o.out) / "summary.csv").string() << '\n';
  return kExitOk;
}

int cmd_report(const Options& o) {
  print_summary(report(o.out));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"btsim: BT mesh and NDN discrete-event simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario or batch JSON file");
    sub->add_option("--preset", o.preset, "Built-in scenario set")
        ->check(CLI::IsMember({"paper-suite"}));
    sub->add_option("--seed", o.seeds, "Seed override (repeatable for batch)");
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  };
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  add_common(run);
  run->add_option("--scenario", o.scenario, "Scenario name when the config holds several");
  CLI::App* batch = app.add_subcommand("batch", "Run every scenario for every seed");
  add_common(batch);
  batch->add_option("--jobs", o.jobs, "Concurrent simulation instances")->capture_default_str();
  CLI::App* rep = app.add_subcommand("report", "Recompute cdf.csv and summary.csv from runs");
  rep->add_option("--out", o.out, "Output directory of a previous batch")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(o);
    if (batch->parsed()) return cmd_batch(o);
    return cmd_report(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
