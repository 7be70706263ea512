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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "btsim/harness/config.hpp"
#include "btsim/harness/scenario.hpp"
#include "btsim/ndn/content_store.hpp"
#include "btsim/sim/random.hpp"
#include "btsim/sim/simulator.hpp"

namespace {

using namespace btsim;

void BM_EventQueue(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<SimTime> times(n);
  for (auto& t : times) t = rng.uniform(0, sec(100));
  for (auto _ : state) {
    Simulator sim;
    std::uint64_t sum = 0;
    for (SimTime t : times) sim.schedule(t, [&sum] { ++sum; });
    sim.run_all();
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_EventQueue)->Arg(1 << 10)->Arg(1 << 16);

void BM_EventQueueWithCancel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    Simulator sim;
    std::vector<EventHandle> handles;
    handles.reserve(n);
    for (std::size_t i = 0; i < n; ++i) handles.push_back(sim.schedule(i * 10, [] {}));
    for (std::size_t i = 0; i < n; i += 2) sim.cancel(handles[i]);
    benchmark::DoNotOptimize(sim.run_all());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_EventQueueWithCancel)->Arg(1 << 14);

void BM_ContentStore(benchmark::State& state) {
  const auto policy = state.range(0) == 0 ? ndn::CsPolicy::kLru : ndn::CsPolicy::kFifo;
  std::vector<ndn::Name> names;
  for (int i = 0; i < 256; ++i) names.push_back(ndn::Name::parse("/bench/" + std::to_string(i % 16) + "/" + std::to_string(i)));
  Rng rng(2);
  ndn::ContentStore cs(30, policy);
  std::uint64_t hits = 0;
  for (auto _ : state) {
    const ndn::Name& n = names[rng.uniform(0, names.size() - 1)];
    if (cs.find(n) != nullptr) {
      ++hits;
    } else {
      cs.insert(ndn::Data{n, {1, 2, 3, 4}});
    }
  }
  state.counters["hit_rate"] = static_cast<double>(hits) / static_cast<double>(state.iterations());
}
BENCHMARK(BM_ContentStore)->Arg(0)->Arg(1);

void BM_Scenario(benchmark::State& state) {
  const auto suite = harness::evaluation_grid();
  const auto& cfg = suite.at(static_cast<std::size_t>(state.range(0)));
  state.SetLabel(cfg.label());
  for (auto _ : state) {
    const auto r = harness::run_scenario(cfg);
    benchmark::DoNotOptimize(r.frames_transmitted);
  }
}
BENCHMARK(BM_Scenario)->DenseRange(0, 7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
