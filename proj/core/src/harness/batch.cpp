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

#include "btsim/harness/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "btsim/harness/csv.hpp"
#include "btsim/sim/error.hpp"
#include "json.hpp"

namespace btsim::harness {
namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return in;
}

void write_cdf_file(const fs::path& path, const std::vector<ArrivalRecord>& arrivals) {
  auto out = open_out(path);
  if (delivered_latencies(arrivals).empty()) {
    write_cdf_csv(out, {});
  } else {
    write_cdf_csv(out, compute_cdf(arrivals));
  }
}

std::string fmt_double(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

std::string fmt_opt(const std::optional<Duration>& v) {
  return v ? std::to_string(*v) : std::string();
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create directory " + dir.string());
  }
}

}  // namespace

RunSummary summarize(const std::string& scenario, std::uint64_t seed,
                     const std::vector<ArrivalRecord>& arrivals,
                     const std::vector<TrafficRecord>& traffic) {
  RunSummary s;
  s.scenario = scenario;
  s.seed = seed;
  s.success_rate = success_rate(arrivals);
  const std::vector<Duration> lat = delivered_latencies(arrivals);
  s.p50 = percentile(lat, 50);
  s.p80 = percentile(lat, 80);
  s.p99 = percentile(lat, 99);
  s.total_tx = total_tx(traffic);
  return s;
}

RunSummary summarize(const RunResult& run) {
  return summarize(run.config.name, run.config.seed, run.arrivals, run.traffic);
}

void write_run_directory(const RunResult& run, const fs::path& dir) {
  ensure_directory(dir);
  {
    auto out = open_out(dir / "arrivals.csv");
    write_arrivals_csv(out, run.arrivals);
  }
  {
    auto out = open_out(dir / "traffic.csv");
    write_traffic_csv(out, run.traffic);
  }
  write_cdf_file(dir / "cdf.csv", run.arrivals);
  nlohmann::json manifest;
  manifest["run_id"] = run.config.run_id();
  manifest["config"] = nlohmann::json::parse(to_json_string(run.config));
  manifest["frames_transmitted"] = run.frames_transmitted;
  manifest["frames_delivered"] = run.frames_delivered;
  manifest["events_executed"] = run.events_executed;
  manifest["trace_digest"] = run.trace_digest;
  manifest["truncated"] = run.truncated;
  auto out = open_out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<RunSummary>& runs) {
  out << "scenario,seed,success_rate,p50_us,p80_us,p99_us,total_tx\n";
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunSummary*>> groups;
  for (const auto& r : runs) {
    out << r.scenario << ',' << r.seed << ',' << fmt_double(r.success_rate, 6) << ','
        << fmt_opt(r.p50) << ',' << fmt_opt(r.p80) << ',' << fmt_opt(r.p99) << ','
        << r.total_tx << '\n';
    if (!groups.contains(r.scenario)) order.push_back(r.scenario);
    groups[r.scenario].push_back(&r);
  }
  for (const auto& name : order) {
    const auto& g = groups[name];
    auto column = [&](auto get) {
      std::vector<double> v;
      for (const RunSummary* r : g) {
        if (auto x = get(*r)) v.push_back(static_cast<double>(*x));
      }
      return v;
    };
    const std::vector<std::vector<double>> cols = {
        column([](const RunSummary& r) { return std::optional<double>(r.success_rate); }),
        column([](const RunSummary& r) { return r.p50; }),
        column([](const RunSummary& r) { return r.p80; }),
        column([](const RunSummary& r) { return r.p99; }),
        column([](const RunSummary& r) { return std::optional<double>(r.total_tx); }),
    };
    for (const char* agg : {"mean", "min", "max"}) {
      out << name << ',' << agg;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        out << ',';
        const auto& v = cols[i];
        if (v.empty()) continue;
        double x = 0;
        if (std::string_view(agg) == "mean") {
          for (double d : v) x += d;
          x /= static_cast<double>(v.size());
        } else if (std::string_view(agg) == "min") {
          x = *std::min_element(v.begin(), v.end());
        } else {
          x = *std::max_element(v.begin(), v.end());
        }
        out << fmt_double(x, i == 0 ? 6 : 1);
      }
      out << '\n';
    }
  }
}

BatchOutcome run_batch(const BatchConfig& batch, const fs::path& out, std::ostream* progress) {
  std::vector<ScenarioConfig> runs;
  for (const auto& s : batch.scenarios) {
    if (batch.seeds.empty()) {
      runs.push_back(s.resolved());
      continue;
    }
    for (std::uint64_t seed : batch.seeds) {
      ScenarioConfig c = s;
      c.seed = seed;
      runs.push_back(c.resolved());
    }
  }
  ensure_directory(out);

  BatchOutcome outcome;
  outcome.runs.resize(runs.size());
  outcome.run_dirs.resize(runs.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        const RunResult result = run_scenario(runs[i]);
        const fs::path dir = out / runs[i].run_id();
        write_run_directory(result, dir);
        std::lock_guard lock(mu);
        outcome.runs[i] = summarize(result);
        outcome.run_dirs[i] = dir;
        if (progress) {
          *progress << "finished " << runs[i].run_id() << " success_rate="
                    << fmt_double(outcome.runs[i].success_rate, 4) << '\n';
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::clamp<unsigned>(batch.jobs, 1, 64);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::min<std::size_t>(jobs, runs.size()); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  auto summary = open_out(out / "summary.csv");
  write_summary_csv(summary, outcome.runs);
  return outcome;
}

std::vector<RunSummary> report(const fs::path& out) {
  if (!fs::is_directory(out)) throw ConfigError("no such output directory " + out.string());
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.is_directory() && fs::exists(entry.path() / "manifest.json")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw ConfigError("no run directories under " + out.string());
  std::vector<RunSummary> runs;
  for (const auto& dir : dirs) {
    nlohmann::json manifest;
    try {
      auto in = open_in(dir / "manifest.json");
      manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(dir.string() + "/manifest.json: " + e.what());
    }
    const auto& cfg = manifest.at("config");
    auto arrivals_in = open_in(dir / "arrivals.csv");
    const auto arrivals = read_arrivals_csv(arrivals_in);
    auto traffic_in = open_in(dir / "traffic.csv");
    const auto traffic = read_traffic_csv(traffic_in);
    write_cdf_file(dir / "cdf.csv", arrivals);
    runs.push_back(summarize(cfg.at("name").get<std::string>(),
                             cfg.at("seed").get<std::uint64_t>(), arrivals, traffic));
  }
  auto summary = open_out(out / "summary.csv");
  write_summary_csv(summary, runs);
  return runs;
}

}  // namespace btsim::harness
