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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

#include "btsim/sim/time.hpp"

namespace btsim {

using EventHandle = std::uint64_t;
inline constexpr EventHandle kNoEvent = 0;

struct TraceEntry {
  SimTime time;
  EventHandle id;
  bool operator==(const TraceEntry&) const = default;
};

// Single-threaded discrete-event engine. Events at equal timestamps run in
// insertion order.
class Simulator {
 public:
  using Action = std::function<void()>;

  Simulator() = default;
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  SimTime now() const { return now_; }

  // Throws SimulationError if `at` precedes the current time.
  EventHandle schedule(SimTime at, Action action);
  EventHandle schedule_in(Duration delay, Action action) {
    return schedule(now_ + delay, std::move(action));
  }

  // Returns false unless the event was still pending.
  bool cancel(EventHandle handle);

  // Executes every event with time <= until; the clock ends at `until`.
  std::size_t run(SimTime until);
  // Executes until the queue drains.
  std::size_t run_all();

  std::size_t pending() const { return heap_.size() - cancelled_.size(); }
  std::uint64_t executed() const { return executed_; }

  // FNV-1a digest over (time, id) of every executed event.
  std::uint64_t trace_digest() const { return digest_; }
  void record_trace(std::vector<TraceEntry>* sink) { trace_ = sink; }

 private:
  struct Entry {
    SimTime time;
    EventHandle id;
    Action action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.time != b.time ? a.time > b.time : a.id > b.id;
    }
  };

  bool step(SimTime limit);

  SimTime now_ = 0;
  EventHandle next_id_ = 1;
  std::vector<Entry> heap_;
  std::unordered_set<EventHandle> live_;
  std::unordered_set<EventHandle> cancelled_;
  std::uint64_t executed_ = 0;
  std::uint64_t digest_ = 0xcbf29ce484222325ull;
  std::vector<TraceEntry>* trace_ = nullptr;
};

}  // namespace btsim
