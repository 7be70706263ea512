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

#include "btsim/sim/simulator.hpp"

#include <algorithm>
#include <string>

#include "btsim/sim/error.hpp"

namespace btsim {

EventHandle Simulator::schedule(SimTime at, Action action) {
  if (at < now_) {
    throw SimulationError("event scheduled at t=" + std::to_string(at) +
                          "us before current time " + std::to_string(now_) + "us");
  }
  const EventHandle id = next_id_++;
  heap_.push_back(Entry{at, id, std::move(action)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  live_.insert(id);
  return id;
}

bool Simulator::cancel(EventHandle handle) {
  if (live_.erase(handle) == 0) return false;
  cancelled_.insert(handle);
  return true;
}

bool Simulator::step(SimTime limit) {
  while (!heap_.empty()) {
    if (heap_.front().time > limit) return false;
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry entry = std::move(heap_.back());
    heap_.pop_back();
    if (cancelled_.erase(entry.id) != 0) continue;
    live_.erase(entry.id);
    now_ = entry.time;
    ++executed_;
    for (std::uint64_t word : {entry.time, entry.id}) {
      for (int i = 0; i < 8; ++i) {
        digest_ ^= (word >> (8 * i)) & 0xff;
        digest_ *= 0x100000001b3ull;
      }
    }
    if (trace_ != nullptr) trace_->push_back(TraceEntry{entry.time, entry.id});
    entry.action();
    return true;
  }
  return false;
}

std::size_t Simulator::run(SimTime until) {
  std::size_t count = 0;
  while (step(until)) ++count;
  if (until > now_) now_ = until;
  return count;
}

std::size_t Simulator::run_all() {
  std::size_t count = 0;
  while (step(kNever)) ++count;
  return count;
}

}  // namespace btsim
