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

#include "btsim/bticn/sleep_schedule.hpp"

#include "btsim/sim/error.hpp"

namespace btsim::bticn {

SleepSchedule::SleepSchedule(Duration cycle, Duration awake_window, SimTime phase)
    : cycle_(cycle), window_(awake_window), phase_(phase) {
  if (awake_window == 0 || awake_window >= cycle) {
    throw ConfigError("awake window must be positive and shorter than the sleep cycle");
  }
}

bool SleepSchedule::awake(SimTime t) const {
  return t >= phase_ && (t - phase_) % cycle_ < window_;
}

bool SleepSchedule::awake_throughout(SimTime from, SimTime to) const {
  if (to < from || !awake(from)) return false;
  return to < window_end(from);
}

SimTime SleepSchedule::next_wake(SimTime t) const {
  if (t <= phase_) return phase_;
  const SimTime offset = (t - phase_) % cycle_;
  return offset == 0 ? t : t - offset + cycle_;
}

SimTime SleepSchedule::window_end(SimTime t) const {
  if (!awake(t)) throw SimulationError("window_end queried while asleep");
  return t - (t - phase_) % cycle_ + window_;
}

}  // namespace btsim::bticn
