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

#include "btsim/sim/time.hpp"

namespace btsim::bticn {

// Periodic duty cycle: awake during [phase + k*cycle, phase + k*cycle + window)
// for every k >= 0, asleep otherwise (including before `phase`).
class SleepSchedule {
 public:
  // Throws ConfigError unless 0 < awake_window < cycle.
  SleepSchedule(Duration cycle, Duration awake_window, SimTime phase = 0);

  Duration cycle() const { return cycle_; }
  Duration awake_window() const { return window_; }
  SimTime phase() const { return phase_; }

  bool awake(SimTime t) const;
  // True if [from, to] lies inside a single awake window.
  bool awake_throughout(SimTime from, SimTime to) const;
  // Start of the first awake window beginning at or after `t`.
  SimTime next_wake(SimTime t) const;
  // End of the awake window containing `t`; requires awake(t).
  SimTime window_end(SimTime t) const;

 private:
  Duration cycle_;
  Duration window_;
  SimTime phase_;
};

}  // namespace btsim::bticn
