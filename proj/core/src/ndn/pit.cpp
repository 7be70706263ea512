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

#include "btsim/ndn/pit.hpp"

#include <algorithm>

#include "btsim/sim/error.hpp"

namespace btsim::ndn {

bool PitEntry::has_in_face(FaceId face) const {
  return std::any_of(in_records.begin(), in_records.end(),
                     [face](const InRecord& r) { return r.face == face; });
}

PitEntry* Pit::find(const Name& name) {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

const PitEntry* Pit::find(const Name& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

PitEntry& Pit::insert(PitEntry entry) {
  Name key = entry.name;
  auto [it, inserted] = entries_.emplace(std::move(key), std::move(entry));
  if (!inserted) throw SimulationError("duplicate PIT entry for " + it->first.to_uri());
  return it->second;
}

PitEntry Pit::erase(const Name& name) {
  auto node = entries_.extract(name);
  if (node.empty()) throw SimulationError("no PIT entry for " + name.to_uri());
  return std::move(node.mapped());
}

}  // namespace btsim::ndn
