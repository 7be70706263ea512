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

#include "btsim/ndn/fib.hpp"

#include <algorithm>

namespace btsim::ndn {

void Fib::add_route(const Name& prefix, FaceId face) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const FibEntry& e) { return e.prefix == prefix; });
  if (it == entries_.end()) {
    entries_.push_back({prefix, {face}});
    return;
  }
  if (std::find(it->faces.begin(), it->faces.end(), face) == it->faces.end()) {
    it->faces.push_back(face);
  }
}

void Fib::remove_prefix(const Name& prefix) {
  std::erase_if(entries_, [&](const FibEntry& e) { return e.prefix == prefix; });
}

const FibEntry* Fib::longest_prefix_match(const Name& name) const {
  const FibEntry* best = nullptr;
  for (const auto& e : entries_) {
    if (e.prefix.is_prefix_of(name) && (!best || e.prefix.size() > best->prefix.size())) {
      best = &e;
    }
  }
  return best;
}

}  // namespace btsim::ndn
