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

#include <vector>

#include "btsim/ndn/face.hpp"
#include "btsim/ndn/name.hpp"

namespace btsim::ndn {

struct FibEntry {
  Name prefix;
  std::vector<FaceId> faces;
};

class Fib {
 public:
  // Appends `face` to the entry for `prefix`, creating it if needed.
  void add_route(const Name& prefix, FaceId face);
  void remove_prefix(const Name& prefix);

  // Entry with the longest component-wise prefix of `name`, or nullptr.
  const FibEntry* longest_prefix_match(const Name& name) const;

  std::size_t size() const { return entries_.size(); }
  const std::vector<FibEntry>& entries() const { return entries_; }

 private:
  std::vector<FibEntry> entries_;
};

}  // namespace btsim::ndn
