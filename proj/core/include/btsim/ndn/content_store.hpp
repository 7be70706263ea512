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
#include <list>
#include <unordered_map>

#include "btsim/ndn/packet.hpp"

namespace btsim::ndn {

enum class CsPolicy : std::uint8_t { kLru, kFifo };

// Bounded exact-match Data cache.
class ContentStore {
 public:
  explicit ContentStore(std::size_t capacity, CsPolicy policy = CsPolicy::kLru);

  // Exact-name lookup. A hit counts as a use for LRU ordering.
  const Data* find(const Name& name);
  bool contains(const Name& name) const { return index_.contains(name); }

  // Inserts or refreshes. Evicts the policy victim when full.
  void insert(Data data);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  CsPolicy policy() const { return policy_; }
  std::uint64_t evictions() const { return evictions_; }

 private:
  std::size_t capacity_;
  CsPolicy policy_;
  // Front is the next eviction victim.
  std::list<Data> entries_;
  std::unordered_map<Name, std::list<Data>::iterator, NameHash> index_;
  std::uint64_t evictions_ = 0;
};

}  // namespace btsim::ndn
