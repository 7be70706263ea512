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
#include <deque>
#include <unordered_set>

#include "btsim/btmesh/pdu.hpp"

namespace btsim::btmesh {

// Bounded FIFO of recently seen (src, seq) keys. Payloads are not cached.
class MessageCache {
 public:
  explicit MessageCache(std::size_t capacity);

  bool contains(const PduKey& key) const { return keys_.contains(key); }
  // Returns false if the key was already present. Evicts the oldest key when
  // full.
  bool insert(const PduKey& key);

  std::size_t size() const { return order_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<PduKey> order_;
  std::unordered_set<PduKey, PduKeyHash> keys_;
};

}  // namespace btsim::btmesh
