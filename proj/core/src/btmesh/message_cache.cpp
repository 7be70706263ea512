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

#include "btsim/btmesh/message_cache.hpp"

#include "btsim/sim/error.hpp"

namespace btsim::btmesh {

MessageCache::MessageCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("message cache capacity must be positive");
}

bool MessageCache::insert(const PduKey& key) {
  if (keys_.contains(key)) return false;
  if (order_.size() == capacity_) {
    keys_.erase(order_.front());
    order_.pop_front();
  }
  order_.push_back(key);
  keys_.insert(key);
  return true;
}

}  // namespace btsim::btmesh
