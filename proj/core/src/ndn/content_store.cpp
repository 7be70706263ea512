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

#include "btsim/ndn/content_store.hpp"

namespace btsim::ndn {

ContentStore::ContentStore(std::size_t capacity, CsPolicy policy)
    : capacity_(capacity), policy_(policy) {}

const Data* ContentStore::find(const Name& name) {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  if (policy_ == CsPolicy::kLru) entries_.splice(entries_.end(), entries_, it->second);
  return &*it->second;
}

void ContentStore::insert(Data data) {
  if (capacity_ == 0) return;
  if (auto it = index_.find(data.name); it != index_.end()) {
    *it->second = std::move(data);
    if (policy_ == CsPolicy::kLru) entries_.splice(entries_.end(), entries_, it->second);
    return;
  }
  if (entries_.size() >= capacity_) {
    index_.erase(entries_.front().name);
    entries_.pop_front();
    ++evictions_;
  }
  entries_.push_back(std::move(data));
  index_.emplace(entries_.back().name, std::prev(entries_.end()));
}

}  // namespace btsim::ndn
