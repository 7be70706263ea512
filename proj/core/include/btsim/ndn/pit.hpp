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

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "btsim/ndn/face.hpp"
#include "btsim/ndn/name.hpp"
#include "btsim/sim/simulator.hpp"

namespace btsim::ndn {

enum class RequestStatus : std::uint8_t { kSatisfied, kTimedOut, kUnroutable };

struct RequestResult {
  Name name;
  RequestStatus status;
  SimTime requested_at;
  SimTime completed_at;
  bool from_local_cache = false;
  unsigned retransmissions = 0;
};

using RequestCallback = std::function<void(const RequestResult&)>;

struct LocalRequest {
  SimTime requested_at;
  RequestCallback callback;
};

struct InRecord {
  FaceId face;
  std::uint32_t nonce;
};

struct PitEntry {
  Name name;
  std::vector<InRecord> in_records;
  std::set<std::uint32_t> nonces;
  std::vector<FaceId> out_faces;
  std::vector<LocalRequest> local_requests;
  unsigned retransmit_count = 0;
  unsigned max_retries = 4;
  Duration retry_interval = sec(1);
  Duration lifetime = sec(10);
  SimTime created = 0;
  EventHandle retry_timer = kNoEvent;
  EventHandle expiry_timer = kNoEvent;

  bool has_in_face(FaceId face) const;
};

// At most one entry per name.
class Pit {
 public:
  PitEntry* find(const Name& name);
  const PitEntry* find(const Name& name) const;
  // Throws if an entry for the name exists.
  PitEntry& insert(PitEntry entry);
  // Removes and returns the entry.
  PitEntry erase(const Name& name);

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<Name, PitEntry> entries_;
};

}  // namespace btsim::ndn
