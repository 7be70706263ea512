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

#include <iosfwd>
#include <vector>

#include "btsim/harness/metrics.hpp"

namespace btsim::harness {

void write_arrivals_csv(std::ostream& out, const std::vector<ArrivalRecord>& records);
void write_traffic_csv(std::ostream& out, const std::vector<TrafficRecord>& traffic);
void write_cdf_csv(std::ostream& out, const std::vector<CdfPoint>& cdf);

// Inverse of the writers. Throw ConfigError on a bad header or row.
std::vector<ArrivalRecord> read_arrivals_csv(std::istream& in);
std::vector<TrafficRecord> read_traffic_csv(std::istream& in);

}  // namespace btsim::harness
