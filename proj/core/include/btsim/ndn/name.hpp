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

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace btsim::ndn {

// Hierarchical name: an ordered list of opaque byte-string components.
class Name {
 public:
  Name() = default;
  explicit Name(std::vector<std::string> components) : components_(std::move(components)) {}

  // Parses "/a/b/c". Empty components are skipped; "/" is the empty name.
  static Name parse(std::string_view uri);

  bool empty() const { return components_.empty(); }
  std::size_t size() const { return components_.size(); }
  const std::string& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<std::string>& components() const { return components_; }

  Name append(std::string_view component) const;
  Name prefix(std::size_t n) const;
  // Component-wise prefix test; a name is a prefix of itself.
  bool is_prefix_of(const Name& other) const;

  std::string to_uri() const;
  // Encoded Name TLV size (type and length octets included).
  std::size_t tlv_size() const;

  friend auto operator<=>(const Name&, const Name&) = default;
  friend bool operator==(const Name&, const Name&) = default;

 private:
  std::vector<std::string> components_;
};

struct NameHash {
  std::size_t operator()(const Name& name) const;
};

}  // namespace btsim::ndn
