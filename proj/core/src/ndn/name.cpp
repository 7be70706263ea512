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

#include "btsim/ndn/name.hpp"

#include <functional>

namespace btsim::ndn {
namespace {

std::size_t tlv_length_octets(std::size_t length) {
  if (length < 253) return 1;
  if (length <= 0xFFFF) return 3;
  return 5;
}

std::size_t tlv(std::size_t value_length) {
  return 1 + tlv_length_octets(value_length) + value_length;
}

}  // namespace

Name Name::parse(std::string_view uri) {
  std::vector<std::string> components;
  std::size_t pos = 0;
  while (pos <= uri.size()) {
    std::size_t next = uri.find('/', pos);
    if (next == std::string_view::npos) next = uri.size();
    if (next > pos) components.emplace_back(uri.substr(pos, next - pos));
    pos = next + 1;
  }
  return Name(std::move(components));
}

Name Name::append(std::string_view component) const {
  Name out = *this;
  out.components_.emplace_back(component);
  return out;
}

Name Name::prefix(std::size_t n) const {
  if (n >= components_.size()) return *this;
  return Name(std::vector<std::string>(components_.begin(),
                                       components_.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool Name::is_prefix_of(const Name& other) const {
  if (components_.size() > other.components_.size()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i] != other.components_[i]) return false;
  }
  return true;
}

std::string Name::to_uri() const {
  if (components_.empty()) return "/";
  std::string out;
  for (const auto& c : components_) {
    out += '/';
    out += c;
  }
  return out;
}

std::size_t Name::tlv_size() const {
  std::size_t inner = 0;
  for (const auto& c : components_) inner += tlv(c.size());
  return tlv(inner);
}

std::size_t NameHash::operator()(const Name& name) const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& c : name.components()) {
    h ^= std::hash<std::string>{}(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace btsim::ndn
