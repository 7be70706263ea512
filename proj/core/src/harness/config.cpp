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

#include "btsim/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "btsim/btmesh/pdu.hpp"
#include "btsim/sim/error.hpp"
#include "json.hpp"

namespace btsim::harness {
namespace {

using nlohmann::json;

template <typename E>
struct EnumName {
  E value;
  const char* name;
};

constexpr EnumName<Stack> kStacks[] = {
    {Stack::kBtMesh, "btmesh"}, {Stack::kNdn, "ndn"}, {Stack::kBtIcn, "bticn"}};
constexpr EnumName<TopologyKind> kTopologies[] = {{TopologyKind::kFullMesh, "full-mesh"},
                                                  {TopologyKind::kLine, "line"}};
constexpr EnumName<Pattern> kPatterns[] = {{Pattern::kManyToOne, "many-to-one"},
                                           {Pattern::kOneToMany, "one-to-many"}};
constexpr EnumName<Interference> kInterference[] = {{Interference::kTopology, "topology"},
                                                     {Interference::kFullMesh, "full-mesh"}};
constexpr EnumName<ndn::CsPolicy> kPolicies[] = {{ndn::CsPolicy::kLru, "lru"},
                                                 {ndn::CsPolicy::kFifo, "fifo"}};

template <typename E, std::size_t N>
std::string name_of(const EnumName<E> (&table)[N], E value) {
  for (const auto& e : table) {
    if (e.value == value) return e.name;
  }
  return "?";
}

template <typename E, std::size_t N>
E parse_enum(const EnumName<E> (&table)[N], const std::string& text, const std::string& where) {
  for (const auto& e : table) {
    if (text == e.name) return e.value;
  }
  std::string allowed;
  for (const auto& e : table) allowed += std::string(allowed.empty() ? "" : ", ") + e.name;
  throw ConfigError(where + ": unknown value '" + text + "' (expected one of " + allowed + ")");
}

// Reads typed fields from a JSON object and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  template <typename T>
  void number(const char* key, T& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number()) throw ConfigError(where(key) + ": expected a number");
    if constexpr (std::is_integral_v<T>) {
      if (!v->is_number_integer() || (v->is_number_integer() && v->get<std::int64_t>() < 0 &&
                                      std::is_unsigned_v<T>)) {
        throw ConfigError(where(key) + ": expected a non-negative integer");
      }
      out = v->get<T>();
    } else {
      out = v->get<T>();
    }
  }

  void flag(const char* key, bool& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_boolean()) throw ConfigError(where(key) + ": expected true or false");
    out = v->get<bool>();
  }

  void text(const char* key, std::string& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) throw ConfigError(where(key) + ": expected a string");
    out = v->get<std::string>();
  }

  template <typename E, std::size_t N>
  void choice(const char* key, const EnumName<E> (&table)[N], E& out) {
    std::string s;
    text(key, s);
    if (!s.empty()) out = parse_enum(table, s, where(key));
  }

  void duration(const char* key, Duration& out) {
    const json* v = take(key);
    if (v) out = to_duration(*v, key);
  }

  void duration(const char* key, std::optional<Duration>& out) {
    const json* v = take(key);
    if (v) out = to_duration(*v, key);
  }

  const json* child(const char* key) { return take(key); }
  std::string where(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
    }
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  Duration to_duration(const json& v, const char* key) const {
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      return v.get<Duration>();
    }
    if (v.is_string()) {
      try {
        return parse_duration(v.get<std::string>());
      } catch (const ConfigError& e) {
        throw ConfigError(where(key) + ": " + e.what());
      }
    }
    throw ConfigError(where(key) + ": expected a duration");
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_medium(const json& j, MediumConfig& m) {
  ObjectReader r(j, "medium");
  r.number("adv_loss_probability", m.adv_loss_probability);
  r.number("dot154_loss_probability", m.dot154_loss_probability);
  r.duration("propagation_delay", m.propagation_delay);
  r.flag("keep_frame_log", m.keep_frame_log);
  r.finish();
}

void read_mesh(const json& j, ScenarioConfig& cfg) {
  ObjectReader r(j, "btmesh");
  btmesh::MeshConfig& m = cfg.mesh;
  if (const json* ttl = r.child("ttl")) {
    if (!ttl->is_number_unsigned()) throw ConfigError("btmesh.ttl: expected an integer");
    cfg.mesh_ttl = ttl->get<unsigned>();
  }
  r.number("cache_capacity", m.cache_capacity);
  r.number("friend_queue_capacity", m.friend_queue_capacity);
  r.number("adv_events", m.adv_events);
  r.duration("adv_interval", m.adv_interval);
  r.duration("adv_jitter", m.adv_jitter);
  r.number("frame_overhead_bytes", m.frame_overhead_bytes);
  r.duration("scan_window", m.scan_window);
  r.flag("relay", m.relay);
  r.flag("local_first", m.local_first);
  r.finish();
}

void read_mac(const json& j, CsmaConfig& m) {
  ObjectReader r(j, "ndn.mac");
  r.duration("backoff_slot", m.backoff_slot);
  r.number("min_be", m.min_be);
  r.number("max_be", m.max_be);
  r.number("max_csma_backoffs", m.max_csma_backoffs);
  r.number("max_frame_retries", m.max_frame_retries);
  r.duration("cca_duration", m.cca_duration);
  r.duration("turnaround", m.turnaround);
  r.duration("ack_timeout", m.ack_timeout);
  r.number("overhead_bytes", m.overhead_bytes);
  r.number("ack_bytes", m.ack_bytes);
  r.flag("drop_on_channel_access_failure", m.drop_on_channel_access_failure);
  r.number("queue_limit", m.queue_limit);
  r.finish();
}

void read_ndn(const json& j, ndn::NdnNetworkConfig& n) {
  ObjectReader r(j, "ndn");
  r.number("cs_capacity", n.forwarder.cs_capacity);
  r.choice("cs_policy", kPolicies, n.forwarder.cs_policy);
  r.number("max_retries", n.forwarder.max_retries);
  r.duration("retry_interval", n.forwarder.retry_interval);
  r.duration("interest_lifetime", n.forwarder.interest_lifetime);
  r.flag("relay_retransmit", n.forwarder.relay_retransmit);
  r.flag("broadcast_face", n.broadcast_face);
  if (const json* mac = r.child("mac")) read_mac(*mac, n.mac);
  r.finish();
}

void read_bticn(const json& j, bticn::BtIcnConfig& b) {
  ObjectReader r(j, "bticn");
  r.duration("cycle", b.cycle);
  r.duration("awake_window", b.awake_window);
  r.duration("long_lived_lifetime", b.long_lived_lifetime);
  r.duration("repeat_after", b.repeat_after);
  r.number("max_repeats", b.max_repeats);
  r.finish();
}

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig cfg;
  ObjectReader r(j, "scenario");
  r.text("name", cfg.name);
  r.choice("stack", kStacks, cfg.stack);
  r.choice("topology", kTopologies, cfg.topology);
  r.number("nodes", cfg.nodes);
  r.choice("pattern", kPatterns, cfg.pattern);
  r.choice("interference", kInterference, cfg.interference);
  r.number("items_per_producer", cfg.items_per_producer);
  r.duration("publish_interval", cfg.publish_interval);
  r.duration("publish_jitter", cfg.publish_jitter);
  r.duration("consumer_jitter", cfg.consumer_jitter);
  r.number("payload_bytes", cfg.payload_bytes);
  r.number("seed", cfg.seed);
  r.duration("duration_limit", cfg.duration_limit);
  if (const json* m = r.child("medium")) read_medium(*m, cfg.medium);
  if (const json* m = r.child("btmesh")) read_mesh(*m, cfg);
  if (const json* m = r.child("ndn")) read_ndn(*m, cfg.ndn);
  if (const json* m = r.child("bticn")) read_bticn(*m, cfg.bticn);
  r.finish();
  return cfg;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string to_string(Stack s) { return name_of(kStacks, s); }
std::string to_string(TopologyKind t) { return name_of(kTopologies, t); }
std::string to_string(Pattern p) { return name_of(kPatterns, p); }
std::string to_string(Interference i) { return name_of(kInterference, i); }

Duration parse_duration(std::string_view text) {
  std::size_t split = 0;
  while (split < text.size() && (std::isdigit(static_cast<unsigned char>(text[split])) ||
                                 text[split] == '.')) {
    ++split;
  }
  const std::string_view number = text.substr(0, split);
  const std::string_view unit = text.substr(split);
  double value = 0;
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (number.empty() || ec != std::errc() || ptr != number.data() + number.size()) {
    throw ConfigError("invalid duration '" + std::string(text) + "'");
  }
  double scale = 0;
  if (unit.empty() || unit == "us") {
    scale = 1;
  } else if (unit == "ms") {
    scale = 1e3;
  } else if (unit == "s") {
    scale = 1e6;
  } else {
    throw ConfigError("invalid duration unit in '" + std::string(text) + "'");
  }
  return static_cast<Duration>(std::llround(value * scale));
}

std::string ScenarioConfig::label() const {
  return to_string(stack) + "_" + to_string(topology) + "_" + to_string(pattern);
}

std::string ScenarioConfig::run_id() const {
  return (name.empty() ? label() : name) + "_seed" + std::to_string(seed);
}

ScenarioConfig ScenarioConfig::resolved() const {
  ScenarioConfig r = *this;
  if (r.name.empty()) r.name = r.label();
  if (r.nodes < 2) throw ConfigError("nodes must be at least 2");
  if (r.items_per_producer == 0) throw ConfigError("items_per_producer must be positive");
  if (!r.publish_interval) {
    r.publish_interval = r.pattern == Pattern::kManyToOne ? sec(5) : sec(1);
  }
  if (*r.publish_interval == 0) throw ConfigError("publish_interval must be positive");
  if (!r.publish_jitter) r.publish_jitter = *r.publish_interval / 2;
  if (*r.publish_jitter > *r.publish_interval / 2) {
    throw ConfigError("publish_jitter must not exceed half the publish interval");
  }
  if (!r.mesh_ttl) r.mesh_ttl = r.topology == TopologyKind::kLine ? 10u : r.mesh.default_ttl;
  if (*r.mesh_ttl > btmesh::kMaxTtl) throw ConfigError("btmesh.ttl above 127");
  r.mesh.default_ttl = static_cast<std::uint8_t>(*r.mesh_ttl);
  if (r.stack == Stack::kBtMesh &&
      r.payload_bytes > btmesh::kMaxUnsegmentedPayload) {
    throw ConfigError("payload_bytes too large for one unsegmented advertisement");
  }
  if (r.medium.adv_loss_probability < 0 || r.medium.adv_loss_probability > 1 ||
      r.medium.dot154_loss_probability < 0 || r.medium.dot154_loss_probability > 1) {
    throw ConfigError("loss probabilities must lie in [0, 1]");
  }
  if (r.ndn.mac.min_be > r.ndn.mac.max_be || r.ndn.mac.max_be > 20) {
    throw ConfigError("ndn.mac backoff exponents out of range");
  }
  if (r.stack == Stack::kBtIcn) {
    if (r.topology != TopologyKind::kFullMesh) {
      throw ConfigError("bticn scenarios require a full-mesh topology");
    }
    if (r.nodes < 3) throw ConfigError("bticn scenarios need at least 3 nodes");
    if (r.bticn.awake_window == 0 || r.bticn.awake_window >= r.bticn.cycle) {
      throw ConfigError("bticn.awake_window must be positive and shorter than bticn.cycle");
    }
    if (r.bticn.long_lived_lifetime <= r.bticn.cycle) {
      throw ConfigError("bticn.long_lived_lifetime must exceed bticn.cycle");
    }
  }
  if (!r.duration_limit) {
    const Duration span = static_cast<Duration>(r.items_per_producer) *
                          (*r.publish_interval + *r.publish_jitter);
    Duration tail = sec(60);
    if (r.stack == Stack::kBtIcn) tail += r.bticn.long_lived_lifetime + 2 * r.bticn.cycle;
    r.duration_limit = span + tail;
  }
  return r;
}

ScenarioConfig parse_scenario(std::string_view json_text) {
  return scenario_from_json(parse_json(json_text));
}

std::string to_json_string(const ScenarioConfig& c) {
  const auto& f = c.ndn.forwarder;
  const auto& mac = c.ndn.mac;
  json j = {
      {"name", c.name},
      {"stack", to_string(c.stack)},
      {"topology", to_string(c.topology)},
      {"nodes", c.nodes},
      {"pattern", to_string(c.pattern)},
      {"interference", to_string(c.interference)},
      {"items_per_producer", c.items_per_producer},
      {"consumer_jitter", c.consumer_jitter},
      {"payload_bytes", c.payload_bytes},
      {"seed", c.seed},
      {"medium",
       {{"adv_loss_probability", c.medium.adv_loss_probability},
        {"dot154_loss_probability", c.medium.dot154_loss_probability},
        {"propagation_delay", c.medium.propagation_delay},
        {"keep_frame_log", c.medium.keep_frame_log}}},
      {"btmesh",
       {{"ttl", c.mesh_ttl.value_or(c.mesh.default_ttl)},
        {"cache_capacity", c.mesh.cache_capacity},
        {"friend_queue_capacity", c.mesh.friend_queue_capacity},
        {"adv_events", c.mesh.adv_events},
        {"adv_interval", c.mesh.adv_interval},
        {"adv_jitter", c.mesh.adv_jitter},
        {"frame_overhead_bytes", c.mesh.frame_overhead_bytes},
        {"scan_window", c.mesh.scan_window},
        {"relay", c.mesh.relay},
        {"local_first", c.mesh.local_first}}},
      {"ndn",
       {{"cs_capacity", f.cs_capacity},
        {"cs_policy", name_of(kPolicies, f.cs_policy)},
        {"max_retries", f.max_retries},
        {"retry_interval", f.retry_interval},
        {"interest_lifetime", f.interest_lifetime},
        {"relay_retransmit", f.relay_retransmit},
        {"broadcast_face", c.ndn.broadcast_face},
        {"mac",
         {{"backoff_slot", mac.backoff_slot},
          {"min_be", mac.min_be},
          {"max_be", mac.max_be},
          {"max_csma_backoffs", mac.max_csma_backoffs},
          {"max_frame_retries", mac.max_frame_retries},
          {"cca_duration", mac.cca_duration},
          {"turnaround", mac.turnaround},
          {"ack_timeout", mac.ack_timeout},
          {"overhead_bytes", mac.overhead_bytes},
          {"ack_bytes", mac.ack_bytes},
          {"drop_on_channel_access_failure", mac.drop_on_channel_access_failure},
          {"queue_limit", mac.queue_limit}}}}},
      {"bticn",
       {{"cycle", c.bticn.cycle},
        {"awake_window", c.bticn.awake_window},
        {"long_lived_lifetime", c.bticn.long_lived_lifetime},
        {"repeat_after", c.bticn.repeat_after},
        {"max_repeats", c.bticn.max_repeats}}},
  };
  if (c.publish_interval) j["publish_interval"] = *c.publish_interval;
  if (c.publish_jitter) j["publish_jitter"] = *c.publish_jitter;
  if (c.duration_limit) j["duration_limit"] = *c.duration_limit;
  return j.dump(2) + "\n";
}

BatchConfig parse_batch(std::string_view json_text) {
  const json root = parse_json(json_text);
  BatchConfig batch;
  if (!root.is_object() || !root.contains("scenarios")) {
    batch.scenarios.push_back(scenario_from_json(root));
    return batch;
  }
  ObjectReader r(root, "batch");
  json defaults = json::object();
  if (const json* d = r.child("defaults")) {
    if (!d->is_object()) throw ConfigError("batch.defaults: expected an object");
    defaults = *d;
  }
  const json* list = r.child("scenarios");
  if (!list->is_array() || list->empty()) {
    throw ConfigError("batch.scenarios: expected a non-empty array");
  }
  for (const json& s : *list) {
    json merged = defaults;
    merged.merge_patch(s);
    batch.scenarios.push_back(scenario_from_json(merged));
  }
  if (const json* seeds = r.child("seeds")) {
    if (!seeds->is_array()) throw ConfigError("batch.seeds: expected an array");
    for (const json& s : *seeds) {
      if (!s.is_number_unsigned()) throw ConfigError("batch.seeds: expected integers");
      batch.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  r.number("jobs", batch.jobs);
  r.finish();
  return batch;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BatchConfig load_batch_file(const std::string& path) { return parse_batch(read_text_file(path)); }

std::vector<ScenarioConfig> evaluation_grid() {
  std::vector<ScenarioConfig> out;
  for (Stack s : {Stack::kBtMesh, Stack::kNdn}) {
    for (TopologyKind t : {TopologyKind::kFullMesh, TopologyKind::kLine}) {
      for (Pattern p : {Pattern::kManyToOne, Pattern::kOneToMany}) {
        ScenarioConfig c;
        c.stack = s;
        c.topology = t;
        c.pattern = p;
        c.ndn.forwarder.relay_retransmit = false;
        c.name = c.label();
        out.push_back(c);
      }
    }
  }
  return out;
}

}  // namespace btsim::harness
