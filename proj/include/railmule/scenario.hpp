#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "railmule/engine.hpp"
#include "railmule/geomap.hpp"
#include "railmule/mobility.hpp"
#include "railmule/radio.hpp"
#include "railmule/routing.hpp"

namespace railmule::scenario {

enum class MobilityKind { Route, MapWalk, Stationary };

inline constexpr Bytes kDefaultBufferCapacity = 5'000'000;

struct GroupConfig {
  std::string section;  // e.g. "group.1"; groups keep file order
  std::string name;
  std::uint64_t count = 1;
  MobilityKind mobility = MobilityKind::Route;
  std::vector<geomap::Point> positions;            // stationary
  std::vector<std::vector<geomap::Point>> routes;  // route.N waypoints
  mobility::RouteMode route_mode = mobility::RouteMode::Loop;
  double speed = mobility::kDefaultTrainSpeed;
  std::optional<Seconds> start_offset;  // nullopt: seeded random over the cycle
  std::vector<radio::InterfaceKind> interfaces{radio::InterfaceKind::Bluetooth};
  radio::InterfaceSpec bluetooth = radio::kDefaultBluetooth;
  radio::InterfaceSpec lora = radio::kDefaultLora;
  Bytes buffer = kDefaultBufferCapacity;

  friend bool operator==(const GroupConfig&, const GroupConfig&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  Seconds duration = 86400.0;
  Seconds step = 1.0;
  std::uint64_t seed = 0;
  routing::RouterKind router = routing::RouterKind::Epidemic;
  bool parallel = true;

  std::string map_file;
  Metres snap_tolerance = geomap::kDefaultSnapTolerance;

  std::vector<GroupConfig> groups;

  std::string source;       // "<group>" or "<group>:<index>"
  std::string destination;
  std::optional<Seconds> message_interval = 1800.0;  // nullopt: one_shot
  Bytes message_size = routing::kDefaultMessageSize;
  Seconds message_ttl = routing::kDefaultTtl;

  routing::ProphetParams prophet;

  Metres heatmap_cell = 1000.0;
  Seconds buffer_sample = 60.0;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// INI-style parsing into a fully defaulted config. Throws ConfigInvalidError
// naming the offending line.
ScenarioConfig parse_config(std::string_view text);

// Canonical serialization; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

// Reads and parses a WKT file into a graph.
std::shared_ptr<const geomap::MapGraph> load_map(const std::filesystem::path& file,
                                                 Metres snap_tolerance);

struct NodeRange {
  std::string group;
  NodeId first = 0;
  std::uint64_t count = 0;
};

struct BuiltScenario {
  engine::Scenario scenario;
  std::vector<NodeRange> groups;
  std::vector<std::string> warnings;
};

BuiltScenario build_scenario(const ScenarioConfig& config,
                             std::shared_ptr<const geomap::MapGraph> graph);

// Resolves "<group>" / "<group>:<index>" against built groups.
NodeId resolve_node(const std::vector<NodeRange>& groups, std::string_view ref);

}  // namespace railmule::scenario
