#include "railmule/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "railmule/error.hpp"
#include "railmule/reports.hpp"
#include "railmule/rng.hpp"

namespace railmule::scenario {

namespace {

struct RawValue {
  std::string value;
  int line = 0;
};

struct RawSection {
  std::string name;
  int line = 0;
  std::map<std::string, RawValue> keys;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigInvalidError("config line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at == std::string_view::npos ? at : at - start)));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

double parse_number(const RawValue& v, const std::string& key) {
  std::string_view s = v.value;
  if (s == "inf" || s == "unlimited") return std::numeric_limits<double>::infinity();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || std::isnan(out)) {
    fail(v.line, key + ": expected a number, got '" + v.value + "'");
  }
  return out;
}

double parse_finite(const RawValue& v, const std::string& key) {
  const double d = parse_number(v, key);
  if (!std::isfinite(d)) fail(v.line, key + ": expected a finite number");
  return d;
}

double parse_positive(const RawValue& v, const std::string& key) {
  const double d = parse_finite(v, key);
  if (!(d > 0.0)) fail(v.line, key + ": must be positive");
  return d;
}

std::uint64_t parse_uint(const RawValue& v, const std::string& key) {
  std::uint64_t out = 0;
  const std::string& s = v.value;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(v.line, key + ": expected a non-negative integer, got '" + s + "'");
  }
  return out;
}

bool parse_bool(const RawValue& v, const std::string& key) {
  if (v.value == "true" || v.value == "yes" || v.value == "1") return true;
  if (v.value == "false" || v.value == "no" || v.value == "0") return false;
  fail(v.line, key + ": expected true or false, got '" + v.value + "'");
}

// Sizes in bytes with optional decimal suffix: B, KB, MB, GB.
Bytes parse_size(const RawValue& v, const std::string& key) {
  if (v.value == "unbounded" || v.value == "inf") return kUnboundedCapacity;
  std::string_view s = v.value;
  std::size_t digits = 0;
  while (digits < s.size() && (std::isdigit(static_cast<unsigned char>(s[digits])) || s[digits] == '.')) {
    ++digits;
  }
  std::string unit(trim(s.substr(digits)));
  std::transform(unit.begin(), unit.end(), unit.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  double mult = 0.0;
  if (unit.empty() || unit == "B") mult = 1.0;
  else if (unit == "KB") mult = 1e3;
  else if (unit == "MB") mult = 1e6;
  else if (unit == "GB") mult = 1e9;
  else fail(v.line, key + ": unknown size unit '" + unit + "'");
  RawValue num{std::string(s.substr(0, digits)), v.line};
  const double bytes = parse_finite(num, key) * mult;
  if (bytes != std::floor(bytes) || bytes < 0.0) fail(v.line, key + ": size must be whole bytes");
  return static_cast<Bytes>(bytes);
}

geomap::Point parse_point(std::string_view text, int line, const std::string& key) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) parts.push_back(text.substr(start, i - start));
  }
  if (parts.size() != 2) fail(line, key + ": expected 'x y', got '" + std::string(text) + "'");
  return {parse_finite({std::string(parts[0]), line}, key),
          parse_finite({std::string(parts[1]), line}, key)};
}

std::vector<geomap::Point> parse_points(const RawValue& v, const std::string& key, char sep) {
  std::vector<geomap::Point> out;
  for (std::string_view part : split(v.value, sep)) out.push_back(parse_point(part, v.line, key));
  return out;
}

routing::RouterKind parse_router_value(const RawValue& v) {
  if (auto r = routing::parse_router(v.value)) return *r;
  fail(v.line, "router: unknown value '" + v.value + "' (expected epidemic or prophet)");
}

std::vector<RawSection> lex(std::string_view text) {
  std::vector<RawSection> sections;
  std::map<std::string, std::size_t> index;
  RawSection* current = nullptr;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty()) fail(lineno, "empty section name");
      const auto it = index.find(name);
      if (it == index.end()) {
        index[name] = sections.size();
        sections.push_back({name, lineno, {}});
        current = &sections.back();
      } else {
        current = &sections[it->second];
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(lineno, "expected 'key = value'");
    if (current == nullptr) fail(lineno, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) fail(lineno, "empty key");
    current->keys[key] = RawValue{std::string(trim(line.substr(eq + 1))), lineno};
  }
  return sections;
}

bool is_route_key(const std::string& key) {
  if (key.rfind("route.", 0) != 0 || key.size() == 6) return false;
  return std::all_of(key.begin() + 6, key.end(), [](unsigned char c) { return std::isdigit(c); });
}

void check_keys(const RawSection& sec, const std::set<std::string>& allowed, bool routes = false) {
  for (const auto& [key, v] : sec.keys) {
    if (allowed.contains(key) || (routes && is_route_key(key))) continue;
    fail(v.line, "unknown key '" + key + "' in [" + sec.name + "]");
  }
}

GroupConfig parse_group(const RawSection& sec) {
  check_keys(sec,
             {"name", "count", "mobility", "position", "route_mode", "speed", "start_offset",
              "interfaces", "bluetooth_range", "bluetooth_bitrate", "lora_range", "lora_bitrate",
              "buffer"},
             true);
  GroupConfig g;
  g.section = sec.name;
  g.name = sec.name.substr(6);
  std::map<std::uint64_t, std::vector<geomap::Point>> routes;
  for (const auto& [key, v] : sec.keys) {
    if (key == "name") {
      if (v.value.empty() || v.value.find(':') != std::string::npos) fail(v.line, "bad group name");
      g.name = v.value;
    } else if (key == "count") {
      g.count = parse_uint(v, key);
    } else if (key == "mobility") {
      if (v.value == "route") g.mobility = MobilityKind::Route;
      else if (v.value == "mapwalk") g.mobility = MobilityKind::MapWalk;
      else if (v.value == "stationary") g.mobility = MobilityKind::Stationary;
      else fail(v.line, "mobility: unknown value '" + v.value + "'");
    } else if (key == "position") {
      g.positions = parse_points(v, key, ';');
    } else if (key == "route_mode") {
      if (v.value == "loop") g.route_mode = mobility::RouteMode::Loop;
      else if (v.value == "ping_pong") g.route_mode = mobility::RouteMode::PingPong;
      else fail(v.line, "route_mode: unknown value '" + v.value + "'");
    } else if (key == "speed") {
      g.speed = parse_positive(v, key);
    } else if (key == "start_offset") {
      if (v.value == "random") {
        g.start_offset.reset();
      } else {
        g.start_offset = parse_finite(v, key);
      }
    } else if (key == "interfaces") {
      g.interfaces.clear();
      if (v.value != "none") {
        for (std::string_view kind : split(v.value, ',')) {
          radio::InterfaceKind k{};
          if (kind == "bluetooth") k = radio::InterfaceKind::Bluetooth;
          else if (kind == "lora") k = radio::InterfaceKind::Lora;
          else fail(v.line, "interfaces: unknown kind '" + std::string(kind) + "'");
          if (std::find(g.interfaces.begin(), g.interfaces.end(), k) != g.interfaces.end()) {
            fail(v.line, "interfaces: duplicate kind");
          }
          g.interfaces.push_back(k);
        }
      }
    } else if (key == "bluetooth_range") {
      g.bluetooth.range = parse_positive(v, key);
    } else if (key == "bluetooth_bitrate") {
      g.bluetooth.bitrate = parse_number(v, key);
      if (!(g.bluetooth.bitrate > 0.0)) fail(v.line, key + ": must be positive");
    } else if (key == "lora_range") {
      g.lora.range = parse_positive(v, key);
    } else if (key == "lora_bitrate") {
      g.lora.bitrate = parse_number(v, key);
      if (!(g.lora.bitrate > 0.0)) fail(v.line, key + ": must be positive");
    } else if (key == "buffer") {
      g.buffer = parse_size(v, key);
    } else {
      const auto n = parse_uint({key.substr(6), v.line}, key);
      auto pts = parse_points(v, key, ',');
      if (pts.size() < 2) fail(v.line, key + ": a route needs at least 2 waypoints");
      routes[n] = std::move(pts);
    }
  }
  for (auto& [n, pts] : routes) g.routes.push_back(std::move(pts));
  return g;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  const auto sections = lex(text);
  ScenarioConfig c;
  bool have_map = false;
  bool have_source = false;
  bool have_destination = false;
  int last_line = 1;
  for (const RawSection& sec : sections) {
    last_line = std::max(last_line, sec.line);
    for (const auto& [k, v] : sec.keys) last_line = std::max(last_line, v.line);
  }
  std::set<std::string> group_names;

  for (const RawSection& sec : sections) {
    if (sec.name == "scenario") {
      check_keys(sec, {"name", "duration", "step", "seed", "router", "parallel"});
      for (const auto& [key, v] : sec.keys) {
        if (key == "name") c.name = v.value;
        else if (key == "duration") c.duration = parse_positive(v, key);
        else if (key == "step") c.step = parse_positive(v, key);
        else if (key == "seed") c.seed = parse_uint(v, key);
        else if (key == "router") c.router = parse_router_value(v);
        else if (key == "parallel") c.parallel = parse_bool(v, key);
      }
    } else if (sec.name == "map") {
      check_keys(sec, {"file", "snap_tolerance"});
      for (const auto& [key, v] : sec.keys) {
        if (key == "file") {
          if (v.value.empty()) fail(v.line, "map.file is empty");
          c.map_file = v.value;
          have_map = true;
        } else if (key == "snap_tolerance") {
          c.snap_tolerance = parse_finite(v, key);
          if (c.snap_tolerance < 0.0) fail(v.line, "snap_tolerance must be non-negative");
        }
      }
    } else if (sec.name.rfind("group.", 0) == 0 && sec.name.size() > 6) {
      GroupConfig g = parse_group(sec);
      if (!group_names.insert(g.name).second) fail(sec.line, "duplicate group name '" + g.name + "'");
      c.groups.push_back(std::move(g));
    } else if (sec.name == "messages") {
      check_keys(sec, {"source", "destination", "interval", "size", "ttl"});
      for (const auto& [key, v] : sec.keys) {
        if (key == "source") {
          c.source = v.value;
          have_source = !v.value.empty();
        } else if (key == "destination") {
          c.destination = v.value;
          have_destination = !v.value.empty();
        } else if (key == "interval") {
          if (v.value == "one_shot") {
            c.message_interval.reset();
          } else {
            c.message_interval = parse_positive(v, key);
          }
        } else if (key == "size") {
          c.message_size = parse_size(v, key);
          if (c.message_size == 0 || c.message_size == kUnboundedCapacity) {
            fail(v.line, "size must be a positive byte count");
          }
        } else if (key == "ttl") {
          c.message_ttl = parse_positive(v, key);
        }
      }
    } else if (sec.name == "prophet") {
      check_keys(sec, {"p_init", "beta", "gamma", "time_unit"});
      for (const auto& [key, v] : sec.keys) {
        if (key == "p_init") c.prophet.p_init = parse_finite(v, key);
        else if (key == "beta") c.prophet.beta = parse_finite(v, key);
        else if (key == "gamma") c.prophet.gamma = parse_finite(v, key);
        else if (key == "time_unit") c.prophet.time_unit = parse_finite(v, key);
      }
      try {
        c.prophet.validate();
      } catch (const ConfigInvalidError& e) {
        fail(sec.line, e.what());
      }
    } else if (sec.name == "report") {
      check_keys(sec, {"heatmap_cell", "buffer_sample"});
      for (const auto& [key, v] : sec.keys) {
        if (key == "heatmap_cell") c.heatmap_cell = parse_positive(v, key);
        else if (key == "buffer_sample") c.buffer_sample = parse_positive(v, key);
      }
    } else {
      fail(sec.line, "unknown section [" + sec.name + "]");
    }
  }

  const std::string eof = "line " + std::to_string(last_line);
  if (!have_map) throw ConfigInvalidError("config " + eof + ": missing required key map.file");
  if (c.groups.empty()) throw ConfigInvalidError("config " + eof + ": no [group.N] section");
  if (!have_source) {
    throw ConfigInvalidError("config " + eof + ": missing required key messages.source");
  }
  if (!have_destination) {
    throw ConfigInvalidError("config " + eof + ": missing required key messages.destination");
  }
  return c;
}

std::string emit_config(const ScenarioConfig& c) {
  using reports::format_real;
  auto num = [](double v) { return std::isinf(v) ? std::string("inf") : format_real(v); };
  auto point = [](geomap::Point p) { return format_real(p.x) + " " + format_real(p.y); };
  std::ostringstream out;
  out << "[scenario]\n"
      << "name = " << c.name << '\n'
      << "duration = " << format_real(c.duration) << '\n'
      << "step = " << format_real(c.step) << '\n'
      << "seed = " << c.seed << '\n'
      << "router = " << routing::to_string(c.router) << '\n'
      << "parallel = " << (c.parallel ? "true" : "false") << "\n\n";
  out << "[map]\n"
      << "file = " << c.map_file << '\n'
      << "snap_tolerance = " << format_real(c.snap_tolerance) << "\n\n";
  for (const GroupConfig& g : c.groups) {
    out << '[' << g.section << "]\n"
        << "name = " << g.name << '\n'
        << "count = " << g.count << '\n'
        << "mobility = "
        << (g.mobility == MobilityKind::Route     ? "route"
            : g.mobility == MobilityKind::MapWalk ? "mapwalk"
                                                  : "stationary")
        << '\n';
    if (!g.positions.empty()) {
      out << "position = ";
      for (std::size_t i = 0; i < g.positions.size(); ++i) {
        out << (i ? "; " : "") << point(g.positions[i]);
      }
      out << '\n';
    }
    for (std::size_t r = 0; r < g.routes.size(); ++r) {
      out << "route." << r + 1 << " = ";
      for (std::size_t i = 0; i < g.routes[r].size(); ++i) {
        out << (i ? ", " : "") << point(g.routes[r][i]);
      }
      out << '\n';
    }
    out << "route_mode = " << (g.route_mode == mobility::RouteMode::Loop ? "loop" : "ping_pong")
        << '\n'
        << "speed = " << format_real(g.speed) << '\n'
        << "start_offset = " << (g.start_offset ? format_real(*g.start_offset) : "random") << '\n'
        << "interfaces = ";
    if (g.interfaces.empty()) out << "none";
    for (std::size_t i = 0; i < g.interfaces.size(); ++i) {
      out << (i ? "," : "") << radio::to_string(g.interfaces[i]);
    }
    out << '\n'
        << "bluetooth_range = " << format_real(g.bluetooth.range) << '\n'
        << "bluetooth_bitrate = " << num(g.bluetooth.bitrate) << '\n'
        << "lora_range = " << format_real(g.lora.range) << '\n'
        << "lora_bitrate = " << num(g.lora.bitrate) << '\n'
        << "buffer = "
        << (g.buffer == kUnboundedCapacity ? std::string("unbounded") : std::to_string(g.buffer))
        << "\n\n";
  }
  out << "[messages]\n"
      << "source = " << c.source << '\n'
      << "destination = " << c.destination << '\n'
      << "interval = " << (c.message_interval ? format_real(*c.message_interval) : "one_shot")
      << '\n'
      << "size = " << c.message_size << '\n'
      << "ttl = " << format_real(c.message_ttl) << "\n\n";
  out << "[prophet]\n"
      << "p_init = " << format_real(c.prophet.p_init) << '\n'
      << "beta = " << format_real(c.prophet.beta) << '\n'
      << "gamma = " << format_real(c.prophet.gamma) << '\n'
      << "time_unit = " << format_real(c.prophet.time_unit) << "\n\n";
  out << "[report]\n"
      << "heatmap_cell = " << format_real(c.heatmap_cell) << '\n'
      << "buffer_sample = " << format_real(c.buffer_sample) << '\n';
  return out.str();
}

std::shared_ptr<const geomap::MapGraph> load_map(const std::filesystem::path& file,
                                                 Metres snap_tolerance) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read map file " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return std::make_shared<const geomap::MapGraph>(
        geomap::build_graph(geomap::parse_wkt(buf.str()), snap_tolerance));
  } catch (const MapFormatError& e) {
    throw MapFormatError(file.string() + ": " + e.what());
  }
}

NodeId resolve_node(const std::vector<NodeRange>& groups, std::string_view ref) {
  std::string_view name = ref;
  std::uint64_t index = 0;
  if (const auto colon = ref.find(':'); colon != std::string_view::npos) {
    name = ref.substr(0, colon);
    const std::string_view idx = ref.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
    if (idx.empty() || ec != std::errc{} || ptr != idx.data() + idx.size()) {
      throw ConfigInvalidError("bad node reference '" + std::string(ref) + "'");
    }
  }
  for (const NodeRange& g : groups) {
    if (g.group != name) continue;
    if (index >= g.count) {
      throw ConfigInvalidError("node reference '" + std::string(ref) + "' is out of range");
    }
    return g.first + static_cast<NodeId>(index);
  }
  throw ConfigInvalidError("node reference '" + std::string(ref) + "' names no group");
}

BuiltScenario build_scenario(const ScenarioConfig& c,
                             std::shared_ptr<const geomap::MapGraph> graph) {
  BuiltScenario built;
  engine::Scenario& sc = built.scenario;

  // Polylines each mobile group can occupy, for the lora reachability check.
  struct Coverage {
    const GroupConfig* group;
    std::vector<const std::vector<geomap::Point>*> lines;
  };
  std::vector<Coverage> coverage;
  std::vector<std::shared_ptr<const mobility::Traversal>> keep;

  NodeId next = 0;
  for (const GroupConfig& g : c.groups) {
    if (g.count == 0) throw ConfigInvalidError("group '" + g.name + "' has zero nodes");
    built.groups.push_back({g.name, next, g.count});

    std::vector<radio::InterfaceSpec> ifaces;
    for (radio::InterfaceKind k : g.interfaces) {
      ifaces.push_back(k == radio::InterfaceKind::Bluetooth ? g.bluetooth : g.lora);
    }

    std::vector<std::shared_ptr<const mobility::Traversal>> routes;
    if (g.mobility == MobilityKind::Route) {
      if (g.routes.empty()) throw ConfigInvalidError("group '" + g.name + "' has no route.N");
      for (const auto& waypoints : g.routes) {
        mobility::RouteSpec spec;
        spec.mode = g.route_mode;
        spec.speed = g.speed;
        for (const geomap::Point& p : waypoints) {
          geomap::VertexId v = 0;
          if (!graph->find_vertex(p, std::max(c.snap_tolerance, 1e-9), v)) {
            throw ConfigInvalidError("group '" + g.name + "': waypoint (" +
                                     reports::format_real(p.x) + " " + reports::format_real(p.y) +
                                     ") is not a map vertex");
          }
          spec.waypoints.push_back(v);
        }
        routes.push_back(std::make_shared<const mobility::Traversal>(
            mobility::expand_route(*graph, spec)));
      }
      Coverage cov{&g, {}};
      for (const auto& r : routes) {
        for (const auto& leg : r->legs) cov.lines.push_back(&leg.points);
      }
      coverage.push_back(std::move(cov));
      keep.insert(keep.end(), routes.begin(), routes.end());
    } else if (g.mobility == MobilityKind::MapWalk) {
      Coverage cov{&g, {}};
      for (const auto& e : graph->edges()) cov.lines.push_back(&e.path.points);
      coverage.push_back(std::move(cov));
    } else if (g.positions.size() != 1 && g.positions.size() != g.count) {
      throw ConfigInvalidError("group '" + g.name + "': need 1 or count positions");
    }

    for (std::uint64_t i = 0; i < g.count; ++i) {
      const NodeId id = next++;
      Rng rng(derive_seed(c.seed, id));
      engine::NodeSpec node;
      node.group = g.name;
      node.interfaces = ifaces;
      node.buffer_capacity = g.buffer;
      if (g.mobility == MobilityKind::Route) {
        const auto& route = routes[i % routes.size()];
        const Seconds offset =
            g.start_offset ? *g.start_offset : uniform_unit(rng) * route->cycle_length / g.speed;
        mobility::RouteMover mover{route, g.speed, mobility::place_at(*route, g.speed * offset)};
        node.mover = std::move(mover);
      } else if (g.mobility == MobilityKind::MapWalk) {
        node.mover = mobility::MapWalker::start(graph, g.speed, rng);
      } else {
        const geomap::Point p = g.positions.size() == 1 ? g.positions[0] : g.positions[i];
        node.mover = mobility::Stationary{{p}};
      }
      sc.nodes.push_back(std::move(node));
    }
  }

  // A lora-only stationary node must sit within lora range of some track
  // that lora-equipped mobile nodes travel.
  for (const GroupConfig& g : c.groups) {
    if (g.mobility != MobilityKind::Stationary) continue;
    if (g.interfaces.size() != 1 || g.interfaces[0] != radio::InterfaceKind::Lora) continue;
    for (std::size_t i = 0; i < g.positions.size(); ++i) {
      const geomap::Point p = g.positions[i];
      bool reachable = false;
      for (const Coverage& cov : coverage) {
        const auto& ki = cov.group->interfaces;
        if (std::find(ki.begin(), ki.end(), radio::InterfaceKind::Lora) == ki.end()) continue;
        const Metres range = std::min(g.lora.range, cov.group->lora.range);
        for (const auto* line : cov.lines) {
          if (geomap::distance_to_polyline(p, *line) <= range) {
            reachable = true;
            break;
          }
        }
        if (reachable) break;
      }
      if (!reachable) {
        built.warnings.push_back("group '" + g.name + "' at (" + reports::format_real(p.x) + " " +
                                 reports::format_real(p.y) +
                                 ") is beyond lora range of every route (unreachable source)");
      }
    }
  }

  engine::SimConfig& s = sc.config;
  s.duration = c.duration;
  s.step = c.step;
  s.seed = c.seed;
  s.router = c.router;
  s.parallel = c.parallel;
  s.prophet = c.prophet;
  s.buffer_sample_interval = c.buffer_sample;
  s.messages.source = resolve_node(built.groups, c.source);
  s.messages.destination = resolve_node(built.groups, c.destination);
  s.messages.interval = c.message_interval;
  s.messages.size = c.message_size;
  s.messages.ttl = c.message_ttl;
  return built;
}

}  // namespace railmule::scenario
