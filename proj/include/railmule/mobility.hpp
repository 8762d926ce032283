#pragma once

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "railmule/geomap.hpp"
#include "railmule/rng.hpp"
#include "railmule/types.hpp"

namespace railmule::mobility {

using geomap::MapGraph;
using geomap::Point;
using geomap::VertexId;

enum class RouteMode { Loop, PingPong };

inline constexpr double kDefaultTrainSpeed = 22.0;

struct RouteSpec {
  std::vector<VertexId> waypoints;
  RouteMode mode = RouteMode::Loop;
  double speed = kDefaultTrainSpeed;  // m/s
  Seconds start_offset = 0.0;
};

// One oriented polyline piece of an expanded route.
struct Leg {
  std::vector<Point> points;
  std::vector<Metres> cumulative;  // cumulative[i] = arc length at points[i]
  Metres length = 0.0;

  Point at(Metres along) const;
};

// A route unrolled into one closed cycle of legs. For ping_pong the
// return trip is part of the cycle, so stepping only ever wraps.
struct Traversal {
  std::vector<Leg> legs;
  Metres cycle_length = 0.0;
};

Traversal expand_route(const MapGraph& graph, const RouteSpec& route);

struct NodeKinematics {
  std::size_t leg = 0;
  Metres along = 0.0;
  Metres odometer = 0.0;  // total arc travelled since placement
};

struct StepResult {
  NodeKinematics kinematics;
  Point position;
};

NodeKinematics place_at(const Traversal& route, Metres arc);
Point position_of(const Traversal& route, const NodeKinematics& kin);
StepResult step_position(const NodeKinematics& kin, const Traversal& route, double speed,
                         Seconds dt);

struct StationaryPlacement {
  Point position;
};

inline Point stationary_position(const StationaryPlacement& p, Seconds /*t*/) { return p.position; }

// ---------------------------------------------------------------------------
// Per-node movers

struct RouteMover {
  std::shared_ptr<const Traversal> route;
  double speed = kDefaultTrainSpeed;
  NodeKinematics kinematics;
};

// Random walk over the graph: at each vertex the next edge is drawn
// uniformly from the incident edges other than the one just travelled
// (dead ends turn back).
struct MapWalker {
  std::shared_ptr<const MapGraph> graph;
  double speed = kDefaultTrainSpeed;
  geomap::EdgeId edge = 0;
  bool forward = true;
  Metres along = 0.0;
  Metres odometer = 0.0;
  Rng rng;

  static MapWalker start(std::shared_ptr<const MapGraph> graph, double speed, Rng rng);
};

struct Stationary {
  StationaryPlacement placement;
};

using Mover = std::variant<Stationary, RouteMover, MapWalker>;

Point current_position(const Mover& mover);
Point advance(Mover& mover, Seconds dt);
bool is_mobile(const Mover& mover);

}  // namespace railmule::mobility
