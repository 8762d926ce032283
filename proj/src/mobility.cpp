#include "railmule/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "railmule/error.hpp"

namespace railmule::mobility {

namespace {

Leg make_leg(std::vector<Point> points) {
  Leg leg;
  leg.cumulative.reserve(points.size());
  Metres acc = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) acc += geomap::distance(points[i - 1], points[i]);
    leg.cumulative.push_back(acc);
  }
  leg.length = acc;
  leg.points = std::move(points);
  return leg;
}

void append_path(const MapGraph& graph, const geomap::Path& path, Traversal& out) {
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const geomap::Edge& e = graph.edges()[path.edges[i]];
    std::vector<Point> pts = e.path.points;
    if (e.from != path.vertices[i]) std::reverse(pts.begin(), pts.end());
    out.legs.push_back(make_leg(std::move(pts)));
    out.cycle_length += out.legs.back().length;
  }
}

Point interpolate(const std::vector<Point>& pts, const std::vector<Metres>& cum, Metres along) {
  if (along <= 0.0) return pts.front();
  if (along >= cum.back()) return pts.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), along);
  const std::size_t i = static_cast<std::size_t>(it - cum.begin());
  const double span = cum[i] - cum[i - 1];
  const double t = (along - cum[i - 1]) / span;
  return Point{pts[i - 1].x + t * (pts[i].x - pts[i - 1].x),
               pts[i - 1].y + t * (pts[i].y - pts[i - 1].y)};
}

}  // namespace

Point Leg::at(Metres along_leg) const { return interpolate(points, cumulative, along_leg); }

Traversal expand_route(const MapGraph& graph, const RouteSpec& route) {
  if (route.waypoints.size() < 2) throw ConfigInvalidError("route needs at least 2 waypoints");
  if (!(route.speed > 0.0)) throw ConfigInvalidError("route speed must be positive");

  Traversal out;
  std::vector<geomap::Path> forward;
  for (std::size_t i = 1; i < route.waypoints.size(); ++i) {
    forward.push_back(geomap::shortest_path(graph, route.waypoints[i - 1], route.waypoints[i]));
  }
  for (const auto& p : forward) append_path(graph, p, out);

  if (route.mode == RouteMode::PingPong) {
    const std::size_t n = out.legs.size();
    for (std::size_t i = n; i-- > 0;) {
      std::vector<Point> pts = out.legs[i].points;
      std::reverse(pts.begin(), pts.end());
      out.legs.push_back(make_leg(std::move(pts)));
      out.cycle_length += out.legs.back().length;
    }
  } else {
    append_path(graph,
                geomap::shortest_path(graph, route.waypoints.back(), route.waypoints.front()), out);
  }
  if (!(out.cycle_length > 0.0)) throw ConfigInvalidError("route has zero length");
  return out;
}

NodeKinematics place_at(const Traversal& route, Metres arc) {
  NodeKinematics kin;
  Metres rest = std::fmod(arc, route.cycle_length);
  if (rest < 0.0) rest += route.cycle_length;
  for (std::size_t i = 0; i < route.legs.size(); ++i) {
    if (rest < route.legs[i].length) {
      kin.leg = i;
      kin.along = rest;
      return kin;
    }
    rest -= route.legs[i].length;
  }
  kin.leg = 0;
  kin.along = 0.0;
  return kin;
}

Point position_of(const Traversal& route, const NodeKinematics& kin) {
  return route.legs[kin.leg].at(kin.along);
}

StepResult step_position(const NodeKinematics& kin, const Traversal& route, double speed,
                         Seconds dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_position: dt must be positive");
  NodeKinematics next = kin;
  Metres remaining = speed * dt;
  next.odometer += remaining;
  if (remaining >= route.cycle_length) remaining = std::fmod(remaining, route.cycle_length);
  while (true) {
    const Metres left = route.legs[next.leg].length - next.along;
    if (remaining < left) {
      next.along += remaining;
      break;
    }
    remaining -= left;
    next.leg = (next.leg + 1) % route.legs.size();
    next.along = 0.0;
  }
  return {next, position_of(route, next)};
}

// ---------------------------------------------------------------------------

MapWalker MapWalker::start(std::shared_ptr<const MapGraph> graph, double speed, Rng rng) {
  if (graph->edge_count() == 0) throw ConfigInvalidError("map walk needs a graph with edges");
  MapWalker w;
  w.speed = speed;
  w.rng = rng;
  w.edge = static_cast<geomap::EdgeId>(uniform_index(w.rng, graph->edge_count()));
  w.forward = uniform_index(w.rng, 2) == 0;
  w.along = uniform_unit(w.rng) * graph->edges()[w.edge].path.length;
  w.graph = std::move(graph);
  return w;
}

namespace {

Point walker_position(const MapWalker& w) {
  const geomap::Edge& e = w.graph->edges()[w.edge];
  const auto& pts = e.path.points;
  Metres rest = w.forward ? w.along : e.path.length - w.along;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Metres piece = geomap::distance(pts[i - 1], pts[i]);
    if (rest <= piece) {
      const double t = rest / piece;
      return Point{pts[i - 1].x + t * (pts[i].x - pts[i - 1].x),
                   pts[i - 1].y + t * (pts[i].y - pts[i - 1].y)};
    }
    rest -= piece;
  }
  return pts.back();
}

void walker_advance(MapWalker& w, Seconds dt) {
  Metres remaining = w.speed * dt;
  w.odometer += remaining;
  while (true) {
    const geomap::Edge& e = w.graph->edges()[w.edge];
    const Metres left = e.path.length - w.along;
    if (remaining < left) {
      w.along += remaining;
      return;
    }
    remaining -= left;
    const geomap::VertexId at = w.forward ? e.to : e.from;
    const auto& incident = w.graph->incident(at);
    std::vector<geomap::EdgeId> options;
    options.reserve(incident.size());
    for (geomap::EdgeId id : incident) {
      if (id != w.edge) options.push_back(id);
    }
    const geomap::EdgeId next =
        options.empty() ? w.edge : options[uniform_index(w.rng, options.size())];
    const geomap::Edge& ne = w.graph->edges()[next];
    w.edge = next;
    w.forward = ne.from == at;
    w.along = 0.0;
  }
}

}  // namespace

Point current_position(const Mover& mover) {
  return std::visit(
      [](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stationary>) {
          return m.placement.position;
        } else if constexpr (std::is_same_v<T, RouteMover>) {
          return position_of(*m.route, m.kinematics);
        } else {
          return walker_position(m);
        }
      },
      mover);
}

Point advance(Mover& mover, Seconds dt) {
  return std::visit(
      [dt](auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stationary>) {
          return m.placement.position;
        } else if constexpr (std::is_same_v<T, RouteMover>) {
          auto r = step_position(m.kinematics, *m.route, m.speed, dt);
          m.kinematics = r.kinematics;
          return r.position;
        } else {
          walker_advance(m, dt);
          return walker_position(m);
        }
      },
      mover);
}

bool is_mobile(const Mover& mover) { return !std::holds_alternative<Stationary>(mover); }

}  // namespace railmule::mobility
