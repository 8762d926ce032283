#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "railmule/types.hpp"

namespace railmule::geomap {

struct Point {
  Metres x = 0.0;
  Metres y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

Metres distance(Point a, Point b);

// Distance from p to the closest point of segment [a, b].
Metres distance_to_segment(Point p, Point a, Point b);

// Distance from p to the closest point of an open polyline.
Metres distance_to_polyline(Point p, const std::vector<Point>& polyline);

Metres polyline_length(const std::vector<Point>& points);

struct PathSegment {
  std::vector<Point> points;
  Metres length = 0.0;

  static PathSegment from_points(std::vector<Point> points);
};

// Parses LINESTRING and MULTILINESTRING entries. Lines starting with '#'
// are comments. A MULTILINESTRING contributes one segment per member.
// Consecutive duplicate coordinates are collapsed.
std::vector<PathSegment> parse_wkt(std::string_view text);

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  // Polyline from `from` to `to`; its endpoints equal the vertex coordinates.
  PathSegment path;
};

inline constexpr Metres kDefaultSnapTolerance = 1.0;

class MapGraph {
 public:
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeId>& incident(VertexId v) const { return adjacency_.at(v); }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t component_count() const;

  // Vertex closest to p, ties broken by lowest id. Requires a non-empty graph.
  VertexId nearest_vertex(Point p) const;

  // Returns the vertex within `tolerance` of p, if any.
  bool find_vertex(Point p, Metres tolerance, VertexId& out) const;

  friend MapGraph build_graph(const std::vector<PathSegment>& segments, Metres snap_tolerance);

 private:
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adjacency_;
};

// Coordinates within snap_tolerance of each other collapse to one vertex
// (the first one seen). Segment endpoints always become vertices; interior
// points become vertices too when shared with another segment, and the
// segments are split there so junctions are routable.
MapGraph build_graph(const std::vector<PathSegment>& segments,
                     Metres snap_tolerance = kDefaultSnapTolerance);

struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  Metres length = 0.0;
};

// Dijkstra for the distances, then a forward walk that picks, among all
// vertices continuing a shortest path, the lexicographically smallest (x, y).
Path shortest_path(const MapGraph& graph, VertexId from, VertexId to);

// Hash of cell coordinates onto counts. Cells are half-open on the upper side.
struct GridIndex {
  Metres cell_size = 1000.0;
  Point origin{};
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> counts;

  std::pair<std::int64_t, std::int64_t> cell_of(Point p) const;
  std::uint64_t total() const;
};

void grid_accumulate(GridIndex& grid, Point position);

}  // namespace railmule::geomap
