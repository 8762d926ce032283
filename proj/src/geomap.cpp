#include "railmule/geomap.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "railmule/error.hpp"

namespace railmule::geomap {

Metres distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

Metres distance_to_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return distance(p, Point{a.x + t * dx, a.y + t * dy});
}

Metres distance_to_polyline(Point p, const std::vector<Point>& polyline) {
  if (polyline.empty()) return std::numeric_limits<double>::infinity();
  if (polyline.size() == 1) return distance(p, polyline.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    best = std::min(best, distance_to_segment(p, polyline[i - 1], polyline[i]));
  }
  return best;
}

Metres polyline_length(const std::vector<Point>& points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
  return total;
}

PathSegment PathSegment::from_points(std::vector<Point> points) {
  PathSegment seg;
  seg.length = polyline_length(points);
  seg.points = std::move(points);
  return seg;
}

// ---------------------------------------------------------------------------
// WKT

namespace {

enum class TokKind { Word, Number, LParen, RParen, Comma, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  double number = 0.0;
  int line = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool at_line_start = true;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        at_line_start = true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        continue;
      }
      if (c == '#' && at_line_start) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      at_line_start = false;
      if (c == '(') {
        out.push_back({TokKind::LParen, "(", 0.0, line_});
        ++pos_;
      } else if (c == ')') {
        out.push_back({TokKind::RParen, ")", 0.0, line_});
        ++pos_;
      } else if (c == ',') {
        out.push_back({TokKind::Comma, ",", 0.0, line_});
        ++pos_;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string word(text_.substr(start, pos_ - start));
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
        out.push_back({TokKind::Word, std::move(word), 0.0, line_});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
          const char d = text_[pos_];
          if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' || d == 'e' || d == 'E' ||
              d == '-' || d == '+') {
            ++pos_;
          } else {
            break;
          }
        }
        std::string_view num = text_.substr(start, pos_ - start);
        const char* first = num.data();
        if (!num.empty() && num.front() == '+') ++first;
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(first, num.data() + num.size(), value);
        if (ec != std::errc{} || ptr != num.data() + num.size() || !std::isfinite(value)) {
          fail("malformed number '" + std::string(num) + "'");
        }
        out.push_back({TokKind::Number, std::string(num), value, line_});
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({TokKind::End, "", 0.0, line_});
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MapFormatError("WKT line " + std::to_string(line_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class WktParser {
 public:
  explicit WktParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<PathSegment> run() {
    std::vector<PathSegment> out;
    if (peek().kind == TokKind::End) throw MapFormatError("WKT: empty input");
    while (peek().kind != TokKind::End) {
      const Token& head = next();
      if (head.kind != TokKind::Word) fail(head, "expected geometry keyword");
      if (head.text == "LINESTRING") {
        out.push_back(linestring(head.line));
      } else if (head.text == "MULTILINESTRING") {
        expect(TokKind::LParen, "'('");
        out.push_back(linestring(head.line));
        while (peek().kind == TokKind::Comma) {
          next();
          out.push_back(linestring(head.line));
        }
        expect(TokKind::RParen, "')'");
      } else {
        fail(head, "unsupported geometry '" + head.text + "'");
      }
    }
    return out;
  }

 private:
  PathSegment linestring(int line) {
    expect(TokKind::LParen, "'('");
    std::vector<Point> pts;
    while (true) {
      const Token& xt = next();
      if (xt.kind != TokKind::Number) fail(xt, "expected coordinate");
      const Token& yt = next();
      if (yt.kind != TokKind::Number) fail(yt, "expected y coordinate");
      Point p{xt.number, yt.number};
      if (pts.empty() || pts.back() != p) pts.push_back(p);
      const Token& sep = next();
      if (sep.kind == TokKind::RParen) break;
      if (sep.kind != TokKind::Comma) fail(sep, "expected ',' or ')'");
    }
    if (pts.size() < 2) {
      throw MapFormatError("WKT line " + std::to_string(line) +
                           ": linestring needs at least 2 distinct points");
    }
    return PathSegment::from_points(std::move(pts));
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != TokKind::End) ++pos_;
    return t;
  }
  void expect(TokKind kind, const char* what) {
    const Token& t = next();
    if (t.kind != kind) fail(t, std::string("expected ") + what);
  }
  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    const std::string found = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
    throw MapFormatError("WKT line " + std::to_string(t.line) + ": " + what + ", found " + found);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Clusters coordinates: a point joins the first earlier cluster whose
// representative lies within tolerance.
class Snapper {
 public:
  explicit Snapper(Metres tolerance) : tol_(tolerance), cell_(tolerance > 0.0 ? tolerance : 1.0) {}

  std::uint32_t assign(Point p) {
    const auto [cx, cy] = cell(p);
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets_.find(key(cx + dx, cy + dy));
        if (it == buckets_.end()) continue;
        for (std::uint32_t id : it->second) {
          if (id < best && distance(reps_[id], p) <= tol_) best = id;
        }
      }
    }
    if (best != std::numeric_limits<std::uint32_t>::max()) return best;
    const auto id = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(p);
    buckets_[key(cx, cy)].push_back(id);
    return id;
  }

  Point rep(std::uint32_t id) const { return reps_[id]; }
  std::size_t size() const { return reps_.size(); }

 private:
  std::pair<std::int64_t, std::int64_t> cell(Point p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)),
            static_cast<std::int64_t>(std::floor(p.y / cell_))};
  }
  static std::uint64_t key(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ULL) ^ static_cast<std::uint64_t>(y);
  }

  Metres tol_;
  Metres cell_;
  std::vector<Point> reps_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

}  // namespace

std::vector<PathSegment> parse_wkt(std::string_view text) {
  return WktParser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Graph

MapGraph build_graph(const std::vector<PathSegment>& segments, Metres snap_tolerance) {
  if (!(snap_tolerance >= 0.0)) throw MapFormatError("snap tolerance must be non-negative");
  if (segments.empty()) throw MapFormatError("map has no segments");

  Snapper snap(snap_tolerance);
  // Endpoints first so they define the representative coordinates.
  for (const auto& seg : segments) {
    snap.assign(seg.points.front());
    snap.assign(seg.points.back());
  }

  std::vector<std::vector<std::uint32_t>> clustered(segments.size());
  std::vector<std::uint32_t> uses;
  std::vector<bool> is_vertex;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& pts = segments[s].points;
    auto& ids = clustered[s];
    for (const Point& p : pts) {
      const std::uint32_t id = snap.assign(p);
      if (!ids.empty() && ids.back() == id) continue;
      ids.push_back(id);
    }
    if (uses.size() < snap.size()) {
      uses.resize(snap.size(), 0);
      is_vertex.resize(snap.size(), false);
    }
    for (std::uint32_t id : ids) ++uses[id];
    is_vertex[ids.front()] = true;
    is_vertex[ids.back()] = true;
  }
  for (std::size_t id = 0; id < uses.size(); ++id) {
    if (uses[id] >= 2) is_vertex[id] = true;
  }

  MapGraph g;
  std::vector<VertexId> vertex_of(snap.size(), std::numeric_limits<VertexId>::max());
  for (std::uint32_t id = 0; id < snap.size(); ++id) {
    if (!is_vertex[id]) continue;
    vertex_of[id] = static_cast<VertexId>(g.vertices_.size());
    g.vertices_.push_back(snap.rep(id));
  }
  g.adjacency_.resize(g.vertices_.size());

  for (const auto& ids : clustered) {
    if (ids.size() < 2) continue;  // collapsed entirely under snapping
    std::vector<Point> piece{snap.rep(ids.front())};
    VertexId start = vertex_of[ids.front()];
    for (std::size_t i = 1; i < ids.size(); ++i) {
      piece.push_back(snap.rep(ids[i]));
      if (!is_vertex[ids[i]]) continue;
      const VertexId end = vertex_of[ids[i]];
      const auto eid = static_cast<EdgeId>(g.edges_.size());
      g.edges_.push_back(Edge{start, end, PathSegment::from_points(std::move(piece))});
      g.adjacency_[start].push_back(eid);
      if (end != start) g.adjacency_[end].push_back(eid);
      piece = {snap.rep(ids[i])};
      start = end;
    }
  }
  return g;
}

std::size_t MapGraph::component_count() const {
  std::vector<VertexId> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t comps = vertices_.size();
  for (const Edge& e : edges_) {
    const VertexId a = find(e.from);
    const VertexId b = find(e.to);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --comps;
    }
  }
  return comps;
}

VertexId MapGraph::nearest_vertex(Point p) const {
  if (vertices_.empty()) throw NoPathError("map graph has no vertices");
  VertexId best = 0;
  double best_d = distance(p, vertices_[0]);
  for (VertexId v = 1; v < vertices_.size(); ++v) {
    const double d = distance(p, vertices_[v]);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

bool MapGraph::find_vertex(Point p, Metres tolerance, VertexId& out) const {
  if (vertices_.empty()) return false;
  const VertexId v = nearest_vertex(p);
  if (distance(p, vertices_[v]) > tolerance) return false;
  out = v;
  return true;
}

Path shortest_path(const MapGraph& graph, VertexId from, VertexId to) {
  const std::size_t n = graph.vertex_count();
  if (from >= n || to >= n) throw NoPathError("shortest_path: vertex out of range");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[to] = 0.0;
  pq.emplace(0.0, to);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == from) break;
    for (EdgeId eid : graph.incident(u)) {
      const Edge& e = graph.edges()[eid];
      const VertexId v = e.from == u ? e.to : e.from;
      const double nd = d + e.path.length;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  if (dist[from] == kInf) {
    throw NoPathError("no path between vertex " + std::to_string(from) + " and " +
                      std::to_string(to));
  }

  Path path;
  path.vertices.push_back(from);
  VertexId u = from;
  while (u != to) {
    const double eps = 1e-9 * std::max(1.0, dist[u]);
    bool found = false;
    EdgeId best_edge = 0;
    VertexId best_v = 0;
    for (EdgeId eid : graph.incident(u)) {
      const Edge& e = graph.edges()[eid];
      if (e.from == e.to) continue;
      const VertexId v = e.from == u ? e.to : e.from;
      if (!(dist[v] < dist[u])) continue;
      if (std::abs(dist[u] - (e.path.length + dist[v])) > eps) continue;
      if (!found) {
        found = true;
        best_edge = eid;
        best_v = v;
        continue;
      }
      const Edge& be = graph.edges()[best_edge];
      const auto cand = std::tuple(graph.vertices()[v], e.path.length, eid);
      const auto incumbent = std::tuple(graph.vertices()[best_v], be.path.length, best_edge);
      if (cand < incumbent) {
        best_edge = eid;
        best_v = v;
      }
    }
    if (!found) throw NoPathError("shortest_path: inconsistent distance labels");
    path.edges.push_back(best_edge);
    path.vertices.push_back(best_v);
    path.length += graph.edges()[best_edge].path.length;
    u = best_v;
  }
  return path;
}

// ---------------------------------------------------------------------------
// Grid

std::pair<std::int64_t, std::int64_t> GridIndex::cell_of(Point p) const {
  return {static_cast<std::int64_t>(std::floor((p.x - origin.x) / cell_size)),
          static_cast<std::int64_t>(std::floor((p.y - origin.y) / cell_size))};
}

std::uint64_t GridIndex::total() const {
  std::uint64_t sum = 0;
  for (const auto& [cell, count] : counts) sum += count;
  return sum;
}

void grid_accumulate(GridIndex& grid, Point position) { ++grid.counts[grid.cell_of(position)]; }

}  // namespace railmule::geomap
