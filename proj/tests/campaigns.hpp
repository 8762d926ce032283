// Seeded randomized invariant campaigns. Each returns the number of cases
// run and the violations found, so both the property tests and the
// acceptance runner can drive them.
#pragma once

#include <algorithm>
#include <set>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "railmule/error.hpp"
#include "railmule/geomap.hpp"
#include "railmule/mobility.hpp"
#include "railmule/reports.hpp"
#include "railmule/routing.hpp"
#include "support.hpp"

namespace railmule::testing {

struct CampaignResult {
  std::size_t cases = 0;
  std::vector<std::string> violations;

  void fail(std::size_t case_no, const std::string& what) {
    if (violations.size() < 10) violations.push_back("case " + std::to_string(case_no) + ": " + what);
    ++failures;
  }
  bool ok() const { return failures == 0; }
  std::size_t failures = 0;
};

// Random tree-shaped rail map: `n` junctions, each new one linked to an
// earlier one by a polyline with one random bend.
inline std::string random_map_wkt(Rng& rng, std::size_t n) {
  std::vector<geomap::Point> pts;
  std::ostringstream wkt;
  wkt.precision(17);
  auto coord = [&rng] { return std::floor(uniform_unit(rng) * 20000.0); };
  for (std::size_t i = 0; i < n; ++i) {
    geomap::Point p{coord(), coord()};
    pts.push_back(p);
    if (i == 0) continue;
    const geomap::Point q = pts[uniform_index(rng, i)];
    const geomap::Point bend{(p.x + q.x) / 2 + (uniform_unit(rng) - 0.5) * 2000,
                             (p.y + q.y) / 2 + (uniform_unit(rng) - 0.5) * 2000};
    wkt << "LINESTRING (" << q.x << ' ' << q.y << ", " << bend.x << ' ' << bend.y << ", " << p.x
        << ' ' << p.y << ")\n";
  }
  return wkt.str();
}

inline CampaignResult predictability_campaign(std::uint64_t seed, std::size_t cases) {
  CampaignResult r;
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
    routing::ProphetParams prm;
    prm.p_init = 0.01 + 0.99 * uniform_unit(rng);
    prm.beta = uniform_unit(rng);
    prm.gamma = 0.01 + 0.99 * uniform_unit(rng);
    prm.time_unit = 1.0 + 100.0 * uniform_unit(rng);
    std::vector<routing::PredictabilityTable> tables(5);
    for (NodeId i = 0; i < 5; ++i) tables[i].owner = i;
    Seconds now = 0.0;
    for (int op = 0; op < 60; ++op) {
      now += std::floor(uniform_unit(rng) * 200.0);
      const auto a = static_cast<NodeId>(uniform_index(rng, 5));
      auto b = static_cast<NodeId>(uniform_index(rng, 4));
      if (b >= a) ++b;
      switch (uniform_index(rng, 4)) {
        case 0: {
          const double before = tables[a].get(b);
          tables[a] = routing::prophet_encounter_update(tables[a], b, prm);
          if (tables[a].get(b) < before) r.fail(c, "encounter update decreased P");
          break;
        }
        case 1: {
          const auto before = tables[a].p;
          tables[a] = routing::prophet_age(tables[a], now, prm);
          for (const auto& [k, v] : tables[a].p) {
            if (v > before.at(k)) r.fail(c, "aging increased P");
          }
          break;
        }
        case 2:
          tables[a] = routing::prophet_age(tables[a], now, prm);
          tables[a] = routing::prophet_transitivity(tables[a], tables[b].p, tables[a].get(b), prm);
          break;
        default:
          if (tables[a].last_aged_at <= now && tables[b].last_aged_at <= now) {
            routing::prophet_on_contact(tables[a], tables[b], now, prm);
          }
          break;
      }
      for (const auto& t : tables) {
        for (const auto& [k, v] : t.p) {
          if (!(v >= 0.0 && v <= 1.0)) r.fail(c, "P outside [0,1]");
          if (k == t.owner) r.fail(c, "table holds its owner");
        }
      }
    }
  }
  return r;
}

inline CampaignResult buffer_campaign(std::uint64_t seed, std::size_t cases) {
  CampaignResult r;
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
    routing::BufferState buf;
    buf.capacity = 1 + uniform_index(rng, 5'000'000);
    Seconds now = 0.0;
    for (int op = 0; op < 80; ++op) {
      now += static_cast<double>(uniform_index(rng, 100));
      if (uniform_index(rng, 5) == 0) {
        routing::expire_ttl(buf, now);
      } else {
        routing::Message m;
        m.id = uniform_index(rng, 60);
        m.size = 1 + uniform_index(rng, 2'000'000);
        m.created_at = now;
        m.ttl = 1.0 + static_cast<double>(uniform_index(rng, 2000));
        try {
          routing::buffer_insert(buf, m, now);
        } catch (const TooLargeError&) {
          if (m.size <= buf.capacity) r.fail(c, "rejected a message that fits");
        }
      }
      Bytes sum = 0;
      std::set<MessageId> ids;
      for (const auto& e : buf.entries) {
        sum += e.message.size;
        if (!ids.insert(e.message.id).second) r.fail(c, "duplicate id in buffer");
      }
      if (sum != buf.used) r.fail(c, "used bytes out of sync");
      if (sum > buf.capacity) r.fail(c, "capacity exceeded");
    }
  }
  return r;
}

// Random scripted runs with bounded buffers and finite links, checked with
// check_event_log, plus encounter evenness and heatmap conservation from
// the report collector.
struct EngineCampaign {
  CampaignResult log;
  CampaignResult encounters;
  CampaignResult heatmap;
};

inline EngineCampaign engine_campaign(std::uint64_t seed, std::size_t cases) {
  EngineCampaign out;
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t nodes = 3 + uniform_index(rng, 6);
    auto plan = random_plan(rng, nodes, 5 + uniform_index(rng, 30), 300, 20);
    for (auto& p : plan) {
      const int kind = static_cast<int>(uniform_index(rng, 3));
      p.bitrate = kind == 0 ? kUnlimitedBitrate : kind == 1 ? 2e6 : 5000.0 * (1 + uniform_index(rng, 400));
    }
    std::vector<routing::Message> msgs;
    const std::size_t count = 1 + uniform_index(rng, 10);
    for (MessageId id = 1; id <= count; ++id) {
      const auto src = static_cast<NodeId>(uniform_index(rng, nodes));
      auto dst = static_cast<NodeId>(uniform_index(rng, nodes - 1));
      if (dst >= src) ++dst;
      msgs.push_back(message(id, src, dst, static_cast<double>(uniform_index(rng, 200)), 250'000,
                             20.0 + static_cast<double>(uniform_index(rng, 300))));
    }
    auto sc = scripted(nodes, plan, msgs, 320);
    sc.config.router = uniform_index(rng, 2) ? routing::RouterKind::Prophet
                                             : routing::RouterKind::Epidemic;
    LogCheckOptions opt;
    opt.message_size = 250'000;
    for (auto& n : sc.nodes) {
      n.buffer_capacity = 250'000 * (1 + uniform_index(rng, 4));
      opt.capacity.push_back(n.buffer_capacity);
    }

    reports::ReportCollector col(nodes, 1000.0);
    engine::Listener* extra[] = {&col};
    const auto ev = engine::run(sc, extra);
    ++out.log.cases;
    for (const auto& v : check_event_log(ev, opt)) out.log.fail(c, v);

    const auto rep = col.finish();
    ++out.encounters.cases;
    std::uint64_t sum = 0;
    std::uint64_t ups = 0;
    for (const auto& [n, k] : rep.encounters) sum += k;
    for (const auto& e : ev) ups += e.kind == engine::EventKind::ContactUp;
    if (sum % 2 != 0) out.encounters.fail(c, "odd encounter total");
    if (sum != 2 * ups) out.encounters.fail(c, "encounters differ from twice the contact starts");
    for (const auto& [t, b] : rep.buffer_series) {
      Bytes cap = 0;
      for (Bytes k : opt.capacity) cap += k;
      if (b > cap) out.encounters.fail(c, "buffer series above total capacity");
    }
  }

  // Heatmap conservation on moving scenarios: every sample adds one count
  // per mobile node.
  for (std::size_t c = 0; c < cases; ++c) {
    ++out.heatmap.cases;
    const auto graph = std::make_shared<const geomap::MapGraph>(
        geomap::build_graph(geomap::parse_wkt(random_map_wkt(rng, 2 + uniform_index(rng, 5)))));
    engine::Scenario sc;
    sc.config.duration = 120.0 + static_cast<double>(uniform_index(rng, 200));
    sc.config.step = 1.0;
    sc.config.buffer_sample_interval = static_cast<double>(1 + uniform_index(rng, 30));
    sc.config.messages.enabled = false;
    const std::size_t walkers = 1 + uniform_index(rng, 6);
    for (std::size_t i = 0; i < walkers; ++i) {
      engine::NodeSpec n;
      n.mover = mobility::MapWalker::start(graph, 5.0 + 30.0 * uniform_unit(rng),
                                           Rng(derive_seed(seed, 1000 * c + i)));
      n.interfaces = {radio::kDefaultBluetooth, radio::kDefaultLora};
      sc.nodes.push_back(std::move(n));
    }
    engine::NodeSpec fixed;
    fixed.mover = mobility::Stationary{{graph->vertices()[0]}};
    fixed.interfaces = {radio::kDefaultLora};
    sc.nodes.push_back(std::move(fixed));

    const double cell = 100.0 + 2000.0 * uniform_unit(rng);
    reports::ReportCollector col(sc.nodes.size(), cell);
    engine::Listener* extra[] = {&col};
    const auto steps = static_cast<std::uint64_t>(sc.config.duration);
    const auto every = static_cast<std::uint64_t>(sc.config.buffer_sample_interval);
    const auto ev = engine::run(sc, extra);
    const auto rep = col.finish();
    const std::uint64_t samples = (steps + every - 1) / every;
    if (rep.buffer_series.size() != samples) out.heatmap.fail(c, "unexpected sample count");
    if (rep.heatmap.total() != samples * walkers) out.heatmap.fail(c, "heatmap count not conserved");
    std::uint64_t sum = 0;
    for (const auto& [n, k] : rep.encounters) sum += k;
    if (sum % 2 != 0) out.heatmap.fail(c, "odd encounter total");
    for (const auto& v : check_event_log(ev, {})) out.heatmap.fail(c, v);
  }
  return out;
}

// Positions stay on the route polyline and arc length equals speed * time
// for any step schedule.
struct MobilityCampaign {
  CampaignResult on_path;
  CampaignResult distance;
};

inline MobilityCampaign mobility_campaign(std::uint64_t seed, std::size_t cases) {
  MobilityCampaign out;
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto graph =
        geomap::build_graph(geomap::parse_wkt(random_map_wkt(rng, 2 + uniform_index(rng, 7))));
    mobility::RouteSpec spec;
    const std::size_t wp = 2 + uniform_index(rng, 3);
    for (std::size_t i = 0; i < wp; ++i) {
      auto v = static_cast<geomap::VertexId>(uniform_index(rng, graph.vertex_count()));
      if (!spec.waypoints.empty() && v == spec.waypoints.back()) {
        v = static_cast<geomap::VertexId>((v + 1) % graph.vertex_count());
      }
      spec.waypoints.push_back(v);
    }
    spec.mode = uniform_index(rng, 2) ? mobility::RouteMode::Loop : mobility::RouteMode::PingPong;
    spec.speed = 1.0 + 40.0 * uniform_unit(rng);
    const auto route = mobility::expand_route(graph, spec);

    ++out.on_path.cases;
    ++out.distance.cases;
    const double start_arc = uniform_unit(rng) * route.cycle_length;
    auto kin = mobility::place_at(route, start_arc);
    const auto start = kin;
    Seconds elapsed = 0.0;
    for (int s = 0; s < 200; ++s) {
      const Seconds dt = 0.05 + 60.0 * uniform_unit(rng);
      const auto res = mobility::step_position(kin, route, spec.speed, dt);
      kin = res.kinematics;
      elapsed += dt;
      double best = 1e300;
      for (const auto& leg : route.legs) {
        best = std::min(best, geomap::distance_to_polyline(res.position, leg.points));
      }
      if (!(best < 1e-6)) out.on_path.fail(c, "position off the route by " + std::to_string(best));
      if (kin.along < 0.0 || kin.along > route.legs[kin.leg].length) {
        out.on_path.fail(c, "distance_along outside its leg");
      }
    }
    const double travelled = kin.odometer - start.odometer;
    const double expect = spec.speed * elapsed;
    if (std::abs(travelled - expect) > 1e-9 * expect) out.distance.fail(c, "odometer drift");

    // The same elapsed time in one stride lands on the same cycle position.
    const auto once = mobility::step_position(start, route, spec.speed, elapsed);
    const double a = std::fmod(once.kinematics.odometer + start_arc, route.cycle_length);
    const double b = std::fmod(kin.odometer + start_arc, route.cycle_length);
    const double gap = std::min(std::abs(a - b), route.cycle_length - std::abs(a - b));
    if (gap > 1e-6 * std::max(1.0, expect / route.cycle_length)) {
      out.distance.fail(c, "position depends on step size");
    }
  }
  return out;
}

}  // namespace railmule::testing
