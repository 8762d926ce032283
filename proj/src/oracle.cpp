#include "railmule/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "railmule/error.hpp"

namespace railmule::oracle {

void ContactTrace::validate() const {
  for (const TraceContact& c : events) {
    if (c.a == c.b) throw ConfigInvalidError("trace contact joins a node to itself");
    if (!(c.start < c.end)) throw ConfigInvalidError("trace contact needs start < end");
  }
}

std::map<NodeId, Seconds> reachable_set(const ContactTrace& trace, NodeId source,
                                        Seconds created_at, Seconds step) {
  if (!(step > 0.0)) throw std::invalid_argument("oracle step must be positive");
  std::map<NodeId, Seconds> arrival{{source, created_at}};
  auto ready = [&](NodeId n) {
    const Seconds t = arrival.at(n);
    return n == source ? t : t + step;
  };
  // Label correcting: relax every contact in both directions until no
  // arrival label improves.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const TraceContact& c : trace.events) {
      for (const auto [u, v] : {std::pair{c.a, c.b}, std::pair{c.b, c.a}}) {
        if (!arrival.contains(u)) continue;
        const Seconds t = std::max(ready(u), c.start);
        if (t > c.end) continue;
        const auto it = arrival.find(v);
        if (it == arrival.end() || t < it->second) {
          arrival[v] = t;
          changed = true;
        }
      }
    }
  }
  return arrival;
}

std::optional<Seconds> earliest_arrival(const ContactTrace& trace, NodeId source,
                                        Seconds created_at, NodeId destination, Seconds step) {
  const auto all = reachable_set(trace, source, created_at, step);
  const auto it = all.find(destination);
  if (it == all.end()) return std::nullopt;
  return it->second;
}

ContactTrace trace_from_events(std::span<const engine::EventRecord> events, Seconds step) {
  std::map<std::pair<NodeId, NodeId>, Seconds> open;
  ContactTrace trace;
  for (const engine::EventRecord& e : events) {
    if (e.kind == engine::EventKind::ContactUp) {
      open[{*e.from, *e.to}] = e.time;
    } else if (e.kind == engine::EventKind::ContactDown) {
      const auto it = open.find({*e.from, *e.to});
      if (it == open.end()) throw IoError("contact_down without contact_up");
      trace.events.push_back({*e.from, *e.to, it->second, e.time - 0.5 * step});
      open.erase(it);
    }
  }
  if (!open.empty()) throw IoError("event log ends with open contacts");
  return trace;
}

}  // namespace railmule::oracle
