#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "railmule/engine.hpp"
#include "railmule/types.hpp"

// Brute-force temporal reachability over a contact trace, used to check the
// engine's store-carry-forward behaviour independently of geometry.
namespace railmule::oracle {

struct TraceContact {
  NodeId a = 0;
  NodeId b = 0;
  Seconds start = 0.0;  // closed interval [start, end]
  Seconds end = 0.0;
};

struct ContactTrace {
  std::vector<TraceContact> events;

  void validate() const;  // start < end, a != b
};

// Earliest time each node can hold a copy. The source holds it from
// created_at and may relay at once; a copy obtained at t may be relayed
// again no earlier than t + step.
std::map<NodeId, Seconds> reachable_set(const ContactTrace& trace, NodeId source,
                                        Seconds created_at, Seconds step);

std::optional<Seconds> earliest_arrival(const ContactTrace& trace, NodeId source,
                                        Seconds created_at, NodeId destination, Seconds step);

// Rebuilds the contact trace an engine run realized. A contact logged up at
// u and down at d was usable at the step times u, u + step, ..., d - step;
// closing the interval at d - step/2 keeps exactly those instants.
ContactTrace trace_from_events(std::span<const engine::EventRecord> events, Seconds step);

}  // namespace railmule::oracle
