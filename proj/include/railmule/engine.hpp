#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "railmule/kernels.hpp"
#include "railmule/mobility.hpp"
#include "railmule/radio.hpp"
#include "railmule/routing.hpp"
#include "railmule/types.hpp"

namespace railmule::engine {

enum class EventKind { Created, Transferred, Delivered, Dropped, Expired, ContactUp, ContactDown };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

// Field conventions:
//   created      from = source, to = destination
//   transferred  from = sender, to = receiver, hops = hop count of the new copy
//   delivered    from = last relay, to = destination, hops = delivered hop count
//   dropped      from = node that evicted the copy
//   expired      from = node that purged the copy
//   contact_*    from = lower node id, to = higher node id
struct EventRecord {
  Seconds time = 0.0;
  EventKind kind = EventKind::Created;
  std::optional<MessageId> msg;
  std::optional<NodeId> from;
  std::optional<NodeId> to;
  unsigned hops = 0;  // not part of the CSV log

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct MessagePlan {
  NodeId source = 0;
  NodeId destination = 0;
  std::optional<Seconds> interval = 1800.0;  // nullopt: one message at t = 0
  Bytes size = routing::kDefaultMessageSize;
  Seconds ttl = routing::kDefaultTtl;
  bool enabled = true;
};

struct SimConfig {
  Seconds duration = 86400.0;
  Seconds step = 1.0;
  std::uint64_t seed = 0;
  routing::RouterKind router = routing::RouterKind::Epidemic;
  MessagePlan messages;
  routing::ProphetParams prophet;
  Seconds buffer_sample_interval = 60.0;
  bool parallel = true;

  // Throws ConfigInvalidError.
  void validate() const;
  std::uint64_t step_count() const;
};

struct NodeSpec {
  std::string group;
  mobility::Mover mover;
  std::vector<radio::InterfaceSpec> interfaces;
  Bytes buffer_capacity = kUnboundedCapacity;
};

// Replaces radio detection when a scenario is driven by a contact plan:
// the pair is linked at every step time t with up <= t < down.
struct ScriptedContact {
  NodeId a = 0;
  NodeId b = 0;
  Seconds up = 0.0;
  Seconds down = 0.0;
  double bitrate = kUnlimitedBitrate;
};

struct Scenario {
  SimConfig config;
  std::vector<NodeSpec> nodes;
  std::optional<std::vector<ScriptedContact>> contact_plan;
  // Extra messages created at their own created_at (rounded up to the
  // step grid), in addition to the message plan.
  std::vector<routing::Message> injected;
};

class Listener {
 public:
  virtual ~Listener() = default;
  virtual void on_event(const EventRecord& /*event*/) {}
  // Called at every buffer-sample instant after the step completes.
  virtual void on_sample(Seconds /*t*/, Bytes /*total_occupied*/,
                         std::span<const geomap::Point> /*positions*/,
                         const std::vector<bool>& /*mobile*/) {}
  virtual void on_finish(Seconds /*t*/) {}
};

// One copy of each message found at its own destination.
struct Arrival {
  NodeId node = 0;
  MessageId id = 0;
  unsigned hop_count = 0;
};

// Copies residing at their destination. Each message id is reported at most
// once per call, and never if already present in `already_delivered`.
std::vector<Arrival> deliver_check(std::span<const routing::BufferState> buffers,
                                   const std::unordered_set<MessageId>& already_delivered);

// Messages the plan creates at time `now` (now on the step grid).
std::vector<routing::Message> generate_messages(const SimConfig& config, Seconds now,
                                                MessageId next_id);

class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  void add_listener(Listener& listener) { listeners_.push_back(&listener); }

  // Runs every remaining step and closes open contacts at `duration`.
  void run();
  // Executes one step; false once the run is complete.
  bool step();

  Seconds now() const { return now_; }
  std::size_t node_count() const { return movers_.size(); }
  const routing::BufferState& buffer(NodeId n) const { return buffers_.at(n); }
  const routing::PredictabilityTable& table(NodeId n) const { return tables_.at(n); }
  const std::vector<geomap::Point>& positions() const { return positions_; }
  const std::vector<bool>& mobile() const { return mobile_; }
  const SimConfig& config() const { return config_; }

 private:
  struct InFlight {
    MessageId id = 0;
    bool low_to_high = true;
    double remaining_bits = 0.0;
  };
  struct Session {
    radio::Link link;
    std::optional<InFlight> in_flight;
    // (low_to_high, id) already sent during this contact; never re-sent,
    // so a full receiver cannot churn the same copies forever.
    std::set<std::pair<bool, MessageId>> sent;
  };

  void emit(const EventRecord& e);
  void phase_contacts(Seconds t);
  void phase_expiry(Seconds t);
  void phase_generation(Seconds t);
  void phase_exchange(Seconds t);
  void phase_delivery(Seconds t);
  void serve(radio::NodePair pair, Session& session, Seconds t);
  std::optional<InFlight> pick_next(radio::NodePair pair, const Session& session, Seconds t);
  bool offer_allowed(NodeId sender, NodeId receiver, const routing::Message& m, Seconds t);
  void complete(radio::NodePair pair, const InFlight& f, Seconds t);
  void create_message(const routing::Message& m, Seconds t);
  void age_table(NodeId n, Seconds t);
  std::vector<radio::LinkedPair> scripted_links(Seconds t) const;

  SimConfig config_;
  std::vector<mobility::Mover> movers_;
  std::vector<std::vector<radio::InterfaceSpec>> interfaces_;
  std::vector<routing::BufferState> buffers_;
  std::vector<routing::BufferState> inbox_;  // copies that reached their destination
  std::vector<routing::PredictabilityTable> tables_;
  std::vector<geomap::Point> positions_;
  std::vector<bool> mobile_;
  std::optional<std::vector<ScriptedContact>> plan_;
  std::vector<routing::Message> injected_;  // sorted by created_at
  std::size_t next_injected_ = 0;

  radio::ContactTable contacts_;
  std::map<radio::NodePair, Session> sessions_;
  kernels::LinkScanner scanner_;
  std::unordered_set<MessageId> delivered_;
  std::map<std::pair<NodeId, MessageId>, NodeId> last_sender_;
  MessageId next_id_ = 1;

  std::uint64_t steps_total_ = 0;
  std::uint64_t steps_done_ = 0;
  std::uint64_t sample_every_ = 1;
  Seconds now_ = 0.0;
  bool finished_ = false;
  std::vector<Listener*> listeners_;
};

// Convenience: runs the scenario and returns the full event stream.
std::vector<EventRecord> run(Scenario scenario, std::span<Listener* const> extra = {});

}  // namespace railmule::engine
