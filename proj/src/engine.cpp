#include "railmule/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "railmule/error.hpp"

namespace railmule::engine {

using radio::NodePair;
using routing::BufferEntry;
using routing::BufferState;
using routing::Message;
using routing::RouterKind;

namespace {

constexpr std::string_view kKindNames[] = {"created", "transferred", "delivered", "dropped",
                                           "expired", "contact_up",  "contact_down"};

// n if x is within a relative 1e-9 of the integer n >= 1, else 0.
std::uint64_t integral_ratio(double x) {
  const double r = std::round(x);
  if (r < 1.0 || std::abs(x - r) > 1e-9 * r) return 0;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::string_view to_string(EventKind kind) { return kKindNames[static_cast<int>(kind)]; }

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (int i = 0; i < 7; ++i) {
    if (kKindNames[i] == text) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

void SimConfig::validate() const {
  if (!(duration > 0.0)) throw ConfigInvalidError("duration must be positive");
  if (!(step > 0.0)) throw ConfigInvalidError("step must be positive");
  if (integral_ratio(duration / step) == 0) {
    throw ConfigInvalidError("duration must be an integer multiple of step");
  }
  if (integral_ratio(buffer_sample_interval / step) == 0) {
    throw ConfigInvalidError("buffer sample interval must be a positive multiple of step");
  }
  if (messages.enabled) {
    if (messages.size == 0) throw ConfigInvalidError("message size must be positive");
    if (!(messages.ttl > 0.0)) throw ConfigInvalidError("message ttl must be positive");
    if (messages.interval && !(*messages.interval > 0.0)) {
      throw ConfigInvalidError("message interval must be positive");
    }
    if (messages.source == messages.destination) {
      throw ConfigInvalidError("message source and destination must differ");
    }
  }
  prophet.validate();
}

std::uint64_t SimConfig::step_count() const { return integral_ratio(duration / step); }

std::vector<Message> generate_messages(const SimConfig& config, Seconds now, MessageId next_id) {
  std::vector<Message> out;
  const MessagePlan& plan = config.messages;
  if (!plan.enabled) return out;
  bool emit = false;
  if (!plan.interval) {
    emit = now < 0.5 * config.step;
  } else {
    // Emit when a multiple of the interval falls inside [now, now + step).
    const double j = std::ceil(now / *plan.interval - 1e-9);
    emit = j * *plan.interval < now + config.step * (1.0 - 1e-9);
  }
  if (emit) {
    out.push_back(Message{next_id, plan.source, plan.destination, now, plan.size, plan.ttl, 0});
  }
  return out;
}

std::vector<Arrival> deliver_check(std::span<const BufferState> buffers,
                                   const std::unordered_set<MessageId>& already_delivered) {
  std::vector<Arrival> out;
  std::unordered_set<MessageId> seen;
  for (NodeId n = 0; n < buffers.size(); ++n) {
    for (const BufferEntry& e : buffers[n].entries) {
      if (e.message.destination != n) continue;
      if (already_delivered.contains(e.message.id) || !seen.insert(e.message.id).second) continue;
      out.push_back({n, e.message.id, e.message.hop_count});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Simulation::Simulation(Scenario scenario)
    : config_(scenario.config),
      plan_(std::move(scenario.contact_plan)),
      injected_(std::move(scenario.injected)) {
  config_.validate();
  const std::size_t n = scenario.nodes.size();
  if (n == 0) throw ConfigInvalidError("scenario has no nodes");
  if (config_.messages.enabled &&
      (config_.messages.source >= n || config_.messages.destination >= n)) {
    throw ConfigInvalidError("message source/destination is not a node");
  }

  for (NodeId id = 0; id < n; ++id) {
    NodeSpec& spec = scenario.nodes[id];
    mobile_.push_back(mobility::is_mobile(spec.mover));
    movers_.push_back(std::move(spec.mover));
    interfaces_.push_back(std::move(spec.interfaces));
    BufferState buf;
    buf.capacity = spec.buffer_capacity;
    buffers_.push_back(std::move(buf));
    inbox_.emplace_back();
    routing::PredictabilityTable table;
    table.owner = id;
    tables_.push_back(std::move(table));
  }
  if (config_.messages.enabled &&
      config_.messages.size > buffers_[config_.messages.source].capacity) {
    throw ConfigInvalidError("message size exceeds the source buffer capacity");
  }

  if (plan_) {
    for (ScriptedContact& c : *plan_) {
      if (c.a == c.b || c.a >= n || c.b >= n) throw ConfigInvalidError("bad scripted contact pair");
      if (!(c.up < c.down)) throw ConfigInvalidError("scripted contact must have up < down");
      if (!(c.bitrate > 0.0)) throw BadLinkError("scripted contact bitrate must be positive");
      if (c.a > c.b) std::swap(c.a, c.b);
    }
    std::stable_sort(plan_->begin(), plan_->end(),
                     [](const ScriptedContact& x, const ScriptedContact& y) {
                       return NodePair{x.a, x.b} < NodePair{y.a, y.b};
                     });
  }

  MessageId max_id = 0;
  std::unordered_set<MessageId> ids;
  for (const Message& m : injected_) {
    if (m.source >= n || m.destination >= n || m.source == m.destination) {
      throw ConfigInvalidError("injected message has bad endpoints");
    }
    if (!ids.insert(m.id).second) throw ConfigInvalidError("duplicate injected message id");
    max_id = std::max(max_id, m.id);
  }
  std::stable_sort(injected_.begin(), injected_.end(),
                   [](const Message& x, const Message& y) { return x.created_at < y.created_at; });
  next_id_ = max_id + 1;

  steps_total_ = config_.step_count();
  sample_every_ = integral_ratio(config_.buffer_sample_interval / config_.step);
  positions_.resize(n);
  for (NodeId id = 0; id < n; ++id) positions_[id] = mobility::current_position(movers_[id]);
}

void Simulation::emit(const EventRecord& e) {
  for (Listener* l : listeners_) l->on_event(e);
}

void Simulation::run() {
  while (step()) {
  }
}

bool Simulation::step() {
  if (finished_) return false;
  if (steps_done_ == steps_total_) {
    for (const radio::Contact& c : contacts_.close_all(config_.duration)) {
      emit({config_.duration, EventKind::ContactDown, std::nullopt, c.node_a, c.node_b});
    }
    sessions_.clear();
    for (Listener* l : listeners_) l->on_finish(config_.duration);
    finished_ = true;
    return false;
  }

  const Seconds t = static_cast<double>(steps_done_) * config_.step;
  now_ = t;
  if (steps_done_ > 0) {
    if (config_.parallel) {
      kernels::advance_parallel(movers_, config_.step, positions_);
    } else {
      kernels::advance_serial(movers_, config_.step, positions_);
    }
  }
  phase_contacts(t);
  phase_expiry(t);
  phase_generation(t);
  phase_exchange(t);
  phase_delivery(t);

  if (steps_done_ % sample_every_ == 0) {
    Bytes total = 0;
    for (const BufferState& b : buffers_) total += b.used;
    for (Listener* l : listeners_) l->on_sample(t, total, positions_, mobile_);
  }
  ++steps_done_;
  return true;
}

std::vector<radio::LinkedPair> Simulation::scripted_links(Seconds t) const {
  std::vector<radio::LinkedPair> out;
  for (const ScriptedContact& c : *plan_) {
    if (c.up <= t && t < c.down) {
      if (!out.empty() && out.back().a == c.a && out.back().b == c.b) continue;
      out.push_back({c.a, c.b, radio::Link{radio::InterfaceKind::Bluetooth, c.bitrate}});
    }
  }
  return out;
}

void Simulation::phase_contacts(Seconds t) {
  std::vector<radio::LinkedPair> linked;
  if (plan_) {
    linked = scripted_links(t);
  } else if (config_.parallel) {
    linked = scanner_.scan(positions_, interfaces_);
  } else {
    linked = kernels::scan_links_serial(positions_, interfaces_);
  }
  const radio::ContactUpdate upd = contacts_.update(linked, t);
  for (const radio::Contact& c : upd.ends) {
    sessions_.erase(NodePair{c.node_a, c.node_b});
    emit({t, EventKind::ContactDown, std::nullopt, c.node_a, c.node_b});
  }
  for (const radio::Contact& c : upd.starts) {
    emit({t, EventKind::ContactUp, std::nullopt, c.node_a, c.node_b});
    if (config_.router == RouterKind::Prophet) {
      routing::prophet_on_contact(tables_[c.node_a], tables_[c.node_b], t, config_.prophet);
    }
  }
  for (const auto& [contact, link] : contacts_.open()) {
    sessions_[NodePair{contact.node_a, contact.node_b}].link = link;
  }
}

void Simulation::phase_expiry(Seconds t) {
  for (NodeId n = 0; n < buffers_.size(); ++n) {
    for (MessageId id : routing::expire_ttl(buffers_[n], t)) {
      emit({t, EventKind::Expired, id, n, std::nullopt});
    }
  }
}

void Simulation::create_message(const Message& m, Seconds t) {
  Message msg = m;
  msg.created_at = t;
  msg.hop_count = 0;
  BufferState& buf = buffers_[msg.source];
  if (msg.size > buf.capacity) {
    throw ConfigInvalidError("message " + std::to_string(msg.id) +
                             " exceeds the source buffer capacity");
  }
  // Evictions are logged before the insertion that caused them.
  const auto res = routing::buffer_insert(buf, msg, t);
  for (MessageId d : res.dropped) emit({t, EventKind::Dropped, d, msg.source, std::nullopt});
  emit({t, EventKind::Created, msg.id, msg.source, msg.destination});
}

void Simulation::phase_generation(Seconds t) {
  for (const Message& m : generate_messages(config_, t, next_id_)) {
    ++next_id_;
    create_message(m, t);
  }
  while (next_injected_ < injected_.size() && injected_[next_injected_].created_at <= t) {
    create_message(injected_[next_injected_], t);
    ++next_injected_;
  }
}

void Simulation::age_table(NodeId n, Seconds t) {
  if (tables_[n].last_aged_at < t) {
    tables_[n] = routing::prophet_age(std::move(tables_[n]), t, config_.prophet);
  }
}

bool Simulation::offer_allowed(NodeId sender, NodeId receiver, const Message& m, Seconds t) {
  if (m.destination == receiver && (delivered_.contains(m.id) || inbox_[receiver].contains(m.id))) {
    return false;
  }
  if (config_.router == RouterKind::Epidemic) return true;
  age_table(sender, t);
  age_table(receiver, t);
  return routing::prophet_forward_decision(tables_[sender], tables_[receiver], m, receiver) ==
         routing::Decision::Forward;
}

std::optional<Simulation::InFlight> Simulation::pick_next(NodePair pair, const Session& session,
                                                         Seconds t) {
  const auto [lo, hi] = pair;
  for (const bool low_to_high : {true, false}) {
    const NodeId sender = low_to_high ? lo : hi;
    const NodeId receiver = low_to_high ? hi : lo;
    for (const BufferEntry* e : routing::offer_queue(buffers_[sender], buffers_[receiver], t)) {
      if (session.sent.contains({low_to_high, e->message.id})) continue;
      if (offer_allowed(sender, receiver, e->message, t)) {
        return InFlight{e->message.id, low_to_high, static_cast<double>(e->message.size) * 8.0};
      }
    }
  }
  return std::nullopt;
}

void Simulation::complete(NodePair pair, const InFlight& f, Seconds t) {
  const NodeId sender = f.low_to_high ? pair.first : pair.second;
  const NodeId receiver = f.low_to_high ? pair.second : pair.first;
  Message copy = buffers_[sender].find(f.id)->message;
  ++copy.hop_count;
  if (copy.destination == receiver) {
    // Held outside the bounded buffer until absorbed at the end of the step.
    routing::buffer_insert(inbox_[receiver], copy, t, t + config_.step);
    emit({t, EventKind::Transferred, copy.id, sender, receiver, copy.hop_count});
    last_sender_[{receiver, copy.id}] = sender;
    return;
  }
  const auto res = routing::buffer_insert(buffers_[receiver], copy, t, t + config_.step);
  for (MessageId d : res.dropped) emit({t, EventKind::Dropped, d, receiver, std::nullopt});
  emit({t, EventKind::Transferred, copy.id, sender, receiver, copy.hop_count});
}

void Simulation::serve(NodePair pair, Session& session, Seconds t) {
  Seconds budget = config_.step;
  const double bitrate = session.link.bitrate;
  const bool unlimited = std::isinf(bitrate);
  while (true) {
    if (!session.in_flight) {
      if (!unlimited && budget <= 0.0) return;
      session.in_flight = pick_next(pair, session, t);
      if (!session.in_flight) return;
    }
    InFlight& f = *session.in_flight;
    const NodeId sender = f.low_to_high ? pair.first : pair.second;
    const NodeId receiver = f.low_to_high ? pair.second : pair.first;
    const BufferEntry* held = buffers_[sender].find(f.id);
    if (held == nullptr || buffers_[receiver].contains(f.id) ||
        (held->message.destination == receiver &&
         (delivered_.contains(f.id) || inbox_[receiver].contains(f.id)))) {
      session.in_flight.reset();  // copy evicted, expired, or already there
      continue;
    }
    const Seconds need = unlimited ? 0.0 : f.remaining_bits / bitrate;
    if (need <= budget) {
      budget -= need;
      const InFlight done = f;
      session.in_flight.reset();
      session.sent.insert({done.low_to_high, done.id});
      complete(pair, done, t);
    } else {
      f.remaining_bits -= budget * bitrate;
      return;
    }
  }
}

void Simulation::phase_exchange(Seconds t) {
  for (auto& [pair, session] : sessions_) serve(pair, session, t);
}

void Simulation::phase_delivery(Seconds t) {
  for (const Arrival& a : deliver_check(inbox_, delivered_)) {
    delivered_.insert(a.id);
    const auto it = last_sender_.find({a.node, a.id});
    const std::optional<NodeId> from =
        it == last_sender_.end() ? std::nullopt : std::optional<NodeId>(it->second);
    emit({t, EventKind::Delivered, a.id, from, a.node, a.hop_count});
  }
  // Sink absorption; later duplicates vanish silently.
  for (BufferState& box : inbox_) {
    box.entries.clear();
    box.used = 0;
  }
  last_sender_.clear();
}

std::vector<EventRecord> run(Scenario scenario, std::span<Listener* const> extra) {
  struct Collect : Listener {
    std::vector<EventRecord> events;
    void on_event(const EventRecord& e) override { events.push_back(e); }
  } collect;
  Simulation sim(std::move(scenario));
  sim.add_listener(collect);
  for (Listener* l : extra) sim.add_listener(*l);
  sim.run();
  return std::move(collect.events);
}

}  // namespace railmule::engine
