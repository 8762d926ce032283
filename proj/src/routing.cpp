#include "railmule/routing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "railmule/error.hpp"
#include "railmule/radio.hpp"

namespace railmule::routing {

bool BufferState::contains(MessageId id) const { return find(id) != nullptr; }

const BufferEntry* BufferState::find(MessageId id) const {
  for (const auto& e : entries) {
    if (e.message.id == id) return &e;
  }
  return nullptr;
}

bool BufferState::remove(MessageId id) {
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [id](const BufferEntry& e) { return e.message.id == id; });
  if (it == entries.end()) return false;
  used -= it->message.size;
  entries.erase(it);
  return true;
}

InsertResult buffer_insert(BufferState& buf, const Message& msg, Seconds now,
                           std::optional<Seconds> forwardable_from) {
  if (msg.size > buf.capacity) {
    throw TooLargeError("message " + std::to_string(msg.id) + " (" + std::to_string(msg.size) +
                        " B) exceeds buffer capacity " + std::to_string(buf.capacity) + " B");
  }
  InsertResult result;
  if (buf.contains(msg.id)) return result;
  while (buf.capacity - buf.used < msg.size) {
    const auto oldest = std::min_element(
        buf.entries.begin(), buf.entries.end(),
        [](const BufferEntry& x, const BufferEntry& y) { return x.received_at < y.received_at; });
    result.dropped.push_back(oldest->message.id);
    buf.used -= oldest->message.size;
    buf.entries.erase(oldest);
  }
  buf.entries.push_back({msg, now, forwardable_from.value_or(now)});
  buf.used += msg.size;
  result.inserted = true;
  return result;
}

std::vector<MessageId> expire_ttl(BufferState& buf, Seconds now) {
  std::vector<MessageId> expired;
  std::erase_if(buf.entries, [&](const BufferEntry& e) {
    if (now - e.message.created_at > e.message.ttl) {
      expired.push_back(e.message.id);
      buf.used -= e.message.size;
      return true;
    }
    return false;
  });
  return expired;
}

std::vector<const BufferEntry*> offer_queue(const BufferState& from, const BufferState& to,
                                            Seconds now) {
  std::vector<const BufferEntry*> out;
  for (const auto& e : from.entries) {
    if (e.forwardable_from > now) continue;
    if (e.message.size > to.capacity) continue;
    if (to.contains(e.message.id)) continue;
    out.push_back(&e);
  }
  std::stable_sort(out.begin(), out.end(), [](const BufferEntry* x, const BufferEntry* y) {
    if (x->message.created_at != y->message.created_at) {
      return x->message.created_at < y->message.created_at;
    }
    return x->message.id < y->message.id;
  });
  return out;
}

std::vector<TransferRecord> epidemic_exchange(BufferState& a, BufferState& b, double bitrate,
                                              Seconds contact_remaining, Seconds now) {
  std::vector<Message> to_b;
  std::vector<Message> to_a;
  for (const BufferEntry* e : offer_queue(a, b, now)) to_b.push_back(e->message);
  for (const BufferEntry* e : offer_queue(b, a, now)) to_a.push_back(e->message);

  std::vector<TransferRecord> records;
  Seconds spent = 0.0;
  auto send = [&](const Message& m, BufferState& receiver, bool a_to_b) {
    const Seconds need = radio::transfer_duration(m.size, bitrate);
    if (spent + need > contact_remaining) return false;
    spent += need;
    Message copy = m;
    ++copy.hop_count;
    auto res = buffer_insert(receiver, copy, now);
    records.push_back({m.id, a_to_b, copy.hop_count, std::move(res.dropped)});
    return true;
  };
  for (const Message& m : to_b) {
    if (!send(m, b, true)) return records;
  }
  for (const Message& m : to_a) {
    if (!send(m, a, false)) return records;
  }
  return records;
}

// ---------------------------------------------------------------------------

void ProphetParams::validate() const {
  if (!(p_init > 0.0 && p_init <= 1.0)) throw ConfigInvalidError("prophet p_init must be in (0,1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigInvalidError("prophet beta must be in [0,1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigInvalidError("prophet gamma must be in (0,1]");
  if (!(time_unit > 0.0)) throw ConfigInvalidError("prophet time_unit must be positive");
}

double PredictabilityTable::get(NodeId peer) const {
  const auto it = p.find(peer);
  return it == p.end() ? 0.0 : it->second;
}

PredictabilityTable prophet_encounter_update(PredictabilityTable table, NodeId peer,
                                             const ProphetParams& params) {
  double& v = table.p[peer];
  v = v + (1.0 - v) * params.p_init;
  return table;
}

PredictabilityTable prophet_age(PredictabilityTable table, Seconds now,
                                const ProphetParams& params) {
  if (now < table.last_aged_at) throw std::invalid_argument("prophet_age: time went backwards");
  const double k = (now - table.last_aged_at) / params.time_unit;
  if (k > 0.0) {
    const double factor = std::pow(params.gamma, k);
    for (auto& [peer, v] : table.p) v *= factor;
  }
  table.last_aged_at = now;
  return table;
}

PredictabilityTable prophet_transitivity(PredictabilityTable table,
                                         const std::map<NodeId, double>& peer_snapshot,
                                         double p_owner_peer, const ProphetParams& params) {
  for (const auto& [c, p_peer_c] : peer_snapshot) {
    if (c == table.owner) continue;
    const double gain = p_owner_peer * p_peer_c * params.beta;
    if (gain == 0.0) continue;
    double& v = table.p[c];
    v = v + (1.0 - v) * gain;
  }
  return table;
}

Decision prophet_forward_decision(const PredictabilityTable& sender,
                                  const PredictabilityTable& receiver, const Message& msg,
                                  NodeId receiver_id) {
  if (receiver_id == msg.destination) return Decision::Forward;
  return receiver.get(msg.destination) > sender.get(msg.destination) ? Decision::Forward
                                                                     : Decision::Hold;
}

void prophet_on_contact(PredictabilityTable& a, PredictabilityTable& b, Seconds now,
                        const ProphetParams& params) {
  a = prophet_age(std::move(a), now, params);
  b = prophet_age(std::move(b), now, params);
  a = prophet_encounter_update(std::move(a), b.owner, params);
  b = prophet_encounter_update(std::move(b), a.owner, params);
  const auto snap_a = a.p;
  const auto snap_b = b.p;
  a = prophet_transitivity(std::move(a), snap_b, snap_a.at(b.owner), params);
  b = prophet_transitivity(std::move(b), snap_a, snap_b.at(a.owner), params);
}

std::string_view to_string(RouterKind kind) {
  return kind == RouterKind::Epidemic ? "epidemic" : "prophet";
}

std::optional<RouterKind> parse_router(std::string_view text) {
  if (text == "epidemic") return RouterKind::Epidemic;
  if (text == "prophet") return RouterKind::Prophet;
  return std::nullopt;
}

}  // namespace railmule::routing
