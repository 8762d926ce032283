#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "railmule/types.hpp"

namespace railmule::routing {

inline constexpr Bytes kDefaultMessageSize = 250'000;
inline constexpr Seconds kDefaultTtl = 6 * 3600.0;

struct Message {
  MessageId id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  Seconds created_at = 0.0;
  Bytes size = kDefaultMessageSize;
  Seconds ttl = kDefaultTtl;
  unsigned hop_count = 0;
};

struct BufferEntry {
  Message message;
  Seconds received_at = 0.0;
  // Earliest time this copy may be relayed onward.
  Seconds forwardable_from = 0.0;
};

struct BufferState {
  Bytes capacity = kUnboundedCapacity;
  Bytes used = 0;
  std::vector<BufferEntry> entries;  // append order == received_at order

  bool contains(MessageId id) const;
  const BufferEntry* find(MessageId id) const;
  bool remove(MessageId id);
};

struct InsertResult {
  bool inserted = false;
  std::vector<MessageId> dropped;
};

// Drop-oldest insert: entries with the oldest received_at are evicted one at
// a time until `msg` fits. A duplicate id leaves the buffer untouched.
// Throws TooLargeError when msg.size exceeds the capacity.
InsertResult buffer_insert(BufferState& buf, const Message& msg, Seconds now,
                           std::optional<Seconds> forwardable_from = std::nullopt);

// Removes every entry with now - created_at > ttl.
std::vector<MessageId> expire_ttl(BufferState& buf, Seconds now);

// Entries of `from` that `to` lacks and that may be relayed at `now`,
// oldest created_at first (ties by id). Messages too large for `to` are
// never offered.
std::vector<const BufferEntry*> offer_queue(const BufferState& from, const BufferState& to,
                                            Seconds now);

struct TransferRecord {
  MessageId id = 0;
  bool a_to_b = true;
  unsigned hop_count = 0;  // of the copy created at the receiver
  std::vector<MessageId> dropped;
};

// Summary-vector exchange over one contact with a known time budget. Both
// offer queues are fixed from the pre-exchange buffers; node a's queue is
// served first, then b's. Transfers are sequential and stop at the first
// one that no longer fits in contact_remaining.
std::vector<TransferRecord> epidemic_exchange(BufferState& a, BufferState& b, double bitrate,
                                              Seconds contact_remaining, Seconds now);

// ---------------------------------------------------------------------------
// PROPHET

struct ProphetParams {
  double p_init = 0.75;
  double beta = 0.25;
  double gamma = 0.98;
  Seconds time_unit = 30.0;

  void validate() const;  // throws ConfigInvalidError

  friend bool operator==(const ProphetParams&, const ProphetParams&) = default;
};

struct PredictabilityTable {
  NodeId owner = 0;
  std::map<NodeId, double> p;
  Seconds last_aged_at = 0.0;

  double get(NodeId peer) const;
};

// P(a,b) <- P_old + (1 - P_old) * p_init
[[nodiscard]] PredictabilityTable prophet_encounter_update(PredictabilityTable table, NodeId peer,
                                                           const ProphetParams& params);

// P <- P_old * gamma^k with k = (now - last_aged_at) / time_unit
[[nodiscard]] PredictabilityTable prophet_age(PredictabilityTable table, Seconds now,
                                              const ProphetParams& params);

// P(a,c) <- P_old + (1 - P_old) * P(a,b) * P(b,c) * beta
[[nodiscard]] PredictabilityTable prophet_transitivity(
    PredictabilityTable table, const std::map<NodeId, double>& peer_snapshot,
    double p_owner_peer, const ProphetParams& params);

enum class Decision { Forward, Hold };

Decision prophet_forward_decision(const PredictabilityTable& sender,
                                  const PredictabilityTable& receiver, const Message& msg,
                                  NodeId receiver_id);

// Contact-start update in the fixed order: age both, encounter update both,
// then transitivity both from snapshots taken after the encounter updates.
void prophet_on_contact(PredictabilityTable& a, PredictabilityTable& b, Seconds now,
                        const ProphetParams& params);

// ---------------------------------------------------------------------------

enum class RouterKind { Epidemic, Prophet };

std::string_view to_string(RouterKind kind);
std::optional<RouterKind> parse_router(std::string_view text);

}  // namespace railmule::routing
