#pragma once

#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "railmule/geomap.hpp"
#include "railmule/types.hpp"

namespace railmule::radio {

enum class InterfaceKind { Bluetooth, Lora };

std::string_view to_string(InterfaceKind kind);

struct InterfaceSpec {
  InterfaceKind kind = InterfaceKind::Bluetooth;
  Metres range = 0.0;
  double bitrate = 0.0;  // bits/s

  friend bool operator==(const InterfaceSpec&, const InterfaceSpec&) = default;
};

inline constexpr InterfaceSpec kDefaultBluetooth{InterfaceKind::Bluetooth, 10.0, 2'000'000.0};
inline constexpr InterfaceSpec kDefaultLora{InterfaceKind::Lora, 8000.0, 5'000.0};

struct Link {
  InterfaceKind kind = InterfaceKind::Bluetooth;
  double bitrate = 0.0;

  friend bool operator==(const Link&, const Link&) = default;
};

// Best common link at `distance`: both nodes must carry the kind and the
// distance must be within both ranges. Higher bitrate wins; equal bitrates
// fall back to the kind order (bluetooth first).
std::optional<Link> can_link(std::span<const InterfaceSpec> a, std::span<const InterfaceSpec> b,
                             Metres distance);

using NodePair = std::pair<NodeId, NodeId>;  // first < second

inline NodePair canonical(NodeId a, NodeId b) { return a < b ? NodePair{a, b} : NodePair{b, a}; }

struct Contact {
  NodeId node_a = 0;
  NodeId node_b = 0;
  InterfaceKind kind = InterfaceKind::Bluetooth;
  Seconds start = 0.0;
  std::optional<Seconds> end;
};

// A pair that can talk this step, with its link.
struct LinkedPair {
  NodeId a = 0;
  NodeId b = 0;
  Link link;

  friend bool operator==(const LinkedPair&, const LinkedPair&) = default;
};

struct ContactUpdate {
  std::vector<Contact> starts;  // ascending (a, b)
  std::vector<Contact> ends;    // ascending (a, b), end set to t
};

// Open contacts keyed by canonical pair. The link of an open contact tracks
// the current best link; re-detection of an open pair is not a new contact.
class ContactTable {
 public:
  ContactUpdate update(std::span<const LinkedPair> linked_now, Seconds t);
  // Closes every open contact at t (end of run).
  std::vector<Contact> close_all(Seconds t);

  const std::vector<std::pair<Contact, Link>>& open() const { return open_; }

 private:
  std::vector<std::pair<Contact, Link>> open_;  // sorted by (a, b)
};

// Reference O(n^2) pass over all pairs, canonical order.
std::vector<LinkedPair> scan_links(std::span<const geomap::Point> positions,
                                   std::span<const std::vector<InterfaceSpec>> interfaces);

// Contact detection over full snapshots: the stateless form of
// scan_links + ContactTable::update.
struct DetectResult {
  std::vector<Contact> starts;
  std::vector<Contact> ends;
  std::vector<Contact> open;
};

DetectResult detect_contacts(std::span<const geomap::Point> positions,
                             std::span<const std::vector<InterfaceSpec>> interfaces,
                             std::span<const Contact> open_contacts, Seconds t);

// (size * 8) / bitrate; zero for an unlimited link.
Seconds transfer_duration(Bytes message_size, double bitrate);

}  // namespace railmule::radio
