#include "railmule/radio.hpp"

#include <algorithm>
#include <cmath>

#include "railmule/error.hpp"

namespace railmule::radio {

std::string_view to_string(InterfaceKind kind) {
  return kind == InterfaceKind::Bluetooth ? "bluetooth" : "lora";
}

std::optional<Link> can_link(std::span<const InterfaceSpec> a, std::span<const InterfaceSpec> b,
                             Metres distance) {
  std::optional<Link> best;
  for (const InterfaceSpec& ia : a) {
    for (const InterfaceSpec& ib : b) {
      if (ia.kind != ib.kind) continue;
      if (distance > std::min(ia.range, ib.range)) continue;
      const Link cand{ia.kind, std::min(ia.bitrate, ib.bitrate)};
      if (!best || cand.bitrate > best->bitrate ||
          (cand.bitrate == best->bitrate && cand.kind < best->kind)) {
        best = cand;
      }
    }
  }
  return best;
}

std::vector<LinkedPair> scan_links(std::span<const geomap::Point> positions,
                                   std::span<const std::vector<InterfaceSpec>> interfaces) {
  std::vector<LinkedPair> out;
  const auto n = static_cast<NodeId>(positions.size());
  for (NodeId a = 0; a < n; ++a) {
    if (interfaces[a].empty()) continue;
    for (NodeId b = a + 1; b < n; ++b) {
      if (interfaces[b].empty()) continue;
      const Metres d = geomap::distance(positions[a], positions[b]);
      if (auto link = can_link(interfaces[a], interfaces[b], d)) out.push_back({a, b, *link});
    }
  }
  return out;
}

ContactUpdate ContactTable::update(std::span<const LinkedPair> linked_now, Seconds t) {
  ContactUpdate upd;
  std::vector<std::pair<Contact, Link>> next;
  next.reserve(linked_now.size());
  auto it = open_.begin();
  for (const LinkedPair& lp : linked_now) {
    const NodePair key{lp.a, lp.b};
    while (it != open_.end() && NodePair{it->first.node_a, it->first.node_b} < key) {
      Contact closed = it->first;
      closed.end = t;
      upd.ends.push_back(closed);
      ++it;
    }
    if (it != open_.end() && NodePair{it->first.node_a, it->first.node_b} == key) {
      next.emplace_back(it->first, lp.link);
      ++it;
    } else {
      Contact c{lp.a, lp.b, lp.link.kind, t, std::nullopt};
      upd.starts.push_back(c);
      next.emplace_back(c, lp.link);
    }
  }
  for (; it != open_.end(); ++it) {
    Contact closed = it->first;
    closed.end = t;
    upd.ends.push_back(closed);
  }
  open_ = std::move(next);
  return upd;
}

std::vector<Contact> ContactTable::close_all(Seconds t) {
  std::vector<Contact> out;
  out.reserve(open_.size());
  for (auto& [c, link] : open_) {
    Contact closed = c;
    closed.end = t;
    out.push_back(closed);
  }
  open_.clear();
  return out;
}

DetectResult detect_contacts(std::span<const geomap::Point> positions,
                             std::span<const std::vector<InterfaceSpec>> interfaces,
                             std::span<const Contact> open_contacts, Seconds t) {
  std::vector<Contact> prior(open_contacts.begin(), open_contacts.end());
  for (Contact& c : prior) {
    if (c.node_a > c.node_b) std::swap(c.node_a, c.node_b);
  }
  std::sort(prior.begin(), prior.end(), [](const Contact& x, const Contact& y) {
    return NodePair{x.node_a, x.node_b} < NodePair{y.node_a, y.node_b};
  });

  const auto linked = scan_links(positions, interfaces);
  DetectResult r;
  auto it = prior.begin();
  for (const LinkedPair& lp : linked) {
    const NodePair key{lp.a, lp.b};
    while (it != prior.end() && NodePair{it->node_a, it->node_b} < key) {
      Contact closed = *it++;
      closed.end = t;
      r.ends.push_back(closed);
    }
    if (it != prior.end() && NodePair{it->node_a, it->node_b} == key) {
      r.open.push_back(*it++);
    } else {
      Contact c{lp.a, lp.b, lp.link.kind, t, std::nullopt};
      r.starts.push_back(c);
      r.open.push_back(c);
    }
  }
  for (; it != prior.end(); ++it) {
    Contact closed = *it;
    closed.end = t;
    r.ends.push_back(closed);
  }
  return r;
}

Seconds transfer_duration(Bytes message_size, double bitrate) {
  if (!(bitrate > 0.0)) throw BadLinkError("link bitrate must be positive");
  if (std::isinf(bitrate)) return 0.0;
  return static_cast<double>(message_size) * 8.0 / bitrate;
}

}  // namespace railmule::radio
