#include "railmule/kernels.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace railmule::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void advance_serial(std::span<mobility::Mover> movers, Seconds dt,
                    std::span<geomap::Point> positions) {
  for (std::size_t i = 0; i < movers.size(); ++i) positions[i] = mobility::advance(movers[i], dt);
}

void advance_parallel(std::span<mobility::Mover> movers, Seconds dt,
                      std::span<geomap::Point> positions) {
  const auto n = static_cast<std::ptrdiff_t>(movers.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) positions[i] = mobility::advance(movers[i], dt);
}

std::vector<radio::LinkedPair> scan_links_serial(
    std::span<const geomap::Point> positions,
    std::span<const std::vector<radio::InterfaceSpec>> interfaces) {
  return radio::scan_links(positions, interfaces);
}

std::vector<radio::LinkedPair> LinkScanner::scan(
    std::span<const geomap::Point> positions,
    std::span<const std::vector<radio::InterfaceSpec>> interfaces) {
  const auto n = static_cast<std::ptrdiff_t>(positions.size());
  rows_.resize(positions.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t a = 0; a < n; ++a) {
    auto& row = rows_[a];
    row.clear();
    if (interfaces[a].empty()) continue;
    for (std::ptrdiff_t b = a + 1; b < n; ++b) {
      if (interfaces[b].empty()) continue;
      const Metres d = geomap::distance(positions[a], positions[b]);
      if (auto link = radio::can_link(interfaces[a], interfaces[b], d)) {
        row.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), *link});
      }
    }
  }
  std::size_t total = 0;
  for (const auto& row : rows_) total += row.size();
  std::vector<radio::LinkedPair> out;
  out.reserve(total);
  for (const auto& row : rows_) out.insert(out.end(), row.begin(), row.end());
  return out;
}

std::vector<radio::LinkedPair> scan_links_parallel(
    std::span<const geomap::Point> positions,
    std::span<const std::vector<radio::InterfaceSpec>> interfaces) {
  LinkScanner scanner;
  return scanner.scan(positions, interfaces);
}

}  // namespace railmule::kernels
