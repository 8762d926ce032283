#pragma once

#include <span>
#include <vector>

#include "railmule/geomap.hpp"
#include "railmule/mobility.hpp"
#include "railmule/radio.hpp"

// Per-step data-parallel phases of the engine. Each kernel has a serial
// reference form and an OpenMP form; both must produce identical output.
namespace railmule::kernels {

bool openmp_enabled();
int max_threads();

void advance_serial(std::span<mobility::Mover> movers, Seconds dt,
                    std::span<geomap::Point> positions);
void advance_parallel(std::span<mobility::Mover> movers, Seconds dt,
                      std::span<geomap::Point> positions);

std::vector<radio::LinkedPair> scan_links_serial(
    std::span<const geomap::Point> positions,
    std::span<const std::vector<radio::InterfaceSpec>> interfaces);

// Rows (pairs with a fixed lower id) are scanned in parallel into per-row
// buffers and concatenated in row order, so the result keeps canonical order.
class LinkScanner {
 public:
  std::vector<radio::LinkedPair> scan(std::span<const geomap::Point> positions,
                                      std::span<const std::vector<radio::InterfaceSpec>> interfaces);

 private:
  std::vector<std::vector<radio::LinkedPair>> rows_;
};

std::vector<radio::LinkedPair> scan_links_parallel(
    std::span<const geomap::Point> positions,
    std::span<const std::vector<radio::InterfaceSpec>> interfaces);

}  // namespace railmule::kernels
