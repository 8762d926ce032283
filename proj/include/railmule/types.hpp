#pragma once

#include <cstdint>
#include <limits>

namespace railmule {

using NodeId = std::uint32_t;
using MessageId = std::uint64_t;
using Bytes = std::uint64_t;
using Seconds = double;
using Metres = double;

inline constexpr Bytes kUnboundedCapacity = std::numeric_limits<Bytes>::max();
inline constexpr double kUnlimitedBitrate = std::numeric_limits<double>::infinity();

}  // namespace railmule
