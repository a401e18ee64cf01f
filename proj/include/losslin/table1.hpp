#pragma once

#include <optional>

#include "losslin/partition.hpp"

namespace losslin {

inline constexpr int kEmbeddedMinSegments = 2;
inline constexpr int kEmbeddedMaxSegments = 11;

/// Precomputed minimax partition for 2..11 lower-bound segments, or nullopt.
std::optional<Partition> embedded_partition(int segments);

}  // namespace losslin
