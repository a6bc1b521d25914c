#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nmcdse/trace.hpp"

namespace nmcdse {

/// Miss-rate drop when the line size doubles from line_size to 2*line_size
/// under a fixed-capacity fully associative LRU cache:
///
///   score = clamp(2 * (M(L) - M(2L)) / M(L), 0, 1)
///
/// where M(L) is the miss count at line size L. M(L) == 0 yields 1.0 (the
/// stream already fits; doubling cannot help, but it cannot hurt either).
struct SpatialPair {
  std::uint32_t line_size = 0;  // the smaller line size L of the pair
  double score = 0.0;
};

struct SpatialResult {
  std::vector<SpatialPair> pairs;
  /// Weighted sum of pair scores; weights default to uniform.
  double total = 0.0;
};

struct SpatialConfig {
  /// Consecutive doublings evaluated: sizes[i] -> sizes[i+1]. Each entry must
  /// be a power of two and exactly double its predecessor.
  std::vector<std::uint32_t> line_sizes = {8, 16, 32, 64, 128};
  /// LRU capacity in bytes, fixed across line sizes.
  std::uint64_t capacity_bytes = 32768;
  /// Per-pair weights; empty means uniform (1/num_pairs each).
  std::vector<double> weights;
};

/// Throws EmptyAddressStreamError when no LOAD/STORE records exist and
/// std::invalid_argument when the config is malformed.
SpatialResult spatial_locality(const Trace& trace, const SpatialConfig& config);
SpatialResult spatial_locality_addresses(std::span<const std::uint64_t> addresses,
                                         const SpatialConfig& config);

}  // namespace nmcdse
