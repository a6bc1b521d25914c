#include "nmcdse/spatial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "nmcdse/entropy.hpp"
#include "nmcdse/lru.hpp"

namespace nmcdse {
namespace {

void validate_config(const SpatialConfig& config) {
  if (config.line_sizes.size() < 2) {
    throw std::invalid_argument("need at least two line sizes to form a pair");
  }
  for (std::size_t i = 0; i < config.line_sizes.size(); ++i) {
    std::uint32_t size = config.line_sizes[i];
    if (size == 0 || !std::has_single_bit(size)) {
      throw std::invalid_argument("line sizes must be powers of two");
    }
    if (i > 0 && size != 2 * config.line_sizes[i - 1]) {
      throw std::invalid_argument(
          "line sizes must be consecutive doublings");
    }
  }
  if (config.capacity_bytes < config.line_sizes.back()) {
    throw std::invalid_argument("capacity must hold at least one line");
  }
  std::size_t pairs = config.line_sizes.size() - 1;
  if (!config.weights.empty()) {
    if (config.weights.size() != pairs) {
      throw std::invalid_argument(
          "weights must match the number of line-size pairs");
    }
    double sum = 0.0;
    for (double w : config.weights) {
      if (w < 0.0) throw std::invalid_argument("weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("weights must sum to 1");
    }
  }
}

}  // namespace

SpatialResult spatial_locality_addresses(
    std::span<const std::uint64_t> addresses, const SpatialConfig& config) {
  validate_config(config);
  if (addresses.empty()) throw EmptyAddressStreamError();

  std::vector<std::uint64_t> misses(config.line_sizes.size());
  for (std::size_t i = 0; i < config.line_sizes.size(); ++i) {
    misses[i] =
        lru_miss_count(addresses, config.line_sizes[i], config.capacity_bytes);
  }

  SpatialResult result;
  std::size_t pairs = config.line_sizes.size() - 1;
  result.pairs.reserve(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    double score = 1.0;
    if (misses[i] > 0) {
      double m_fine = static_cast<double>(misses[i]);
      double m_coarse = static_cast<double>(misses[i + 1]);
      score = std::clamp(2.0 * (m_fine - m_coarse) / m_fine, 0.0, 1.0);
    }
    result.pairs.push_back({config.line_sizes[i], score});
  }

  for (std::size_t i = 0; i < pairs; ++i) {
    double weight = config.weights.empty()
                        ? 1.0 / static_cast<double>(pairs)
                        : config.weights[i];
    result.total += weight * result.pairs[i].score;
  }
  return result;
}

SpatialResult spatial_locality(const Trace& trace,
                               const SpatialConfig& config) {
  return spatial_locality_addresses(memory_addresses(trace), config);
}

}  // namespace nmcdse
