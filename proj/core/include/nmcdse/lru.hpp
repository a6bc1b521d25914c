#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "nmcdse/trace.hpp"

namespace nmcdse {

/// Reuse (stack) distance histogram: distance -> access count. A stack
/// distance is the number of distinct lines touched since the previous access
/// to the same line. Cold first touches are counted apart instead of being
/// folded in as an arbitrary infinite distance.
struct ReuseHistogram {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t cold = 0;
};

struct LruResult {
  std::uint64_t accesses = 0;
  std::uint64_t misses = 0;  // cold + capacity
  std::uint64_t distinct_lines = 0;
  ReuseHistogram histogram;
};

/// Incremental fully associative LRU stack with exact per-access stack
/// distances (Bennett-Kruskal: last-access table plus a Fenwick tree over
/// access timestamps). O(log n) per access.
class LruStack {
 public:
  /// capacity_hint reserves internal structures for that many accesses.
  explicit LruStack(std::uint64_t capacity_lines, std::uint64_t capacity_hint = 0);

  struct Access {
    bool miss = false;
    std::optional<std::uint64_t> stack_distance;  // nullopt on a cold touch
  };

  Access access(std::uint64_t line);

  std::uint64_t capacity_lines() const { return capacity_lines_; }
  std::uint64_t distinct_lines() const;

 private:
  void fenwick_add(std::size_t pos, int delta);
  std::uint64_t fenwick_prefix(std::size_t pos) const;

  std::uint64_t capacity_lines_;
  std::uint64_t clock_ = 0;
  std::vector<std::int32_t> tree_;
  // line -> 1-based Fenwick position of its most recent access
  std::unordered_map<std::uint64_t, std::uint64_t> last_;
};

/// Full simulation of a fully associative LRU cache over line-granular
/// addresses. Misses count cold plus capacity misses. line_size and capacity
/// must be powers of two with capacity >= line_size.
LruResult simulate_lru(const Trace& trace, std::uint64_t line_size,
                       std::uint64_t capacity);
LruResult simulate_lru_addresses(std::span<const std::uint64_t> addresses,
                                 std::uint64_t line_size, std::uint64_t capacity);

/// Miss count only, via a bounded LRU list: O(1) per access and memory
/// proportional to the capacity. Agrees exactly with simulate_lru.
std::uint64_t lru_miss_count(std::span<const std::uint64_t> addresses,
                             std::uint64_t line_size, std::uint64_t capacity);

/// Same, but also returns the miss stream (line-start byte addresses, in
/// access order) so a second cache level can be fed with it.
std::uint64_t lru_miss_stream(std::span<const std::uint64_t> addresses,
                              std::uint64_t line_size, std::uint64_t capacity,
                              std::vector<std::uint64_t>& miss_addresses);

/// LOAD/STORE byte addresses of a trace, in order.
std::vector<std::uint64_t> memory_addresses(const Trace& trace);

}  // namespace nmcdse
