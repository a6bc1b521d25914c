#include "nmcdse/lru.hpp"

#include <bit>
#include <stdexcept>

namespace nmcdse {
namespace {

void check_geometry(std::uint64_t line_size, std::uint64_t capacity) {
  if (line_size == 0 || !std::has_single_bit(line_size)) {
    throw std::invalid_argument("line_size must be a power of two");
  }
  if (capacity == 0 || !std::has_single_bit(capacity)) {
    throw std::invalid_argument("capacity must be a power of two");
  }
  if (capacity < line_size) {
    throw std::invalid_argument("capacity must be at least one line");
  }
}

/// Fixed-capacity LRU over line ids: hash map into an intrusive doubly
/// linked list kept in a preallocated node pool. O(1) per access.
class BoundedLru {
 public:
  explicit BoundedLru(std::uint64_t capacity_lines)
      : capacity_(capacity_lines) {
    nodes_.reserve(capacity_);
    index_.reserve(capacity_ * 2);
  }

  /// Returns true on a miss (cold or capacity).
  bool access(std::uint64_t line) {
    auto it = index_.find(line);
    if (it != index_.end()) {
      move_to_front(it->second);
      return false;
    }
    std::uint32_t node;
    if (nodes_.size() < capacity_) {
      node = static_cast<std::uint32_t>(nodes_.size());
      nodes_.push_back(Node{line, kNull, kNull});
    } else {
      node = tail_;
      unlink(node);
      index_.erase(nodes_[node].line);
      nodes_[node].line = line;
    }
    push_front(node);
    index_.emplace(line, node);
    return true;
  }

 private:
  static constexpr std::uint32_t kNull = 0xffffffff;

  struct Node {
    std::uint64_t line;
    std::uint32_t prev;
    std::uint32_t next;
  };

  void unlink(std::uint32_t n) {
    Node& node = nodes_[n];
    if (node.prev != kNull) {
      nodes_[node.prev].next = node.next;
    } else {
      head_ = node.next;
    }
    if (node.next != kNull) {
      nodes_[node.next].prev = node.prev;
    } else {
      tail_ = node.prev;
    }
  }

  void push_front(std::uint32_t n) {
    Node& node = nodes_[n];
    node.prev = kNull;
    node.next = head_;
    if (head_ != kNull) nodes_[head_].prev = n;
    head_ = n;
    if (tail_ == kNull) tail_ = n;
  }

  void move_to_front(std::uint32_t n) {
    if (head_ == n) return;
    unlink(n);
    push_front(n);
  }

  std::uint64_t capacity_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::uint32_t head_ = kNull;
  std::uint32_t tail_ = kNull;
};

}  // namespace

LruStack::LruStack(std::uint64_t capacity_lines, std::uint64_t capacity_hint)
    : capacity_lines_(capacity_lines) {
  if (capacity_lines_ == 0) {
    throw std::invalid_argument("capacity must be at least one line");
  }
  tree_.assign(capacity_hint > 0 ? capacity_hint + 1 : 1024, 0);
  if (capacity_hint > 0) last_.reserve(capacity_hint);
}

void LruStack::fenwick_add(std::size_t pos, int delta) {
  for (; pos < tree_.size(); pos += pos & (~pos + 1)) {
    tree_[pos] += delta;
  }
}

std::uint64_t LruStack::fenwick_prefix(std::size_t pos) const {
  std::uint64_t sum = 0;
  for (; pos > 0; pos -= pos & (~pos + 1)) {
    sum += static_cast<std::uint64_t>(tree_[pos]);
  }
  return sum;
}

LruStack::Access LruStack::access(std::uint64_t line) {
  ++clock_;
  if (clock_ >= tree_.size()) {
    // Fenwick prefixes cover old positions, so growth rebuilds from the
    // live markers (one per distinct line) rather than memcpying the array.
    std::size_t new_size = tree_.size() * 2;
    tree_.assign(new_size, 0);
    for (const auto& [_, pos] : last_) fenwick_add(pos, 1);
  }

  Access result;
  auto it = last_.find(line);
  if (it == last_.end()) {
    result.miss = true;
  } else {
    std::uint64_t prev_pos = it->second;
    // markers between the two accesses = distinct lines touched in between
    std::uint64_t distance = fenwick_prefix(clock_ - 1) - fenwick_prefix(prev_pos);
    result.stack_distance = distance;
    result.miss = distance >= capacity_lines_;
    fenwick_add(prev_pos, -1);
  }
  fenwick_add(clock_, 1);
  last_[line] = clock_;
  return result;
}

std::uint64_t LruStack::distinct_lines() const { return last_.size(); }

LruResult simulate_lru_addresses(std::span<const std::uint64_t> addresses,
                                 std::uint64_t line_size,
                                 std::uint64_t capacity) {
  check_geometry(line_size, capacity);
  const int shift = std::countr_zero(line_size);

  LruResult result;
  result.accesses = addresses.size();
  LruStack stack(capacity / line_size, addresses.size());
  for (std::uint64_t addr : addresses) {
    LruStack::Access a = stack.access(addr >> shift);
    if (a.miss) ++result.misses;
    if (a.stack_distance) {
      ++result.histogram.counts[*a.stack_distance];
    } else {
      ++result.histogram.cold;
    }
  }
  result.distinct_lines = stack.distinct_lines();
  return result;
}

LruResult simulate_lru(const Trace& trace, std::uint64_t line_size,
                       std::uint64_t capacity) {
  return simulate_lru_addresses(memory_addresses(trace), line_size, capacity);
}

std::uint64_t lru_miss_count(std::span<const std::uint64_t> addresses,
                             std::uint64_t line_size, std::uint64_t capacity) {
  check_geometry(line_size, capacity);
  const int shift = std::countr_zero(line_size);
  BoundedLru cache(capacity / line_size);
  std::uint64_t misses = 0;
  for (std::uint64_t addr : addresses) {
    misses += cache.access(addr >> shift) ? 1 : 0;
  }
  return misses;
}

std::uint64_t lru_miss_stream(std::span<const std::uint64_t> addresses,
                              std::uint64_t line_size, std::uint64_t capacity,
                              std::vector<std::uint64_t>& miss_addresses) {
  check_geometry(line_size, capacity);
  const int shift = std::countr_zero(line_size);
  BoundedLru cache(capacity / line_size);
  miss_addresses.clear();
  for (std::uint64_t addr : addresses) {
    std::uint64_t line = addr >> shift;
    if (cache.access(line)) {
      miss_addresses.push_back(line << shift);
    }
  }
  return miss_addresses.size();
}

std::vector<std::uint64_t> memory_addresses(const Trace& trace) {
  std::size_t count = 0;
  for (const InstructionRecord& r : trace.records) {
    if (is_memory_op(r.opcode) && r.mem_addr) ++count;
  }
  std::vector<std::uint64_t> addresses;
  addresses.reserve(count);
  for (const InstructionRecord& r : trace.records) {
    if (is_memory_op(r.opcode) && r.mem_addr) {
      addresses.push_back(*r.mem_addr);
    }
  }
  return addresses;
}

}  // namespace nmcdse
