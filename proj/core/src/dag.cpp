#include "nmcdse/dag.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace nmcdse {
namespace {

void check_config(const DagConfig& config) {
  if (config.mem_dep_line_bytes == 0 ||
      !std::has_single_bit(config.mem_dep_line_bytes)) {
    throw std::invalid_argument("mem_dep_line_bytes must be a power of two");
  }
  if (config.max_tracked_lines == 0) {
    throw std::invalid_argument("max_tracked_lines must be >= 1");
  }
}

/// Latest value per store line, evicting the oldest-inserted line once the
/// bound is hit. Updates to an existing line keep its insertion slot.
class BoundedLineMap {
 public:
  explicit BoundedLineMap(std::uint64_t max_lines) : max_lines_(max_lines) {}

  const std::uint64_t* find(std::uint64_t line) const {
    auto it = map_.find(line);
    return it == map_.end() ? nullptr : &it->second;
  }

  void put(std::uint64_t line, std::uint64_t value) {
    auto it = map_.find(line);
    if (it != map_.end()) {
      it->second = value;
      return;
    }
    if (map_.size() >= max_lines_) {
      map_.erase(fifo_.front());
      fifo_.pop_front();
    }
    map_.emplace(line, value);
    fifo_.push_back(line);
  }

 private:
  std::uint64_t max_lines_;
  std::unordered_map<std::uint64_t, std::uint64_t> map_;
  std::deque<std::uint64_t> fifo_;
};

}  // namespace

DagResult dependence_dag(const Trace& trace, const DagConfig& config) {
  check_config(config);
  const int line_shift = std::countr_zero(
      static_cast<std::uint64_t>(config.mem_dep_line_bytes));

  DagResult result;
  result.node_count = trace.records.size();

  std::unordered_map<std::uint32_t, std::uint64_t> reg_depth;
  BoundedLineMap store_depth(config.max_tracked_lines);

  // depths per class, censused into distinct levels afterwards
  std::array<std::vector<std::uint64_t>, kOpcodeClassCount> class_depths;

  std::uint64_t max_depth = 0;
  for (const InstructionRecord& rec : trace.records) {
    std::uint64_t depth = 0;
    bool has_producer = false;

    for (std::uint32_t src : rec.sources) {
      auto it = reg_depth.find(src);
      if (it != reg_depth.end()) {
        depth = std::max(depth, it->second + 1);
        has_producer = true;
      }
    }
    if (rec.opcode == OpcodeClass::Load && rec.mem_addr) {
      if (const std::uint64_t* d = store_depth.find(*rec.mem_addr >> line_shift)) {
        depth = std::max(depth, *d + 1);
        has_producer = true;
      }
    }
    if (!has_producer) depth = 0;

    if (rec.dest) reg_depth[*rec.dest] = depth;
    if (rec.opcode == OpcodeClass::Store && rec.mem_addr) {
      store_depth.put(*rec.mem_addr >> line_shift, depth);
    }

    auto cls = static_cast<std::size_t>(rec.opcode);
    ++result.class_counts[cls];
    class_depths[cls].push_back(depth);
    max_depth = std::max(max_depth, depth);
  }

  if (result.node_count > 0) result.critical_path_len = max_depth + 1;

  double n_total = static_cast<double>(result.node_count);
  for (std::size_t c = 0; c < kOpcodeClassCount; ++c) {
    auto& depths = class_depths[c];
    if (depths.empty()) continue;
    std::sort(depths.begin(), depths.end());
    result.class_levels[c] = static_cast<std::uint64_t>(
        std::unique(depths.begin(), depths.end()) - depths.begin());
    result.class_dlp[c] = static_cast<double>(result.class_counts[c]) /
                          static_cast<double>(result.class_levels[c]);
    result.dlp_weighted +=
        (static_cast<double>(result.class_counts[c]) / n_total) *
        result.class_dlp[c];
  }
  return result;
}

BlockParallelism block_parallelism(const Trace& trace,
                                   const DagConfig& config) {
  check_config(config);
  const int line_shift = std::countr_zero(
      static_cast<std::uint64_t>(config.mem_dep_line_bytes));

  BlockParallelism result;
  if (trace.records.empty()) return result;

  // chain[b] = longest block chain ending at block b (1-based length)
  std::vector<std::uint64_t> chain;
  std::unordered_map<std::uint32_t, std::uint64_t> reg_block;
  BoundedLineMap store_block(config.max_tracked_lines);

  bool first = true;
  std::uint32_t current_bb = 0;
  std::uint64_t block = 0;

  for (const InstructionRecord& rec : trace.records) {
    if (first || rec.bb_id != current_bb) {
      current_bb = rec.bb_id;
      block = chain.size();
      chain.push_back(1);
      first = false;
    }

    auto depend_on = [&](std::uint64_t producer_block) {
      if (producer_block != block) {
        chain[block] = std::max(chain[block], chain[producer_block] + 1);
      }
    };
    for (std::uint32_t src : rec.sources) {
      auto it = reg_block.find(src);
      if (it != reg_block.end()) depend_on(it->second);
    }
    if (rec.opcode == OpcodeClass::Load && rec.mem_addr) {
      if (const std::uint64_t* b = store_block.find(*rec.mem_addr >> line_shift)) {
        depend_on(*b);
      }
    }

    if (rec.dest) reg_block[*rec.dest] = block;
    if (rec.opcode == OpcodeClass::Store && rec.mem_addr) {
      store_block.put(*rec.mem_addr >> line_shift, block);
    }
  }

  result.block_count = chain.size();
  result.critical_path_len = *std::max_element(chain.begin(), chain.end());
  result.parallelism = static_cast<double>(result.block_count) /
                       static_cast<double>(result.critical_path_len);
  return result;
}

}  // namespace nmcdse
