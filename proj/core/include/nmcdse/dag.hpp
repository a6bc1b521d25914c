#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nmcdse/trace.hpp"

namespace nmcdse {

/// Depth statistics of the dynamic dependence DAG.
///
/// Each instruction depends on the latest prior writer of each source
/// register, and each LOAD additionally depends on the latest prior STORE to
/// the same 64-byte-aligned address. depth(i) = 1 + max(producer depths),
/// or 0 when the instruction has no producers. The critical path length is
/// 1 + max depth over all instructions (0 for an empty trace).
struct DagResult {
  std::uint64_t node_count = 0;
  std::uint64_t critical_path_len = 0;

  /// Per-opcode-class counts and the number of distinct whole-DAG depth
  /// levels that contain at least one instruction of the class.
  std::array<std::uint64_t, kOpcodeClassCount> class_counts{};
  std::array<std::uint64_t, kOpcodeClassCount> class_levels{};

  /// DLP_c = N_c / L_c for classes with N_c > 0, else 0.
  std::array<double, kOpcodeClassCount> class_dlp{};

  /// Sum over classes of (N_c / N_total) * DLP_c.
  double dlp_weighted = 0.0;
};

struct DagConfig {
  /// STORE->LOAD dependencies are tracked at this granularity.
  std::uint32_t mem_dep_line_bytes = 64;
  /// The store map is bounded; oldest entries are evicted FIFO beyond this.
  std::uint64_t max_tracked_lines = std::uint64_t{1} << 20;
};

DagResult dependence_dag(const Trace& trace, const DagConfig& config = {});

/// Basic-block-level parallelism: the block DAG has one node per dynamic
/// block (maximal run of records sharing bb_id); block depth is 1 + max depth
/// of blocks producing values its instructions consume. Parallelism is
/// node count / critical path length (0 for an empty trace).
struct BlockParallelism {
  std::uint64_t block_count = 0;
  std::uint64_t critical_path_len = 0;
  double parallelism = 0.0;
};

BlockParallelism block_parallelism(const Trace& trace,
                                   const DagConfig& config = {});

}  // namespace nmcdse
