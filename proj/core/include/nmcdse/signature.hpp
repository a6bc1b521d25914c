#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmcdse/dag.hpp"
#include "nmcdse/entropy.hpp"
#include "nmcdse/spatial.hpp"
#include "nmcdse/trace.hpp"

namespace nmcdse {

class ConfigMap;

struct CharacterizationConfig {
  /// Bit reductions for the entropy curve, sorted ascending.
  std::vector<std::uint32_t> reductions = {0, 3, 6, 9};
  /// Line sizes interpreted as consecutive doublings for spatial locality.
  std::vector<std::uint32_t> line_pairs = {8, 16, 32, 64, 128};
  /// LRU capacity for spatial locality and the L1 miss-rate measurement.
  std::uint64_t capacity = 32768;
  /// LRU capacity for the L2 miss-rate measurement (fed by L1 misses).
  std::uint64_t l2_capacity = 262144;
  /// Line granularity for the m1/m2 measurement caches.
  std::uint32_t line_size = 64;
  /// Spatial pair weights; empty means uniform.
  std::vector<double> weights;
};

/// m1 = L1 misses / accesses; m2 = L2 misses / L1 misses (0 when no L1
/// misses exist).
struct MissRates {
  double m1 = 0.0;
  double m2 = 0.0;
};

/// Microarchitecture-independent description of one traced kernel. Memory
/// metrics (entropy, spatial, miss_rates) are absent for compute-only
/// traces; dependence metrics are always present.
struct WorkloadSignature {
  std::string name;
  std::uint64_t instruction_count = 0;
  std::uint64_t memory_access_count = 0;

  std::array<std::uint64_t, kOpcodeClassCount> class_counts{};
  /// Fractions of instruction_count per opcode class; sums to 1.
  std::array<double, kOpcodeClassCount> instruction_mix{};

  std::optional<EntropyCurve> entropy;
  std::optional<SpatialResult> spatial;
  std::optional<MissRates> miss_rates;

  /// 0 for classes with no instructions.
  std::array<double, kOpcodeClassCount> dlp_per_opcode{};
  double dlp_weighted = 0.0;
  double bb_parallelism = 0.0;

  bool has_memory_metrics() const { return miss_rates.has_value(); }
};

/// Computes every metric in one pass over the trace. Deterministic and
/// order-stable: the same trace yields a bit-identical signature.
WorkloadSignature signature(const Trace& trace,
                            const CharacterizationConfig& config = {});

class SignatureParseError : public std::runtime_error {
 public:
  explicit SignatureParseError(const std::string& reason)
      : std::runtime_error(reason) {}
};

/// JSON with a fixed field order and a schema_version field, terminated by a
/// newline. Absent memory metrics serialize as null.
std::string signature_to_json(const WorkloadSignature& sig);

/// Throws SignatureParseError on malformed JSON, an unsupported
/// schema_version, or missing required fields.
WorkloadSignature signature_from_json(const std::string& text);

CharacterizationConfig characterization_config_from(const ConfigMap& config);

}  // namespace nmcdse
