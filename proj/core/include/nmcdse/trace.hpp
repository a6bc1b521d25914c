#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nmcdse {

/// Dynamic instruction classes. LOAD and STORE are the only classes that may
/// carry a memory address.
enum class OpcodeClass : std::uint8_t {
  Load,
  Store,
  IAdd,
  IMul,
  FAdd,
  FMul,
  FDiv,
  Branch,
  Other,
};

inline constexpr std::size_t kOpcodeClassCount = 9;

const char* opcode_name(OpcodeClass op);
std::optional<OpcodeClass> opcode_from_name(std::string_view name);

constexpr bool is_memory_op(OpcodeClass op) {
  return op == OpcodeClass::Load || op == OpcodeClass::Store;
}

/// Memory access sizes are restricted to the power-of-two byte widths real
/// ISAs produce.
constexpr bool valid_mem_size(std::uint32_t size) {
  return size >= 1 && size <= 64 && (size & (size - 1)) == 0;
}

/// One dynamic instruction.
///
/// Invariants: mem_addr is present iff the opcode is LOAD or STORE, mem_size
/// is present iff mem_addr is, and seq_id is strictly increasing within a
/// trace. validate() reports violations of these without throwing.
struct InstructionRecord {
  std::uint64_t seq_id = 0;
  OpcodeClass opcode = OpcodeClass::Other;
  std::uint32_t bb_id = 0;
  std::optional<std::uint32_t> dest;
  std::vector<std::uint32_t> sources;
  std::optional<std::uint64_t> mem_addr;
  std::optional<std::uint32_t> mem_size;  // bytes
};

struct TraceMetadata {
  std::string name;
  std::uint32_t element_size = 8;  // bytes; generator hint, defaults to 8
  std::string source;              // "parsed" or "synthetic:<pattern>"
};

/// An ordered dynamic instruction stream. Immutable after construction by
/// convention; all analyses take it by const reference and may run
/// concurrently on the same trace.
struct Trace {
  TraceMetadata meta;
  std::vector<InstructionRecord> records;

  std::uint64_t memory_access_count() const;
};

enum class ViolationKind : std::uint8_t {
  NonMonotoneSeqId,
  AddressOnNonMemoryOpcode,
  MissingAddressOnMemoryOpcode,
  MemSizeWithoutAddress,
  MissingMemSize,
  InvalidMemSize,
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
  std::uint64_t seq_id = 0;
  ViolationKind kind = ViolationKind::NonMonotoneSeqId;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Lists every record-level invariant violation. An empty report means the
/// trace is well formed. Violations are data, not errors: this never throws.
ValidationReport validate(const Trace& trace);

}  // namespace nmcdse
