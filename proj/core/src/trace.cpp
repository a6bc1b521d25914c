#include "nmcdse/trace.hpp"

#include <algorithm>

namespace nmcdse {

const char* opcode_name(OpcodeClass op) {
  switch (op) {
    case OpcodeClass::Load: return "LOAD";
    case OpcodeClass::Store: return "STORE";
    case OpcodeClass::IAdd: return "IADD";
    case OpcodeClass::IMul: return "IMUL";
    case OpcodeClass::FAdd: return "FADD";
    case OpcodeClass::FMul: return "FMUL";
    case OpcodeClass::FDiv: return "FDIV";
    case OpcodeClass::Branch: return "BRANCH";
    case OpcodeClass::Other: return "OTHER";
  }
  return "OTHER";
}

std::optional<OpcodeClass> opcode_from_name(std::string_view name) {
  for (std::uint8_t i = 0; i < kOpcodeClassCount; ++i) {
    auto op = static_cast<OpcodeClass>(i);
    if (name == opcode_name(op)) return op;
  }
  return std::nullopt;
}

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonMonotoneSeqId: return "non-monotone seq_id";
    case ViolationKind::AddressOnNonMemoryOpcode:
      return "address on non-memory opcode";
    case ViolationKind::MissingAddressOnMemoryOpcode:
      return "memory opcode without address";
    case ViolationKind::MemSizeWithoutAddress: return "size without address";
    case ViolationKind::MissingMemSize: return "address without size";
    case ViolationKind::InvalidMemSize: return "invalid access size";
  }
  return "unknown";
}

std::uint64_t Trace::memory_access_count() const {
  return static_cast<std::uint64_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) {
        return is_memory_op(r.opcode) && r.mem_addr.has_value();
      }));
}

ValidationReport validate(const Trace& trace) {
  ValidationReport report;
  auto flag = [&](std::uint64_t seq_id, ViolationKind kind,
                  std::string detail) {
    report.violations.push_back({seq_id, kind, std::move(detail)});
  };

  bool have_prev = false;
  std::uint64_t prev_seq = 0;
  for (const InstructionRecord& r : trace.records) {
    if (have_prev && r.seq_id <= prev_seq) {
      flag(r.seq_id, ViolationKind::NonMonotoneSeqId,
           "seq_id " + std::to_string(r.seq_id) + " follows " +
               std::to_string(prev_seq));
    }
    prev_seq = r.seq_id;
    have_prev = true;

    if (is_memory_op(r.opcode)) {
      if (!r.mem_addr) {
        flag(r.seq_id, ViolationKind::MissingAddressOnMemoryOpcode,
             std::string(opcode_name(r.opcode)) + " without address");
      }
    } else if (r.mem_addr) {
      flag(r.seq_id, ViolationKind::AddressOnNonMemoryOpcode,
           std::string("address on ") + opcode_name(r.opcode));
    }

    if (r.mem_size && !r.mem_addr) {
      flag(r.seq_id, ViolationKind::MemSizeWithoutAddress,
           "size without address");
    }
    if (r.mem_addr && !r.mem_size) {
      flag(r.seq_id, ViolationKind::MissingMemSize, "address without size");
    }
    if (r.mem_size && !valid_mem_size(*r.mem_size)) {
      flag(r.seq_id, ViolationKind::InvalidMemSize,
           "size " + std::to_string(*r.mem_size) +
               " not a power of two in [1, 64]");
    }
  }
  return report;
}

}  // namespace nmcdse
