#include "nmcdse/synthetic.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace nmcdse {
namespace {

/// Emits records with sequential seq_ids, bb boundaries every block_len
/// records, register dependences per DepShape, and compute records
/// interleaved to hit the requested mix.
class TraceBuilder {
 public:
  TraceBuilder(Trace& trace, const PatternSpec& spec)
      : trace_(trace), spec_(spec) {
    if (spec.compute_mix < 1.0) {
      // compute records per memory record keeping the overall fraction
      compute_per_mem_ = spec.compute_mix / (1.0 - spec.compute_mix);
    }
  }

  void memory(OpcodeClass op, std::uint64_t addr) {
    emit(op, addr);
    carry_ += compute_per_mem_;
    while (carry_ >= 1.0) {
      compute();
      carry_ -= 1.0;
    }
  }

  void compute() {
    static constexpr OpcodeClass kComputeCycle[4] = {
        OpcodeClass::IAdd, OpcodeClass::FAdd, OpcodeClass::FMul,
        OpcodeClass::IMul};
    emit(kComputeCycle[index_ % 4], std::nullopt);
  }

 private:
  void emit(OpcodeClass op, std::optional<std::uint64_t> addr) {
    InstructionRecord rec;
    rec.seq_id = index_;
    rec.opcode = op;
    rec.bb_id = static_cast<std::uint32_t>(index_ / spec_.block_len);

    switch (spec_.dep_shape) {
      case DepShape::Independent:
        if (op != OpcodeClass::Store) {
          rec.dest = static_cast<std::uint32_t>(index_ % 16);
        }
        break;
      case DepShape::Chain:
        // two registers ping-pong so every record reads its predecessor
        if (index_ > 0) {
          rec.sources.push_back(static_cast<std::uint32_t>((index_ - 1) % 2));
        }
        if (op != OpcodeClass::Store) {
          rec.dest = static_cast<std::uint32_t>(index_ % 2);
        }
        break;
      case DepShape::Fanout:
        // record t reads the destination of record (t-1)/k: a k-ary tree
        if (index_ > 0) {
          rec.sources.push_back(
              static_cast<std::uint32_t>((index_ - 1) / spec_.fanout));
        }
        if (op != OpcodeClass::Store) {
          rec.dest = static_cast<std::uint32_t>(index_);
        }
        break;
    }

    if (addr) {
      rec.mem_addr = addr;
      rec.mem_size = spec_.element_size;
    }
    trace_.records.push_back(std::move(rec));
    ++index_;
  }

  Trace& trace_;
  const PatternSpec& spec_;
  std::uint64_t index_ = 0;
  double compute_per_mem_ = 0.0;
  double carry_ = 0.0;
};

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void validate_spec(const PatternSpec& spec) {
  check(spec.n_accesses >= 1, "n_accesses must be >= 1");
  check(valid_mem_size(spec.element_size),
        "element_size must be a power of two in [1, 64]");
  check(spec.compute_mix >= 0.0 && spec.compute_mix <= 1.0,
        "compute_mix must lie in [0, 1]");
  check(spec.block_len >= 1, "block_len must be >= 1");
  check(spec.fanout >= 1, "fanout must be >= 1");
  switch (spec.kind) {
    case PatternKind::Strided:
      check(spec.stride_bytes >= 1, "stride_bytes must be >= 1");
      break;
    case PatternKind::Random:
      check(spec.range_bytes >= spec.element_size,
            "range_bytes must cover at least one element");
      break;
    case PatternKind::PointerChase:
      check(spec.nodes >= 1, "nodes must be >= 1");
      break;
    case PatternKind::Stencil1d:
      check(spec.array_bytes / spec.element_size >= 3,
            "array_bytes must cover at least 3 elements");
      check(spec.sweeps >= 1, "sweeps must be >= 1");
      break;
    case PatternKind::Diagonal:
      check(spec.matrix_dim >= 1, "matrix_dim must be >= 1");
      break;
    case PatternKind::Sequential:
      break;
  }
}

void gen_addresses(const PatternSpec& spec, TraceBuilder& builder) {
  std::mt19937_64 rng(spec.rng_seed);
  const std::uint64_t e = spec.element_size;
  switch (spec.kind) {
    case PatternKind::Sequential:
      for (std::uint64_t i = 0; i < spec.n_accesses; ++i) {
        builder.memory(OpcodeClass::Load, spec.base_addr + i * e);
      }
      break;
    case PatternKind::Strided:
      for (std::uint64_t i = 0; i < spec.n_accesses; ++i) {
        builder.memory(OpcodeClass::Load,
                       spec.base_addr + i * spec.stride_bytes);
      }
      break;
    case PatternKind::Random: {
      const std::uint64_t slots = spec.range_bytes / e;
      for (std::uint64_t i = 0; i < spec.n_accesses; ++i) {
        builder.memory(OpcodeClass::Load, spec.base_addr + (rng() % slots) * e);
      }
      break;
    }
    case PatternKind::PointerChase: {
      // Sattolo's shuffle: a uniform single-cycle permutation, so the chase
      // visits every node before repeating.
      constexpr std::uint64_t kNodeBytes = 64;
      std::vector<std::uint64_t> next(spec.nodes);
      std::iota(next.begin(), next.end(), 0);
      for (std::uint64_t i = spec.nodes - 1; i >= 1; --i) {
        std::uint64_t j = rng() % i;
        std::swap(next[i], next[j]);
      }
      std::uint64_t cur = 0;
      for (std::uint64_t i = 0; i < spec.n_accesses; ++i) {
        builder.memory(OpcodeClass::Load, spec.base_addr + cur * kNodeBytes);
        cur = next[cur];
      }
      break;
    }
    case PatternKind::Diagonal: {
      // one load per cell, walking wrapped diagonals of a dim x dim matrix
      const std::uint64_t dim = spec.matrix_dim;
      for (std::uint64_t d = 0; d < dim; ++d) {
        for (std::uint64_t i = 0; i < dim; ++i) {
          std::uint64_t j = (i + d) % dim;
          builder.memory(OpcodeClass::Load,
                         spec.base_addr + (i * dim + j) * e);
        }
      }
      break;
    }
    case PatternKind::Stencil1d:
      break;  // handled by gen_stencil
  }
}

/// Jacobi-style 3-point stencil ping-ponging between two arrays. Per point:
/// three loads, two adds, one scale, one store, with true register
/// dependences. Stores feed the next sweep's loads.
void gen_stencil(const PatternSpec& spec, Trace& trace) {
  const std::uint64_t e = spec.element_size;
  const std::uint64_t elems = spec.array_bytes / e;
  const std::uint64_t a = spec.base_addr;
  const std::uint64_t b = spec.base_addr + spec.array_bytes;

  std::uint64_t seq = 0;
  auto emit = [&](OpcodeClass op, std::optional<std::uint32_t> dest,
                  std::initializer_list<std::uint32_t> sources,
                  std::optional<std::uint64_t> addr) {
    InstructionRecord rec;
    rec.seq_id = seq;
    rec.opcode = op;
    rec.bb_id = static_cast<std::uint32_t>(seq / spec.block_len);
    rec.dest = dest;
    rec.sources.assign(sources);
    if (addr) {
      rec.mem_addr = addr;
      rec.mem_size = spec.element_size;
    }
    trace.records.push_back(std::move(rec));
    ++seq;
  };

  for (std::uint32_t sweep = 0; sweep < spec.sweeps; ++sweep) {
    const std::uint64_t src = (sweep % 2 == 0) ? a : b;
    const std::uint64_t dst = (sweep % 2 == 0) ? b : a;
    for (std::uint64_t i = 1; i + 1 < elems; ++i) {
      emit(OpcodeClass::Load, 1, {}, src + (i - 1) * e);
      emit(OpcodeClass::Load, 2, {}, src + i * e);
      emit(OpcodeClass::Load, 3, {}, src + (i + 1) * e);
      emit(OpcodeClass::FAdd, 4, {1, 2}, std::nullopt);
      emit(OpcodeClass::FAdd, 5, {4, 3}, std::nullopt);
      emit(OpcodeClass::FMul, 6, {5}, std::nullopt);
      emit(OpcodeClass::Store, std::nullopt, {6}, dst + i * e);
    }
  }
}

}  // namespace

const char* pattern_name(PatternKind kind) {
  switch (kind) {
    case PatternKind::Sequential: return "sequential";
    case PatternKind::Strided: return "strided";
    case PatternKind::Random: return "random";
    case PatternKind::PointerChase: return "pointer_chase";
    case PatternKind::Stencil1d: return "stencil1d";
    case PatternKind::Diagonal: return "diagonal";
  }
  return "sequential";
}

std::optional<PatternKind> pattern_from_name(std::string_view name) {
  for (std::uint8_t i = 0; i <= static_cast<std::uint8_t>(PatternKind::Diagonal);
       ++i) {
    auto kind = static_cast<PatternKind>(i);
    if (name == pattern_name(kind)) return kind;
  }
  return std::nullopt;
}

const char* dep_shape_name(DepShape shape) {
  switch (shape) {
    case DepShape::Independent: return "independent";
    case DepShape::Chain: return "chain";
    case DepShape::Fanout: return "fanout";
  }
  return "independent";
}

Trace generate_synthetic(const PatternSpec& spec) {
  validate_spec(spec);

  Trace trace;
  trace.meta.name = spec.name.empty() ? pattern_name(spec.kind) : spec.name;
  trace.meta.element_size = spec.element_size;
  trace.meta.source = std::string("synthetic:") + pattern_name(spec.kind);

  if (spec.kind == PatternKind::Stencil1d) {
    gen_stencil(spec, trace);
    return trace;
  }

  TraceBuilder builder(trace, spec);
  if (spec.compute_mix >= 1.0) {
    for (std::uint64_t i = 0; i < spec.n_accesses; ++i) builder.compute();
    return trace;
  }
  gen_addresses(spec, builder);
  return trace;
}

}  // namespace nmcdse
