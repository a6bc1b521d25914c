#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nmcdse/trace.hpp"

namespace nmcdse {

enum class PatternKind : std::uint8_t {
  Sequential,    // base, base+e, base+2e, ...
  Strided,       // base + i*stride_bytes
  Random,        // uniform over range_bytes, aligned to element_size
  PointerChase,  // single random permutation cycle over `nodes` nodes
  Stencil1d,     // 3-point sweep over two arrays, Jacobi-style
  Diagonal,      // walks every wrapped diagonal of a square matrix
};

enum class DepShape : std::uint8_t {
  Independent,  // no register dependences
  Chain,        // each record reads the previous record's destination
  Fanout,       // record t reads the destination of record (t-1)/k
};

const char* pattern_name(PatternKind kind);
std::optional<PatternKind> pattern_from_name(std::string_view name);
const char* dep_shape_name(DepShape shape);

/// Generator parameters. Output is a pure function of this struct: the same
/// spec (including rng_seed) always yields a bit-identical trace.
///
/// n_accesses drives sequential/strided/random/pointer_chase. stencil1d and
/// diagonal derive their access count from the geometry instead:
///   stencil1d: sweeps * (elems-2) points, 7 records per point (3 loads,
///              3 arithmetic ops, 1 store), elems = array_bytes/element_size
///   diagonal:  matrix_dim^2 loads, one per cell, element_size bytes apart
struct PatternSpec {
  PatternKind kind = PatternKind::Sequential;
  std::uint64_t n_accesses = 1;
  std::uint32_t element_size = 8;
  std::uint64_t base_addr = 0;
  std::uint64_t stride_bytes = 64;        // strided
  std::uint64_t range_bytes = 1 << 20;    // random
  std::uint64_t nodes = 1024;             // pointer_chase
  std::uint64_t array_bytes = 1 << 20;    // stencil1d
  std::uint32_t sweeps = 1;               // stencil1d
  std::uint32_t matrix_dim = 256;         // diagonal
  std::uint64_t rng_seed = 1;
  double compute_mix = 0.0;  // fraction of non-memory records interleaved;
                             // 1.0 means a compute-only trace of n_accesses
                             // records. stencil1d ignores this (its compute
                             // is structural).
  DepShape dep_shape = DepShape::Independent;
  std::uint32_t fanout = 2;     // k for DepShape::Fanout
  std::uint32_t block_len = 16; // bb_id advances every block_len records
  std::string name;             // trace name; defaults to the pattern name
};

Trace generate_synthetic(const PatternSpec& spec);

}  // namespace nmcdse
