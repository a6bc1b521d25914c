#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nmcdse/trace.hpp"

namespace nmcdse {

/// Raised by address-stream metrics when a trace has no LOAD/STORE records.
class EmptyAddressStreamError : public std::runtime_error {
 public:
  EmptyAddressStreamError() : std::runtime_error("empty address stream") {}
};

struct EntropyPoint {
  std::uint32_t bit_reduction = 0;
  double entropy_bits = 0.0;
};

/// Address-stream entropy at successively coarser granularities. Dropping
/// low-order bits merges symbols, so entropy_bits is non-increasing in
/// bit_reduction.
struct EntropyCurve {
  std::vector<EntropyPoint> points;
};

/// Shannon entropy of the distribution of (mem_addr >> bit_reduction) over
/// all LOAD/STORE records. bit_reduction must lie in [0, 63]. Order-stable:
/// summation runs over symbols in sorted order, so permuting the trace leaves
/// the result bit-identical.
double memory_entropy(const Trace& trace, std::uint32_t bit_reduction);
double memory_entropy_addresses(std::span<const std::uint64_t> addresses,
                                std::uint32_t bit_reduction);

/// One entropy point per reduction. Reductions must be sorted ascending; the
/// coarser distributions are folded from the finest one, so a single pass
/// over the trace suffices.
EntropyCurve entropy_curve(const Trace& trace,
                           std::span<const std::uint32_t> reductions);
EntropyCurve entropy_curve_addresses(std::span<const std::uint64_t> addresses,
                                     std::span<const std::uint32_t> reductions);

}  // namespace nmcdse
