#include "nmcdse/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "nmcdse/lru.hpp"

namespace nmcdse {
namespace {

using CountMap = std::unordered_map<std::uint64_t, std::uint64_t>;

/// H = log2(n) - (sum c*log2 c)/n, summed over symbols in sorted order so
/// the result is independent of hash iteration order.
double entropy_from_counts(const CountMap& counts, std::uint64_t total) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(counts.begin(),
                                                              counts.end());
  std::sort(sorted.begin(), sorted.end());
  double weighted = 0.0;
  for (const auto& [_, count] : sorted) {
    weighted += static_cast<double>(count) *
                std::log2(static_cast<double>(count));
  }
  double h = std::log2(static_cast<double>(total)) -
             weighted / static_cast<double>(total);
  // The two log2(total) evaluations round differently when one symbol holds
  // every access, leaving a residual of a few ulps below zero.
  return h < 0.0 ? 0.0 : h;
}

void check_reduction(std::uint32_t bit_reduction) {
  if (bit_reduction > 63) {
    throw std::invalid_argument("bit_reduction must lie in [0, 63]");
  }
}

}  // namespace

double memory_entropy_addresses(std::span<const std::uint64_t> addresses,
                                std::uint32_t bit_reduction) {
  check_reduction(bit_reduction);
  if (addresses.empty()) throw EmptyAddressStreamError();

  CountMap counts;
  counts.reserve(addresses.size());
  for (std::uint64_t addr : addresses) {
    ++counts[addr >> bit_reduction];
  }
  return entropy_from_counts(counts, addresses.size());
}

double memory_entropy(const Trace& trace, std::uint32_t bit_reduction) {
  return memory_entropy_addresses(memory_addresses(trace), bit_reduction);
}

EntropyCurve entropy_curve_addresses(
    std::span<const std::uint64_t> addresses,
    std::span<const std::uint32_t> reductions) {
  if (reductions.empty()) {
    throw std::invalid_argument("reductions must be non-empty");
  }
  for (std::size_t i = 0; i < reductions.size(); ++i) {
    check_reduction(reductions[i]);
    if (i > 0 && reductions[i] <= reductions[i - 1]) {
      throw std::invalid_argument("reductions must be sorted ascending");
    }
  }
  if (addresses.empty()) throw EmptyAddressStreamError();

  EntropyCurve curve;
  curve.points.reserve(reductions.size());

  // one pass builds the finest distribution; coarser ones fold it
  CountMap counts;
  counts.reserve(addresses.size());
  for (std::uint64_t addr : addresses) {
    ++counts[addr >> reductions[0]];
  }
  curve.points.push_back(
      {reductions[0], entropy_from_counts(counts, addresses.size())});

  for (std::size_t i = 1; i < reductions.size(); ++i) {
    std::uint32_t shift = reductions[i] - reductions[i - 1];
    CountMap folded;
    folded.reserve(counts.size());
    for (const auto& [symbol, count] : counts) {
      folded[symbol >> shift] += count;
    }
    counts = std::move(folded);
    curve.points.push_back(
        {reductions[i], entropy_from_counts(counts, addresses.size())});
  }
  return curve;
}

EntropyCurve entropy_curve(const Trace& trace,
                           std::span<const std::uint32_t> reductions) {
  return entropy_curve_addresses(memory_addresses(trace), reductions);
}

}  // namespace nmcdse
