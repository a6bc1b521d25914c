#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nmcdse/entropy.hpp"
#include "nmcdse/lru.hpp"
#include "nmcdse/spatial.hpp"
#include "nmcdse/synthetic.hpp"
#include "reference_oracles.hpp"

using namespace nmcdse;

TEST_SUITE("spatial") {

TEST_CASE("unit stride scores 1.0 on every pair") {
  // 32768 x 8B = 256KB, eight times the 32KB capacity: misses halve exactly
  // with every line doubling.
  PatternSpec spec;
  spec.n_accesses = 32768;
  spec.element_size = 8;
  Trace t = generate_synthetic(spec);

  SpatialResult r = spatial_locality(t, SpatialConfig{});
  REQUIRE(r.pairs.size() == 4);
  for (const auto& pair : r.pairs) CHECK(pair.score == 1.0);
  CHECK(r.total == 1.0);
  CHECK(r.pairs[0].line_size == 8);
  CHECK(r.pairs[3].line_size == 64);
}

TEST_CASE("stride of twice the line scores 0.0 for that pair") {
  // Stride 16 hits a fresh 8B line *and* a fresh 16B line every access, so
  // doubling 8 -> 16 removes nothing.
  PatternSpec spec;
  spec.kind = PatternKind::Strided;
  spec.n_accesses = 4096;
  spec.stride_bytes = 16;
  Trace t = generate_synthetic(spec);

  SpatialConfig config;
  config.line_sizes = {8, 16};
  SpatialResult r = spatial_locality(t, config);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].score == 0.0);
  CHECK(r.total == 0.0);
}

TEST_CASE("stride of half the line scores 1.0 for that pair") {
  // Stride 8 against a 16 -> 32 doubling: misses drop from n/2 to n/4.
  PatternSpec spec;
  spec.kind = PatternKind::Strided;
  spec.n_accesses = 16384;
  spec.stride_bytes = 8;
  spec.element_size = 8;
  Trace t = generate_synthetic(spec);

  SpatialConfig config;
  config.line_sizes = {16, 32};
  SpatialResult r = spatial_locality(t, config);
  CHECK(r.pairs[0].score == 1.0);
}

TEST_CASE("pure temporal reuse is not spatial locality") {
  // One address repeated: the single cold miss survives any line doubling,
  // so no pair sees a miss reduction.
  std::vector<std::uint64_t> addrs(64, 0x100);
  SpatialResult r = spatial_locality_addresses(addrs, SpatialConfig{});
  for (const auto& pair : r.pairs) CHECK(pair.score == 0.0);
  CHECK(r.total == 0.0);
}

TEST_CASE("far-apart random accesses score near zero") {
  PatternSpec spec;
  spec.kind = PatternKind::Random;
  spec.n_accesses = 20000;
  spec.element_size = 8;
  spec.range_bytes = std::uint64_t{1} << 30;
  spec.rng_seed = 101;
  Trace t = generate_synthetic(spec);

  SpatialResult r = spatial_locality(t, SpatialConfig{});
  CHECK(r.total <= 0.05);
}

TEST_CASE("scores agree with a naive replay at both line sizes") {
  PatternSpec spec;
  spec.kind = PatternKind::Random;
  spec.n_accesses = 2000;
  spec.range_bytes = 1 << 14;
  spec.rng_seed = 7;
  Trace t = generate_synthetic(spec);
  const auto addrs = memory_addresses(t);

  SpatialConfig config;
  config.line_sizes = {32, 64};
  config.capacity_bytes = 4096;
  SpatialResult r = spatial_locality(t, config);

  const double m_fine =
      static_cast<double>(oracle::naive_miss_count(addrs, 32, 4096));
  const double m_coarse =
      static_cast<double>(oracle::naive_miss_count(addrs, 64, 4096));
  double expected = 2.0 * (m_fine - m_coarse) / m_fine;
  expected = std::clamp(expected, 0.0, 1.0);
  CHECK(r.pairs[0].score == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("weights steer the total") {
  PatternSpec spec;
  spec.n_accesses = 32768;
  spec.element_size = 8;
  Trace t = generate_synthetic(spec);

  SpatialConfig config;
  config.weights = {1.0, 0.0, 0.0, 0.0};
  SpatialResult r = spatial_locality(t, config);
  CHECK(r.total == r.pairs[0].score);
}

TEST_CASE("malformed configs are rejected") {
  std::vector<std::uint64_t> addrs{0, 8, 16};

  SpatialConfig config;
  config.line_sizes = {8};
  CHECK_THROWS_AS(spatial_locality_addresses(addrs, config),
                  std::invalid_argument);

  config.line_sizes = {8, 32};  // not a doubling
  CHECK_THROWS_AS(spatial_locality_addresses(addrs, config),
                  std::invalid_argument);

  config.line_sizes = {8, 16};
  config.capacity_bytes = 8;  // smaller than the largest line
  CHECK_THROWS_AS(spatial_locality_addresses(addrs, config),
                  std::invalid_argument);

  config = SpatialConfig{};
  config.weights = {0.5, 0.5};  // four pairs, two weights
  CHECK_THROWS_AS(spatial_locality_addresses(addrs, config),
                  std::invalid_argument);

  config.weights = {0.5, 0.5, 0.5, 0.5};  // sums to 2
  CHECK_THROWS_AS(spatial_locality_addresses(addrs, config),
                  std::invalid_argument);

  std::vector<std::uint64_t> empty;
  CHECK_THROWS_AS(spatial_locality_addresses(empty, SpatialConfig{}),
                  EmptyAddressStreamError);
}

}  // TEST_SUITE("spatial")
