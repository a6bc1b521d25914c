#include <doctest.h>

#include <string>
#include <vector>

#include "nmcdse/advisor.hpp"
#include "nmcdse/config.hpp"

using namespace nmcdse;

namespace {

/// A signature with just enough filled in to drive the advisor.
WorkloadSignature make_sig(std::string name, double entropy_bits,
                           double spatial_total, double parallelism,
                           double m1 = 0.9, double m2 = 0.9) {
  WorkloadSignature sig;
  sig.name = std::move(name);
  sig.instruction_count = 1'000'000'000;
  sig.memory_access_count = 500'000'000;
  sig.entropy = EntropyCurve{{EntropyPoint{0, entropy_bits}}};
  sig.spatial = SpatialResult{{}, spatial_total};
  sig.miss_rates = MissRates{m1, m2};
  sig.dlp_weighted = parallelism;
  sig.bb_parallelism = 1.0;
  return sig;
}

}  // namespace

TEST_SUITE("advisor") {

TEST_CASE("a memory-bound irregular kernel is offloaded") {
  // High entropy, poor spatial locality, wide DAG, and miss rates that give
  // the vaults a large modeled advantage.
  WorkloadSignature sig = make_sig("chase", 20.0, 0.1, 16.0);
  OffloadRecommendation rec =
      score_kernel(sig, SystemConfig{}, EnergyParams{}, OffloadThresholds{});

  CHECK(rec.kernel == "chase");
  CHECK(rec.flags.entropy_high);
  CHECK(rec.flags.spatial_low);
  CHECK(rec.flags.parallelism_high);
  CHECK(rec.flags.speedup_met);
  CHECK(!rec.flags.no_memory_stream);
  CHECK(rec.predicted_speedup > 1.1);
  CHECK(rec.verdict == Verdict::Offload);
}

TEST_CASE("speedup alone without a metric quorum is borderline") {
  // Low entropy, good spatial locality, narrow DAG: only one favorable
  // signal (none, actually), even though the model predicts a win.
  WorkloadSignature sig = make_sig("stream", 4.0, 0.9, 2.0);
  OffloadRecommendation rec =
      score_kernel(sig, SystemConfig{}, EnergyParams{}, OffloadThresholds{});

  CHECK(!rec.flags.entropy_high);
  CHECK(!rec.flags.spatial_low);
  CHECK(!rec.flags.parallelism_high);
  CHECK(rec.flags.speedup_met);
  CHECK(rec.verdict == Verdict::Borderline);
}

TEST_CASE("two of three metrics suffice for the quorum") {
  WorkloadSignature sig = make_sig("scatter", 20.0, 0.1, 1.0);
  OffloadRecommendation rec =
      score_kernel(sig, SystemConfig{}, EnergyParams{}, OffloadThresholds{});
  CHECK(rec.flags.entropy_high);
  CHECK(rec.flags.spatial_low);
  CHECK(!rec.flags.parallelism_high);
  CHECK(rec.verdict == Verdict::Offload);
}

TEST_CASE("a quorum without the modeled speedup is borderline") {
  WorkloadSignature sig = make_sig("almost", 20.0, 0.1, 16.0);
  OffloadThresholds strict;
  strict.speedup_min = 1e9;  // unreachable
  OffloadRecommendation rec =
      score_kernel(sig, SystemConfig{}, EnergyParams{}, strict);
  CHECK(!rec.flags.speedup_met);
  CHECK(rec.predicted_speedup >= 1.0);
  CHECK(rec.verdict == Verdict::Borderline);
}

TEST_CASE("a kernel the host runs faster stays on the host") {
  WorkloadSignature sig = make_sig("dense", 20.0, 0.1, 16.0, 0.01, 0.01);
  sig.memory_access_count = 10'000'000;  // compute dominated

  SystemConfig weak;
  weak.n_cores_nmc = 1;  // a single 1.2GHz vault core against 4x3GHz
  OffloadRecommendation rec =
      score_kernel(sig, weak, EnergyParams{}, OffloadThresholds{});
  CHECK(rec.predicted_speedup < 1.0);
  CHECK(rec.verdict == Verdict::KeepOnHost);
}

TEST_CASE("compute-only kernels are never offloaded") {
  WorkloadSignature sig;
  sig.name = "alu";
  sig.instruction_count = 1000;
  sig.memory_access_count = 0;
  sig.dlp_weighted = 1000.0;  // parallelism cannot override the missing stream
  OffloadRecommendation rec =
      score_kernel(sig, SystemConfig{}, EnergyParams{}, OffloadThresholds{});
  CHECK(rec.flags.no_memory_stream);
  CHECK(rec.verdict == Verdict::KeepOnHost);
}

TEST_CASE("zero offload fraction predicts ratios of exactly one") {
  WorkloadSignature sig = make_sig("noop", 20.0, 0.1, 16.0);
  OffloadRecommendation rec = score_kernel(sig, SystemConfig{}, EnergyParams{},
                                           OffloadThresholds{}, 0.0);
  CHECK(rec.predicted_speedup == 1.0);
  CHECK(rec.predicted_energy_ratio == 1.0);
  CHECK(rec.verdict == Verdict::Borderline);  // no loss, but no win either
}

TEST_CASE("ranking orders by speedup, energy, then name") {
  OffloadRecommendation a;
  a.kernel = "a";
  a.predicted_speedup = 2.0;
  a.predicted_energy_ratio = 1.0;
  OffloadRecommendation b;
  b.kernel = "b";
  b.predicted_speedup = 2.0;
  b.predicted_energy_ratio = 3.0;
  OffloadRecommendation c;
  c.kernel = "c";
  c.predicted_speedup = 0.5;
  c.predicted_energy_ratio = 9.0;
  OffloadRecommendation d = a;
  d.kernel = "d";

  auto ranked = rank_kernels({c, d, b, a});
  REQUIRE(ranked.size() == 4);
  CHECK(ranked[0].kernel == "b");   // speedup tie broken by energy
  CHECK(ranked[1].kernel == "a");   // full tie broken by name
  CHECK(ranked[2].kernel == "d");
  CHECK(ranked[3].kernel == "c");
}

TEST_CASE("verdicts have stable names") {
  CHECK(std::string(verdict_name(Verdict::Offload)) == "offload");
  CHECK(std::string(verdict_name(Verdict::KeepOnHost)) == "keep_on_host");
  CHECK(std::string(verdict_name(Verdict::Borderline)) == "borderline");
}

TEST_CASE("thresholds load from config keys") {
  ConfigMap config = ConfigMap::from_string(
      "entropy_min = 12\n"
      "spatial_max = 0.3\n"
      "parallelism_min = 8\n"
      "speedup_min = 1.25\n");
  OffloadThresholds th = thresholds_from(config);
  CHECK(th.entropy_min == 12.0);
  CHECK(th.spatial_max == 0.3);
  CHECK(th.parallelism_min == 8.0);
  CHECK(th.speedup_min == 1.25);
  CHECK(config.unconsumed_keys().empty());
}

}  // TEST_SUITE("advisor")
