#pragma once

#include <string>
#include <vector>

#include "nmcdse/model.hpp"
#include "nmcdse/signature.hpp"

namespace nmcdse {

/// Heuristic cut-offs for the metric quorum. Defaults are heuristics, not
/// measured values.
struct OffloadThresholds {
  double entropy_min = 10.0;
  double spatial_max = 0.4;
  double parallelism_min = 4.0;
  double speedup_min = 1.1;
};

enum class Verdict { Offload, KeepOnHost, Borderline };

const char* verdict_name(Verdict v);

struct MetricFlags {
  bool entropy_high = false;
  bool spatial_low = false;
  bool parallelism_high = false;
  bool speedup_met = false;
  /// Set for compute-only signatures; forces keep_on_host.
  bool no_memory_stream = false;
};

struct OffloadRecommendation {
  std::string kernel;
  Verdict verdict = Verdict::KeepOnHost;
  MetricFlags flags;
  double predicted_speedup = 0.0;
  double predicted_energy_ratio = 0.0;
};

/// Builds a profile from the signature (measured miss rates, the given
/// offload fraction), prices it with the analytic model, and decides:
/// offload when the modeled speedup clears speedup_min and at least two of
/// {entropy at the finest reduction >= entropy_min, spatial total <=
/// spatial_max, max(dlp_weighted, bb_parallelism) >= parallelism_min} hold;
/// borderline when the speedup is at least 1 but the quorum fails; otherwise
/// keep on host. Compute-only signatures are kept on host unconditionally.
OffloadRecommendation score_kernel(const WorkloadSignature& sig,
                                   const SystemConfig& s,
                                   const EnergyParams& ep,
                                   const OffloadThresholds& th,
                                   double offload_fraction = 1.0);

/// Descending by predicted speedup, ties by energy ratio descending, then
/// kernel name ascending. Stable across runs.
std::vector<OffloadRecommendation> rank_kernels(
    std::vector<OffloadRecommendation> recs);

OffloadThresholds thresholds_from(const ConfigMap& config);

}  // namespace nmcdse
