#include "nmcdse/advisor.hpp"

#include <algorithm>

#include "nmcdse/config.hpp"

namespace nmcdse {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Offload: return "offload";
    case Verdict::KeepOnHost: return "keep_on_host";
    case Verdict::Borderline: return "borderline";
  }
  return "keep_on_host";
}

OffloadRecommendation score_kernel(const WorkloadSignature& sig,
                                   const SystemConfig& s,
                                   const EnergyParams& ep,
                                   const OffloadThresholds& th,
                                   double offload_fraction) {
  OffloadRecommendation rec;
  rec.kernel = sig.name;

  WorkloadProfile profile;
  profile.n_instr = static_cast<double>(sig.instruction_count);
  profile.n_mem = static_cast<double>(sig.memory_access_count);
  profile.offload_fraction = offload_fraction;
  if (sig.miss_rates) {
    profile.m1 = sig.miss_rates->m1;
    profile.m2 = sig.miss_rates->m2;
  }

  ComparisonResult model = compare(profile, s, ep);
  rec.predicted_speedup = model.normalized_delay;
  rec.predicted_energy_ratio = model.normalized_energy;

  if (!sig.has_memory_metrics()) {
    rec.flags.no_memory_stream = true;
    rec.verdict = Verdict::KeepOnHost;
    return rec;
  }

  // entropy at the finest configured granularity
  if (sig.entropy && !sig.entropy->points.empty()) {
    rec.flags.entropy_high =
        sig.entropy->points.front().entropy_bits >= th.entropy_min;
  }
  if (sig.spatial) {
    rec.flags.spatial_low = sig.spatial->total <= th.spatial_max;
  }
  rec.flags.parallelism_high =
      std::max(sig.dlp_weighted, sig.bb_parallelism) >= th.parallelism_min;
  rec.flags.speedup_met = rec.predicted_speedup >= th.speedup_min;

  int quorum = (rec.flags.entropy_high ? 1 : 0) +
               (rec.flags.spatial_low ? 1 : 0) +
               (rec.flags.parallelism_high ? 1 : 0);
  if (rec.flags.speedup_met && quorum >= 2) {
    rec.verdict = Verdict::Offload;
  } else if (rec.predicted_speedup >= 1.0) {
    rec.verdict = Verdict::Borderline;
  } else {
    rec.verdict = Verdict::KeepOnHost;
  }
  return rec;
}

std::vector<OffloadRecommendation> rank_kernels(
    std::vector<OffloadRecommendation> recs) {
  std::sort(recs.begin(), recs.end(),
            [](const OffloadRecommendation& a, const OffloadRecommendation& b) {
              if (a.predicted_speedup != b.predicted_speedup) {
                return a.predicted_speedup > b.predicted_speedup;
              }
              if (a.predicted_energy_ratio != b.predicted_energy_ratio) {
                return a.predicted_energy_ratio > b.predicted_energy_ratio;
              }
              return a.kernel < b.kernel;
            });
  return recs;
}

OffloadThresholds thresholds_from(const ConfigMap& config) {
  OffloadThresholds th;
  th.entropy_min = config.get_double("entropy_min", th.entropy_min);
  th.spatial_max = config.get_double("spatial_max", th.spatial_max);
  th.parallelism_min = config.get_double("parallelism_min", th.parallelism_min);
  th.speedup_min = config.get_double("speedup_min", th.speedup_min);
  return th;
}

}  // namespace nmcdse
