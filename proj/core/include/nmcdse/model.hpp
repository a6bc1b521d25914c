#pragma once

#include <cstdint>
#include <vector>

#include "nmcdse/units.hpp"

namespace nmcdse {

class ConfigMap;

/// Host and memory-cube hardware parameters. Sizes are bytes, frequencies
/// Hz, bandwidths bytes/s, latencies cycles, times seconds.
struct SystemConfig {
  std::uint32_t n_cores = 4;
  double f_host = 3e9;
  double f_nmc = 1.2e9;
  std::uint64_t s_l1 = 32 * 1024;
  std::uint64_t s_l2 = 256 * 1024;
  std::uint64_t s_dram = std::uint64_t{4} << 30;
  double bw_l1 = 137e9;
  double bw_l2 = 137e9;
  double lat_l1 = 1.0;
  double lat_l2 = 2.0;
  std::uint32_t line_size = 64;
  std::uint32_t n_vaults = 16;
  double bw_per_vault = 5e9;
  std::uint32_t n_links = 4;
  double bw_per_link = 10e9;
  double ipc_host = 1.0;
  double ipc_nmc = 1.0;
  /// Compute cores on the logic layer; 0 means one per vault. Effective
  /// count never exceeds n_vaults.
  std::uint32_t n_cores_nmc = 0;
  /// One-time kernel launch overhead, charged only when work is offloaded.
  double t_launch = 5e-6;
  /// Fraction of the smaller of (compute, memory) time hidden by the other;
  /// 0 = fully serial phases.
  double overlap = 0.0;
};

/// Energies are J/bit unless named otherwise; e_op_* are J/instruction and
/// p_* are watts.
struct EnergyParams {
  double e_dram_layer = 3.7e-12;
  double e_logic_layer = 1.5e-12;
  double p_static_nmc = 0.96;
  double e_l1_access = 0.15e-12;
  double e_l2_access = 0.35e-12;
  double e_offchip_link = 6.0e-12;
  double p_static_core = 0.5;
  double p_static_cache_per_mb = 0.25;
  double e_op_host = 50e-12;
  double e_op_nmc = 20e-12;
};

/// Defaults describe a representative memory-bound kernel and match
/// configs/default.cfg; characterize/advise overwrite them per trace.
struct WorkloadProfile {
  double n_instr = 1e9;
  double n_mem = 5e8;
  double m1 = 0.5;
  double m2 = 0.5;
  /// Share of instructions and accesses belonging to offloaded kernels.
  double offload_fraction = 1.0;
  double parallel_fraction = 1.0;
};

/// Traffic reaching each level, in bytes: every access moves a line
/// through L1, L1 misses reach L2, L2 misses cross the off-chip links, and
/// near-memory accesses go straight to the vaults. Monotone by
/// construction: l2 <= l1 and offchip <= l2.
struct TrafficBytes {
  double l1 = 0.0;
  double l2 = 0.0;
  double offchip = 0.0;
  double vault = 0.0;
};

struct ModelResult {
  double t_nonmem = 0.0;
  double t_mem = 0.0;
  double t_total = 0.0;
  double e_dynamic = 0.0;
  double e_static = 0.0;
  double e_total = 0.0;
  TrafficBytes traffic;
};

/// Ratios are host over host+NMC: above 1 favors offloading.
struct ComparisonResult {
  ModelResult host;
  ModelResult nmc;
  double normalized_delay = 0.0;
  double normalized_energy = 0.0;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const SystemConfig& s);
void validate(const EnergyParams& ep);
void validate(const WorkloadProfile& p);

/// Delay and traffic of the multi-core host alone. Non-memory time uses an
/// Amdahl-adjusted core count; each cache level contributes the larger of
/// its latency-bound and bandwidth-bound time on the traffic it serves.
ModelResult host_delay(const WorkloadProfile& p, const SystemConfig& s);

/// Delay and traffic of the combined system: the offloaded share runs on
/// vault-parallel cache-less cores, the residue on the host, phases
/// serialized (less the configured overlap) plus launch overhead.
ModelResult nmc_delay(const WorkloadProfile& p, const SystemConfig& s);

/// Fills the energy fields of both results in place. Dynamic energy follows
/// the traffic breakdown; static energy is time times static power, with
/// the cube's static power charged only when work is offloaded.
void energy(const WorkloadProfile& p, const SystemConfig& s,
            const EnergyParams& ep, ModelResult& host_res,
            ModelResult& nmc_res);

ComparisonResult compare(const WorkloadProfile& p, const SystemConfig& s,
                         const EnergyParams& ep);

/// Cartesian grid over miss rates and optionally vault/link counts. Empty
/// n_vaults/n_links axes reuse the SystemConfig value.
struct SweepSpec {
  std::vector<double> m1_values;
  std::vector<double> m2_values;
  std::vector<std::uint32_t> n_vaults_values;
  std::vector<std::uint32_t> n_links_values;
};

struct SweepRow {
  double m1 = 0.0;
  double m2 = 0.0;
  std::uint32_t n_vaults = 0;
  std::uint32_t n_links = 0;
  ComparisonResult result;
};

/// Rows in lexicographic order over (m1, m2, n_vaults, n_links). Throws
/// std::invalid_argument on an empty grid or out-of-range values.
std::vector<SweepRow> sweep(const SweepSpec& grid, const WorkloadProfile& p,
                            const SystemConfig& s, const EnergyParams& ep);

inline constexpr const char* kSweepCsvHeader =
    "m1,m2,n_vaults,n_links,t_host,t_nmc,e_host,e_nmc,norm_delay,norm_energy";

/// One CSV data row, floats at 6 significant digits.
std::string sweep_row_csv(const SweepRow& row);

SystemConfig system_config_from(const ConfigMap& config);
EnergyParams energy_params_from(const ConfigMap& config);
WorkloadProfile workload_profile_from(const ConfigMap& config);

}  // namespace nmcdse
