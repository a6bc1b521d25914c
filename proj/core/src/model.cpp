#include "nmcdse/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nmcdse/config.hpp"

namespace nmcdse {
namespace {

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_fraction(double value, const char* what) {
  check(value >= 0.0 && value <= 1.0, what);
}

/// Folds the phase overlap into the total while keeping the reported
/// components summing to the total: both are scaled by the shrink factor.
void apply_overlap(ModelResult& r, double overlap) {
  double serial = r.t_nonmem + r.t_mem;
  if (overlap <= 0.0 || serial <= 0.0) {
    r.t_total = serial;
    return;
  }
  double hidden = overlap * std::min(r.t_nonmem, r.t_mem);
  double total = serial - hidden;
  double scale = total / serial;
  r.t_nonmem *= scale;
  r.t_mem *= scale;
  r.t_total = r.t_nonmem + r.t_mem;
}

double host_static_power(const SystemConfig& s, const EnergyParams& ep) {
  double cache_mb =
      static_cast<double>(s.s_l1) * s.n_cores + static_cast<double>(s.s_l2);
  cache_mb /= 1024.0 * 1024.0;
  return s.n_cores * ep.p_static_core + cache_mb * ep.p_static_cache_per_mb;
}

/// Dynamic energy of traffic flowing through the host hierarchy plus the
/// instructions executed there.
double host_dynamic_energy(const TrafficBytes& traffic, double instructions,
                           const EnergyParams& ep) {
  return traffic.l1 * 8.0 * ep.e_l1_access +
         traffic.l2 * 8.0 * ep.e_l2_access +
         traffic.offchip * 8.0 * (ep.e_offchip_link + ep.e_dram_layer) +
         instructions * ep.e_op_host;
}

bool offloads_work(const WorkloadProfile& p) {
  return p.offload_fraction > 0.0 &&
         p.offload_fraction * p.n_instr > 0.0;
}

}  // namespace

void validate(const SystemConfig& s) {
  check(s.n_cores >= 1, "n_cores must be >= 1");
  check(s.f_host > 0.0, "f_host must be > 0");
  check(s.f_nmc > 0.0, "f_nmc must be > 0");
  check(s.bw_l1 > 0.0, "bw_l1 must be > 0");
  check(s.bw_l2 > 0.0, "bw_l2 must be > 0");
  check(s.lat_l1 >= 0.0, "lat_l1 must be >= 0");
  check(s.lat_l2 >= 0.0, "lat_l2 must be >= 0");
  check(s.line_size >= 1, "line_size must be >= 1");
  check(s.n_vaults >= 1, "n_vaults must be >= 1");
  check(s.bw_per_vault > 0.0, "bw_per_vault must be > 0");
  check(s.n_links >= 1, "n_links must be >= 1");
  check(s.bw_per_link > 0.0, "bw_per_link must be > 0");
  check(s.ipc_host > 0.0, "ipc_host must be > 0");
  check(s.ipc_nmc > 0.0, "ipc_nmc must be > 0");
  check(s.t_launch >= 0.0, "t_launch must be >= 0");
  check_fraction(s.overlap, "overlap must lie in [0, 1]");
}

void validate(const EnergyParams& ep) {
  check(ep.e_dram_layer >= 0.0, "e_dram_layer must be >= 0");
  check(ep.e_logic_layer >= 0.0, "e_logic_layer must be >= 0");
  check(ep.p_static_nmc >= 0.0, "p_static_nmc must be >= 0");
  check(ep.e_l1_access >= 0.0, "e_l1_access must be >= 0");
  check(ep.e_l2_access >= 0.0, "e_l2_access must be >= 0");
  check(ep.e_offchip_link >= 0.0, "e_offchip_link must be >= 0");
  check(ep.p_static_core >= 0.0, "p_static_core must be >= 0");
  check(ep.p_static_cache_per_mb >= 0.0, "p_static_cache_per_mb must be >= 0");
  check(ep.e_op_host >= 0.0, "e_op_host must be >= 0");
  check(ep.e_op_nmc >= 0.0, "e_op_nmc must be >= 0");
}

void validate(const WorkloadProfile& p) {
  check(p.n_instr >= 0.0, "n_instr must be >= 0");
  check(p.n_mem >= 0.0, "n_mem must be >= 0");
  check(p.n_mem <= p.n_instr, "n_mem must not exceed n_instr");
  check_fraction(p.m1, "m1 must lie in [0, 1]");
  check_fraction(p.m2, "m2 must lie in [0, 1]");
  check_fraction(p.offload_fraction, "offload_fraction must lie in [0, 1]");
  check_fraction(p.parallel_fraction, "parallel_fraction must lie in [0, 1]");
}

ModelResult host_delay(const WorkloadProfile& p, const SystemConfig& s) {
  validate(p);
  validate(s);

  ModelResult r;
  const double line = s.line_size;

  // Amdahl-adjusted multi-core speedup over one core
  double pf = p.parallel_fraction;
  double speedup = 1.0 / ((1.0 - pf) + pf / s.n_cores);
  r.t_nonmem = (p.n_instr - p.n_mem) / (s.f_host * s.ipc_host * speedup);

  r.traffic.l1 = p.n_mem * line;
  r.traffic.l2 = p.n_mem * p.m1 * line;
  r.traffic.offchip = p.n_mem * p.m1 * p.m2 * line;

  // Each level is priced on the accesses it serves; a level is either
  // latency-bound or bandwidth-bound, whichever is slower.
  double l1_served = p.n_mem * (1.0 - p.m1);
  double l2_served = p.n_mem * p.m1 * (1.0 - p.m2);
  double t_l1 =
      std::max(l1_served * s.lat_l1 / s.f_host, l1_served * line / s.bw_l1);
  double t_l2 =
      std::max(l2_served * s.lat_l2 / s.f_host, l2_served * line / s.bw_l2);
  double t_off = r.traffic.offchip / (s.n_links * s.bw_per_link);
  r.t_mem = t_l1 + t_l2 + t_off;

  apply_overlap(r, s.overlap);
  return r;
}

ModelResult nmc_delay(const WorkloadProfile& p, const SystemConfig& s) {
  validate(p);
  validate(s);

  if (!offloads_work(p)) return host_delay(p, s);

  const double of = p.offload_fraction;
  const double line = s.line_size;

  double off_instr = of * p.n_instr;
  double off_mem = of * p.n_mem;

  std::uint32_t cores =
      s.n_cores_nmc == 0 ? s.n_vaults : std::min(s.n_cores_nmc, s.n_vaults);
  double t_nonmem_off = (off_instr - off_mem) / (cores * s.f_nmc * s.ipc_nmc);
  double vault_bytes = off_mem * line;
  double t_mem_off = vault_bytes / (s.n_vaults * s.bw_per_vault);

  WorkloadProfile residual = p;
  residual.n_instr = p.n_instr - off_instr;
  residual.n_mem = p.n_mem - off_mem;
  residual.offload_fraction = 0.0;
  ModelResult host_part = host_delay(residual, s);

  ModelResult r;
  r.t_nonmem = t_nonmem_off + host_part.t_nonmem + s.t_launch;
  r.t_mem = t_mem_off + host_part.t_mem;
  r.traffic = host_part.traffic;
  r.traffic.vault = vault_bytes;

  apply_overlap(r, s.overlap);
  return r;
}

void energy(const WorkloadProfile& p, const SystemConfig& s,
            const EnergyParams& ep, ModelResult& host_res,
            ModelResult& nmc_res) {
  validate(p);
  validate(s);
  validate(ep);

  double p_host = host_static_power(s, ep);

  host_res.e_dynamic = host_dynamic_energy(host_res.traffic, p.n_instr, ep);
  host_res.e_static = host_res.t_total * p_host;
  host_res.e_total = host_res.e_dynamic + host_res.e_static;

  double of = offloads_work(p) ? p.offload_fraction : 0.0;
  double offloaded_dyn =
      nmc_res.traffic.vault * 8.0 * (ep.e_dram_layer + ep.e_logic_layer) +
      of * p.n_instr * ep.e_op_nmc;
  double residual_dyn =
      host_dynamic_energy(nmc_res.traffic, (1.0 - of) * p.n_instr, ep);
  nmc_res.e_dynamic = offloaded_dyn + residual_dyn;

  double p_system = p_host + (of > 0.0 ? ep.p_static_nmc : 0.0);
  nmc_res.e_static = nmc_res.t_total * p_system;
  nmc_res.e_total = nmc_res.e_dynamic + nmc_res.e_static;
}

ComparisonResult compare(const WorkloadProfile& p, const SystemConfig& s,
                         const EnergyParams& ep) {
  ComparisonResult result;
  result.host = host_delay(p, s);
  result.nmc = nmc_delay(p, s);
  energy(p, s, ep, result.host, result.nmc);

  auto ratio = [](double host, double nmc) {
    if (host == nmc) return 1.0;  // covers the empty-workload 0/0 case
    return host / nmc;
  };
  result.normalized_delay = ratio(result.host.t_total, result.nmc.t_total);
  result.normalized_energy = ratio(result.host.e_total, result.nmc.e_total);
  return result;
}

std::vector<SweepRow> sweep(const SweepSpec& grid, const WorkloadProfile& p,
                            const SystemConfig& s, const EnergyParams& ep) {
  if (grid.m1_values.empty() || grid.m2_values.empty()) {
    throw std::invalid_argument("sweep grid must list m1 and m2 values");
  }
  for (double m : grid.m1_values) check_fraction(m, "m1 must lie in [0, 1]");
  for (double m : grid.m2_values) check_fraction(m, "m2 must lie in [0, 1]");
  for (std::uint32_t v : grid.n_vaults_values) {
    check(v >= 1, "n_vaults must be >= 1");
  }
  for (std::uint32_t l : grid.n_links_values) {
    check(l >= 1, "n_links must be >= 1");
  }

  std::vector<std::uint32_t> vaults = grid.n_vaults_values.empty()
                                          ? std::vector<std::uint32_t>{s.n_vaults}
                                          : grid.n_vaults_values;
  std::vector<std::uint32_t> links = grid.n_links_values.empty()
                                         ? std::vector<std::uint32_t>{s.n_links}
                                         : grid.n_links_values;

  std::vector<SweepRow> rows;
  rows.reserve(grid.m1_values.size() * grid.m2_values.size() * vaults.size() *
               links.size());
  for (double m1 : grid.m1_values) {
    for (double m2 : grid.m2_values) {
      for (std::uint32_t v : vaults) {
        for (std::uint32_t l : links) {
          WorkloadProfile point = p;
          point.m1 = m1;
          point.m2 = m2;
          SystemConfig sys = s;
          sys.n_vaults = v;
          sys.n_links = l;
          SweepRow row{m1, m2, v, l, compare(point, sys, ep)};
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::string sweep_row_csv(const SweepRow& row) {
  std::string out;
  out += format_g6(row.m1);
  out += ',';
  out += format_g6(row.m2);
  out += ',';
  out += std::to_string(row.n_vaults);
  out += ',';
  out += std::to_string(row.n_links);
  out += ',';
  out += format_g6(row.result.host.t_total);
  out += ',';
  out += format_g6(row.result.nmc.t_total);
  out += ',';
  out += format_g6(row.result.host.e_total);
  out += ',';
  out += format_g6(row.result.nmc.e_total);
  out += ',';
  out += format_g6(row.result.normalized_delay);
  out += ',';
  out += format_g6(row.result.normalized_energy);
  return out;
}

SystemConfig system_config_from(const ConfigMap& config) {
  SystemConfig s;
  s.n_cores = config.get_u32("n_cores", s.n_cores);
  s.f_host = config.get_frequency("f_host", s.f_host);
  s.f_nmc = config.get_frequency("f_nmc", s.f_nmc);
  s.s_l1 = config.get_size("s_l1", s.s_l1);
  s.s_l2 = config.get_size("s_l2", s.s_l2);
  s.s_dram = config.get_size("s_dram", s.s_dram);
  s.bw_l1 = config.get_bandwidth("bw_l1", s.bw_l1);
  s.bw_l2 = config.get_bandwidth("bw_l2", s.bw_l2);
  s.lat_l1 = config.get_cycles("lat_l1", s.lat_l1);
  s.lat_l2 = config.get_cycles("lat_l2", s.lat_l2);
  s.line_size =
      static_cast<std::uint32_t>(config.get_size("line_size", s.line_size));
  s.n_vaults = config.get_u32("n_vaults", s.n_vaults);
  s.bw_per_vault = config.get_bandwidth("bw_per_vault", s.bw_per_vault);
  s.n_links = config.get_u32("n_links", s.n_links);
  s.bw_per_link = config.get_bandwidth("bw_per_link", s.bw_per_link);
  s.ipc_host = config.get_double("ipc_host", s.ipc_host);
  s.ipc_nmc = config.get_double("ipc_nmc", s.ipc_nmc);
  s.n_cores_nmc = config.get_u32("n_cores_nmc", s.n_cores_nmc);
  s.t_launch = config.get_time("t_launch", s.t_launch);
  s.overlap = config.get_double("overlap", s.overlap);
  return s;
}

EnergyParams energy_params_from(const ConfigMap& config) {
  EnergyParams ep;
  ep.e_dram_layer = config.get_energy_per_bit("e_dram_layer", ep.e_dram_layer);
  ep.e_logic_layer =
      config.get_energy_per_bit("e_logic_layer", ep.e_logic_layer);
  ep.p_static_nmc = config.get_power("p_static_nmc", ep.p_static_nmc);
  ep.e_l1_access = config.get_energy_per_bit("e_l1_access", ep.e_l1_access);
  ep.e_l2_access = config.get_energy_per_bit("e_l2_access", ep.e_l2_access);
  ep.e_offchip_link =
      config.get_energy_per_bit("e_offchip_link", ep.e_offchip_link);
  ep.p_static_core = config.get_power("p_static_core", ep.p_static_core);
  ep.p_static_cache_per_mb =
      config.get_power("p_static_cache_per_mb", ep.p_static_cache_per_mb);
  ep.e_op_host = config.get_energy("e_op_host", ep.e_op_host);
  ep.e_op_nmc = config.get_energy("e_op_nmc", ep.e_op_nmc);
  return ep;
}

WorkloadProfile workload_profile_from(const ConfigMap& config) {
  WorkloadProfile p;
  p.n_instr = config.get_double("n_instr", p.n_instr);
  p.n_mem = config.get_double("n_mem", p.n_mem);
  p.m1 = config.get_double("m1", p.m1);
  p.m2 = config.get_double("m2", p.m2);
  p.offload_fraction =
      config.get_double("offload_fraction", p.offload_fraction);
  p.parallel_fraction =
      config.get_double("parallel_fraction", p.parallel_fraction);
  return p;
}

}  // namespace nmcdse
