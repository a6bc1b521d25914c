// Command-line front end: trace generation, characterization, modeling,
// sweeping, and offload advice. Every subcommand is deterministic given its
// flags and seed; file outputs get a .manifest.json reproducibility sidecar.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmcdse/advisor.hpp"
#include "nmcdse/config.hpp"
#include "nmcdse/entropy.hpp"
#include "nmcdse/lru.hpp"
#include "nmcdse/model.hpp"
#include "nmcdse/signature.hpp"
#include "nmcdse/synthetic.hpp"
#include "nmcdse/trace.hpp"
#include "nmcdse/trace_io.hpp"
#include "nmcdse/units.hpp"
#include "nmcdse/version.hpp"

namespace {

using nmcdse::ConfigMap;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::chrono::steady_clock::time_point g_start;

/// Worker cap: NMCDSE_THREADS if set, else the hardware count.
unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("NMCDSE_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1) {
    throw UsageError("NMCDSE_THREADS must be a positive integer");
  }
  return static_cast<unsigned>(std::min<long>(value, 256));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("error writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_manifest(const std::string& subcommand,
                    const std::vector<std::string>& inputs,
                    const std::string& config_path,
                    const std::string& output_path, std::uint64_t seed) {
  double duration =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start)
          .count();
  ordered_json j;
  j["subcommand"] = subcommand;
  j["input_paths"] = inputs;
  j["config_path"] = config_path;
  j["output_path"] = output_path;
  j["seed"] = seed;
  j["tool_version"] = nmcdse::kToolVersion;
  j["schema_version"] = nmcdse::kSchemaVersion;
  j["duration_seconds"] = duration;
  write_text_file(output_path + ".manifest.json", j.dump(2) + "\n");
}

ConfigMap load_config(const std::string& path,
                      const std::vector<std::string>& overrides) {
  ConfigMap config =
      path.empty() ? ConfigMap() : ConfigMap::from_file(path);
  for (const std::string& kv : overrides) config.apply_override(kv);
  return config;
}

/// Every subcommand accepts the whole shared config file; binding all five
/// parameter groups first lets unknown keys be reported precisely.
struct BoundConfig {
  nmcdse::SystemConfig system;
  nmcdse::EnergyParams energy;
  nmcdse::WorkloadProfile profile;
  nmcdse::CharacterizationConfig characterization;
  nmcdse::OffloadThresholds thresholds;
};

BoundConfig bind_all(const ConfigMap& config) {
  BoundConfig bound;
  bound.system = nmcdse::system_config_from(config);
  bound.energy = nmcdse::energy_params_from(config);
  bound.profile = nmcdse::workload_profile_from(config);
  bound.characterization = nmcdse::characterization_config_from(config);
  bound.thresholds = nmcdse::thresholds_from(config);
  std::vector<std::string> unknown = config.unconsumed_keys();
  if (!unknown.empty()) {
    throw DataError("unknown config key '" + unknown.front() + "' in " +
                    config.origin());
  }
  return bound;
}

// ---------------------------------------------------------------------------
// gen-trace

struct GenTraceArgs {
  std::string pattern = "sequential";
  std::uint64_t n = 1000;
  std::uint32_t element_size = 8;
  std::uint64_t base = 0;
  std::uint64_t stride = 64;
  std::string range = "1MB";
  std::uint64_t nodes = 1024;
  std::string array = "1MB";
  std::uint32_t sweeps = 1;
  std::uint32_t dim = 256;
  std::uint64_t seed = 1;
  double compute_mix = 0.0;
  std::string dep_shape = "independent";
  std::uint32_t fanout = 2;
  std::uint32_t block_len = 16;
  std::string name;
  std::string out;
};

int run_gen_trace(const GenTraceArgs& args) {
  nmcdse::PatternSpec spec;
  auto kind = nmcdse::pattern_from_name(args.pattern);
  if (!kind) throw UsageError("unknown pattern '" + args.pattern + "'");
  spec.kind = *kind;
  spec.n_accesses = args.n;
  spec.element_size = args.element_size;
  spec.base_addr = args.base;
  spec.stride_bytes = args.stride;
  spec.nodes = args.nodes;
  spec.sweeps = args.sweeps;
  spec.matrix_dim = args.dim;
  spec.rng_seed = args.seed;
  spec.compute_mix = args.compute_mix;
  spec.fanout = args.fanout;
  spec.block_len = args.block_len;
  spec.name = args.name;
  try {
    spec.range_bytes = nmcdse::parse_size_bytes(args.range);
    spec.array_bytes = nmcdse::parse_size_bytes(args.array);
  } catch (const nmcdse::UnitParseError& ex) {
    throw UsageError(ex.what());
  }
  if (args.dep_shape == "independent") {
    spec.dep_shape = nmcdse::DepShape::Independent;
  } else if (args.dep_shape == "chain") {
    spec.dep_shape = nmcdse::DepShape::Chain;
  } else if (args.dep_shape == "fanout") {
    spec.dep_shape = nmcdse::DepShape::Fanout;
  } else {
    throw UsageError("unknown dep shape '" + args.dep_shape + "'");
  }

  nmcdse::Trace trace;
  try {
    trace = nmcdse::generate_synthetic(spec);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  nmcdse::write_trace_file(trace, args.out);
  write_manifest("gen-trace", {}, "", args.out, spec.rng_seed);
  std::cout << "wrote " << trace.records.size() << " records to " << args.out
            << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// characterize

struct CharacterizeArgs {
  std::vector<std::string> traces;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  std::string out_dir = ".";
  bool csv = false;
};

std::string output_stem(const std::string& trace_path) {
  std::string stem = trace_path;
  if (size_t slash = stem.find_last_of('/'); slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  if (size_t dot = stem.find('.'); dot != std::string::npos) {
    stem = stem.substr(0, dot);
  }
  return stem;
}

std::string strip_json_suffix(const std::string& path) {
  constexpr std::string_view kSuffix = ".json";
  if (path.size() > kSuffix.size() &&
      path.compare(path.size() - kSuffix.size(), kSuffix.size(), kSuffix) ==
          0) {
    return path.substr(0, path.size() - kSuffix.size());
  }
  return path;
}

std::string entropy_csv(const nmcdse::WorkloadSignature& sig) {
  std::string out = "bit_reduction,entropy_bits\n";
  if (sig.entropy) {
    for (const auto& p : sig.entropy->points) {
      out += std::to_string(p.bit_reduction);
      out += ',';
      out += nmcdse::format_g6(p.entropy_bits);
      out += '\n';
    }
  }
  return out;
}

std::string spatial_csv(const nmcdse::WorkloadSignature& sig) {
  std::string out = "line_size,score\n";
  if (sig.spatial) {
    for (const auto& p : sig.spatial->pairs) {
      out += std::to_string(p.line_size);
      out += ',';
      out += nmcdse::format_g6(p.score);
      out += '\n';
    }
    out += "total,";
    out += nmcdse::format_g6(sig.spatial->total);
    out += '\n';
  }
  return out;
}

int run_characterize(const CharacterizeArgs& args) {
  if (args.traces.empty()) throw UsageError("no trace files given");
  if (!args.out.empty() && args.traces.size() > 1) {
    throw UsageError("--out only applies to a single trace; use --out-dir");
  }
  ConfigMap config = load_config(args.config_path, args.overrides);
  BoundConfig bound = bind_all(config);

  struct Job {
    std::string trace_path;
    std::string out_path;
    nmcdse::WorkloadSignature sig;
    std::string error;
    std::size_t error_line = 0;
  };
  std::vector<Job> jobs;
  for (const std::string& path : args.traces) {
    Job job;
    job.trace_path = path;
    job.out_path = args.out.empty()
                       ? args.out_dir + "/" + output_stem(path) + ".sig.json"
                       : args.out;
    jobs.push_back(std::move(job));
  }

  // independent per-file work; assembly below stays in input order
  unsigned workers =
      std::min<unsigned>(worker_count(), static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto run_jobs = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      Job& job = jobs[i];
      try {
        nmcdse::Trace trace = nmcdse::parse_trace_file(job.trace_path);
        job.sig = nmcdse::signature(trace, bound.characterization);
      } catch (const nmcdse::ParseError& ex) {
        job.error = ex.what();
        job.error_line = ex.line();
      } catch (const std::exception& ex) {
        job.error = ex.what();
      }
    }
  };
  if (workers <= 1) {
    run_jobs();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_jobs);
    for (std::thread& t : pool) t.join();
  }

  for (const Job& job : jobs) {
    if (!job.error.empty()) {
      std::cerr << "error: " << job.trace_path << ": " << job.error << "\n";
      return kExitData;
    }
    write_text_file(job.out_path, nmcdse::signature_to_json(job.sig));
    write_manifest("characterize", {job.trace_path}, args.config_path,
                   job.out_path, 0);
    if (args.csv) {
      std::string base = strip_json_suffix(job.out_path);
      write_text_file(base + ".entropy.csv", entropy_csv(job.sig));
      write_text_file(base + ".spatial.csv", spatial_csv(job.sig));
    }
    std::cout << job.sig.name << ": " << job.sig.instruction_count
              << " records, " << job.sig.memory_access_count
              << " memory accesses -> " << job.out_path << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// model

struct ModelArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  double m1 = -1.0;
  double m2 = -1.0;
  std::string out;
};

std::string comparison_text(const nmcdse::ComparisonResult& r) {
  std::string out;
  out += "t_host=" + nmcdse::format_g6(r.host.t_total) + "\n";
  out += "t_nmc=" + nmcdse::format_g6(r.nmc.t_total) + "\n";
  out += "e_host=" + nmcdse::format_g6(r.host.e_total) + "\n";
  out += "e_nmc=" + nmcdse::format_g6(r.nmc.e_total) + "\n";
  out += "norm_delay=" + nmcdse::format_g6(r.normalized_delay) + "\n";
  out += "norm_energy=" + nmcdse::format_g6(r.normalized_energy) + "\n";
  return out;
}

int run_model(const ModelArgs& args) {
  ConfigMap config = load_config(args.config_path, args.overrides);
  BoundConfig bound = bind_all(config);
  if (args.m1 >= 0.0) bound.profile.m1 = args.m1;
  if (args.m2 >= 0.0) bound.profile.m2 = args.m2;

  nmcdse::ComparisonResult result;
  try {
    result = nmcdse::compare(bound.profile, bound.system, bound.energy);
  } catch (const std::invalid_argument& ex) {
    throw DataError(ex.what());
  }
  std::string text = comparison_text(result);
  std::cout << text;
  if (!args.out.empty()) {
    write_text_file(args.out, text);
    write_manifest("model", {}, args.config_path, args.out, 0);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string grid = "m1=0:1:0.1,m2=0:1:0.1";
  std::string out;
};

/// Axis syntax: key=value or key=start:stop:step (stop inclusive).
std::vector<double> parse_axis_values(const std::string& axis,
                                      const std::string& text) {
  std::vector<double> values;
  auto parse_one = [&](const std::string& s) {
    try {
      return nmcdse::parse_double(s);
    } catch (const nmcdse::UnitParseError&) {
      throw UsageError("bad value '" + s + "' for grid axis " + axis);
    }
  };
  size_t c1 = text.find(':');
  if (c1 == std::string::npos) {
    values.push_back(parse_one(text));
    return values;
  }
  size_t c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw UsageError("grid axis " + axis + " needs start:stop:step");
  }
  double start = parse_one(text.substr(0, c1));
  double stop = parse_one(text.substr(c1 + 1, c2 - c1 - 1));
  double step = parse_one(text.substr(c2 + 1));
  if (step <= 0.0 || stop < start) {
    throw UsageError("grid axis " + axis + " needs stop >= start and step > 0");
  }
  // multiply rather than accumulate so 0.1 steps land on the grid points
  for (int i = 0;; ++i) {
    double value = start + step * i;
    if (value > stop + step * 1e-9) break;
    values.push_back(std::min(value, stop));
  }
  return values;
}

nmcdse::SweepSpec parse_grid(const std::string& grid) {
  nmcdse::SweepSpec spec;
  std::stringstream stream(grid);
  std::string axis;
  while (std::getline(stream, axis, ',')) {
    if (axis.empty()) continue;
    size_t eq = axis.find('=');
    if (eq == std::string::npos) {
      throw UsageError("grid axis '" + axis + "' must look like key=values");
    }
    std::string key = axis.substr(0, eq);
    std::string values = axis.substr(eq + 1);
    if (key == "m1" || key == "m2") {
      std::vector<double> parsed = parse_axis_values(key, values);
      for (double v : parsed) {
        if (v < 0.0 || v > 1.0) {
          throw UsageError("grid axis " + key + " must stay in [0, 1]");
        }
      }
      (key == "m1" ? spec.m1_values : spec.m2_values) = std::move(parsed);
    } else if (key == "n_vaults" || key == "n_links") {
      std::vector<double> parsed = parse_axis_values(key, values);
      std::vector<std::uint32_t> ints;
      for (double v : parsed) {
        if (v < 1.0 || v != static_cast<double>(static_cast<std::uint32_t>(v))) {
          throw UsageError("grid axis " + key + " needs positive integers");
        }
        ints.push_back(static_cast<std::uint32_t>(v));
      }
      (key == "n_vaults" ? spec.n_vaults_values : spec.n_links_values) =
          std::move(ints);
    } else {
      throw UsageError("unknown grid axis '" + key + "'");
    }
  }
  if (spec.m1_values.empty() || spec.m2_values.empty()) {
    throw UsageError("grid must list m1 and m2 axes");
  }
  return spec;
}

int run_sweep(const SweepArgs& args) {
  ConfigMap config = load_config(args.config_path, args.overrides);
  BoundConfig bound = bind_all(config);
  nmcdse::SweepSpec grid = parse_grid(args.grid);

  std::vector<nmcdse::SweepRow> rows;
  try {
    rows = nmcdse::sweep(grid, bound.profile, bound.system, bound.energy);
  } catch (const std::invalid_argument& ex) {
    throw DataError(ex.what());
  }

  std::string csv = nmcdse::kSweepCsvHeader;
  csv += '\n';
  for (const nmcdse::SweepRow& row : rows) {
    csv += nmcdse::sweep_row_csv(row);
    csv += '\n';
  }
  write_text_file(args.out, csv);
  write_manifest("sweep", {}, args.config_path, args.out, 0);
  std::cout << "wrote " << rows.size() << " rows to " << args.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// advise

struct AdviseArgs {
  std::vector<std::string> signatures;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  double offload_fraction = 1.0;
};

ordered_json recommendation_json(const nmcdse::OffloadRecommendation& rec) {
  ordered_json j;
  j["kernel"] = rec.kernel;
  j["verdict"] = nmcdse::verdict_name(rec.verdict);
  j["predicted_speedup"] = rec.predicted_speedup;
  j["predicted_energy_ratio"] = rec.predicted_energy_ratio;
  j["flags"] = {{"entropy_high", rec.flags.entropy_high},
                {"spatial_low", rec.flags.spatial_low},
                {"parallelism_high", rec.flags.parallelism_high},
                {"speedup_met", rec.flags.speedup_met},
                {"no_memory_stream", rec.flags.no_memory_stream}};
  return j;
}

int run_advise(const AdviseArgs& args) {
  ConfigMap config = load_config(args.config_path, args.overrides);
  BoundConfig bound = bind_all(config);
  if (args.offload_fraction < 0.0 || args.offload_fraction > 1.0) {
    throw UsageError("--offload-fraction must lie in [0, 1]");
  }

  std::vector<nmcdse::OffloadRecommendation> recs;
  ordered_json errors = ordered_json::array();
  for (const std::string& path : args.signatures) {
    try {
      nmcdse::WorkloadSignature sig =
          nmcdse::signature_from_json(read_text_file(path));
      recs.push_back(nmcdse::score_kernel(sig, bound.system, bound.energy,
                                          bound.thresholds,
                                          args.offload_fraction));
    } catch (const std::exception& ex) {
      errors.push_back({{"file", path}, {"error", ex.what()}});
    }
  }
  recs = nmcdse::rank_kernels(std::move(recs));

  ordered_json out = ordered_json::array();
  for (const auto& rec : recs) out.push_back(recommendation_json(rec));
  for (const auto& err : errors) out.push_back(err);
  std::string json_text = out.dump(2) + "\n";

  if (!args.out.empty()) {
    write_text_file(args.out, json_text);
    write_manifest("advise", args.signatures, args.config_path, args.out, 0);
  }

  // human-readable ranking table
  std::printf("%-24s %-12s %10s %10s  %s\n", "kernel", "verdict", "speedup",
              "energy", "signals");
  for (const auto& rec : recs) {
    std::string signals;
    if (rec.flags.entropy_high) signals += "entropy ";
    if (rec.flags.spatial_low) signals += "spatial ";
    if (rec.flags.parallelism_high) signals += "parallelism ";
    if (rec.flags.no_memory_stream) signals += "no-memory-stream ";
    if (!signals.empty()) signals.pop_back();
    std::printf("%-24s %-12s %10s %10s  %s\n", rec.kernel.c_str(),
                nmcdse::verdict_name(rec.verdict),
                nmcdse::format_g6(rec.predicted_speedup).c_str(),
                nmcdse::format_g6(rec.predicted_energy_ratio).c_str(),
                signals.c_str());
  }
  for (const auto& err : errors) {
    std::cerr << "error: " << err["file"].get<std::string>() << ": "
              << err["error"].get<std::string>() << "\n";
  }
  if (args.out.empty() && recs.empty() && errors.empty()) {
    std::cout << "[]\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

void add_config_flags(CLI::App* cmd, std::string& config_path,
                      std::vector<std::string>& overrides) {
  cmd->add_option("--config", config_path,
                  "key = value config file (see configs/default.cfg)");
  cmd->add_option("--set", overrides,
                  "override one config key, e.g. --set n_vaults=32");
}

}  // namespace

int main(int argc, char** argv) {
  g_start = std::chrono::steady_clock::now();

  CLI::App app{"trace-driven workload characterizer and first-order "
               "delay/energy model for near-memory offload decisions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", nmcdse::kToolVersion);

  GenTraceArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen-trace", "generate a synthetic trace file");
  gen_cmd->add_option("--pattern", gen.pattern,
                      "sequential|strided|random|pointer_chase|stencil1d|"
                      "diagonal")
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "memory access count")
      ->capture_default_str();
  gen_cmd->add_option("--element-size", gen.element_size,
                      "access size in bytes (power of two <= 64)")
      ->capture_default_str();
  gen_cmd->add_option("--base", gen.base, "base address")
      ->capture_default_str();
  gen_cmd->add_option("--stride", gen.stride, "stride in bytes (strided)")
      ->capture_default_str();
  gen_cmd->add_option("--range", gen.range,
                      "address range, size units (random), e.g. 1MB")
      ->capture_default_str();
  gen_cmd->add_option("--nodes", gen.nodes, "node count (pointer_chase)")
      ->capture_default_str();
  gen_cmd->add_option("--array", gen.array,
                      "array size, size units (stencil1d), e.g. 1MB")
      ->capture_default_str();
  gen_cmd->add_option("--sweeps", gen.sweeps, "sweep count (stencil1d)")
      ->capture_default_str();
  gen_cmd->add_option("--dim", gen.dim, "matrix dimension (diagonal)")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed; output is a pure "
                                          "function of the flags and seed")
      ->capture_default_str();
  gen_cmd->add_option("--compute-mix", gen.compute_mix,
                      "fraction of non-memory records, 1.0 = compute only")
      ->capture_default_str();
  gen_cmd->add_option("--dep-shape", gen.dep_shape,
                      "independent|chain|fanout")
      ->capture_default_str();
  gen_cmd->add_option("--fanout", gen.fanout, "fanout arity k")
      ->capture_default_str();
  gen_cmd->add_option("--block-len", gen.block_len,
                      "records per basic block")
      ->capture_default_str();
  gen_cmd->add_option("--name", gen.name, "trace name (default: pattern)");
  gen_cmd->add_option("--out", gen.out, "output trace path (.gz compresses)")
      ->required();

  CharacterizeArgs chr;
  CLI::App* chr_cmd = app.add_subcommand(
      "characterize", "compute a workload signature from a trace");
  chr_cmd->add_option("trace", chr.traces, "trace file(s), gzip accepted")
      ->required();
  add_config_flags(chr_cmd, chr.config_path, chr.overrides);
  chr_cmd->add_option("--out", chr.out,
                      "signature JSON path (single trace only)");
  chr_cmd->add_option("--out-dir", chr.out_dir,
                      "output directory for <trace>.sig.json files")
      ->capture_default_str();
  chr_cmd->add_flag("--csv", chr.csv,
                    "also write entropy and spatial curves as CSV");

  ModelArgs mdl;
  CLI::App* mdl_cmd = app.add_subcommand(
      "model", "compare host against host+NMC for one workload profile");
  add_config_flags(mdl_cmd, mdl.config_path, mdl.overrides);
  mdl_cmd->add_option("--m1", mdl.m1, "override L1 miss ratio [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  mdl_cmd->add_option("--m2", mdl.m2, "override L2 miss ratio [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  mdl_cmd->add_option("--out", mdl.out, "also write the result to a file");

  SweepArgs swp;
  CLI::App* swp_cmd = app.add_subcommand(
      "sweep", "evaluate the model over a miss-rate/geometry grid");
  add_config_flags(swp_cmd, swp.config_path, swp.overrides);
  swp_cmd->add_option("--grid", swp.grid,
                      "axes as key=start:stop:step or key=value, "
                      "keys m1,m2,n_vaults,n_links")
      ->capture_default_str();
  swp_cmd->add_option("--out", swp.out, "output CSV path")->required();

  AdviseArgs adv;
  CLI::App* adv_cmd = app.add_subcommand(
      "advise", "rank kernels by modeled offload benefit");
  adv_cmd->add_option("signature", adv.signatures,
                      "signature JSON file(s) from characterize");
  add_config_flags(adv_cmd, adv.config_path, adv.overrides);
  adv_cmd->add_option("--out", adv.out, "recommendations JSON path");
  adv_cmd->add_option("--offload-fraction", adv.offload_fraction,
                      "offloaded share assumed by the model")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen_trace(gen);
    if (chr_cmd->parsed()) return run_characterize(chr);
    if (mdl_cmd->parsed()) return run_model(mdl);
    if (swp_cmd->parsed()) return run_sweep(swp);
    if (adv_cmd->parsed()) return run_advise(adv);
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const nmcdse::ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitData;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
