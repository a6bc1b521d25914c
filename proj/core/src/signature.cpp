#include "nmcdse/signature.hpp"

#include <json.hpp>

#include "nmcdse/config.hpp"
#include "nmcdse/lru.hpp"
#include "nmcdse/version.hpp"

namespace nmcdse {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json class_map_json(const std::array<double, kOpcodeClassCount>& values,
                            const std::array<std::uint64_t, kOpcodeClassCount>&
                                counts,
                            bool skip_absent) {
  ordered_json obj = ordered_json::object();
  for (std::size_t c = 0; c < kOpcodeClassCount; ++c) {
    if (skip_absent && counts[c] == 0) continue;
    obj[opcode_name(static_cast<OpcodeClass>(c))] = values[c];
  }
  return obj;
}

[[noreturn]] void missing(const char* field) {
  throw SignatureParseError(std::string("missing field '") + field + "'");
}

const ordered_json& require(const ordered_json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) missing(field);
  return *it;
}

}  // namespace

WorkloadSignature signature(const Trace& trace,
                            const CharacterizationConfig& config) {
  WorkloadSignature sig;
  sig.name = trace.meta.name;
  sig.instruction_count = trace.records.size();

  for (const InstructionRecord& rec : trace.records) {
    ++sig.class_counts[static_cast<std::size_t>(rec.opcode)];
  }
  if (sig.instruction_count > 0) {
    for (std::size_t c = 0; c < kOpcodeClassCount; ++c) {
      sig.instruction_mix[c] = static_cast<double>(sig.class_counts[c]) /
                               static_cast<double>(sig.instruction_count);
    }
  }

  DagResult dag = dependence_dag(trace);
  sig.dlp_per_opcode = dag.class_dlp;
  sig.dlp_weighted = dag.dlp_weighted;
  sig.bb_parallelism = block_parallelism(trace).parallelism;

  std::vector<std::uint64_t> addresses = memory_addresses(trace);
  sig.memory_access_count = addresses.size();
  if (addresses.empty()) return sig;  // compute-only: memory metrics absent

  sig.entropy = entropy_curve_addresses(addresses, config.reductions);

  SpatialConfig spatial_config;
  spatial_config.line_sizes = config.line_pairs;
  spatial_config.capacity_bytes = config.capacity;
  spatial_config.weights = config.weights;
  sig.spatial = spatial_locality_addresses(addresses, spatial_config);

  std::vector<std::uint64_t> l1_miss_addresses;
  std::uint64_t l1_misses = lru_miss_stream(
      addresses, config.line_size, config.capacity, l1_miss_addresses);
  std::uint64_t l2_misses =
      lru_miss_count(l1_miss_addresses, config.line_size, config.l2_capacity);

  MissRates rates;
  rates.m1 = static_cast<double>(l1_misses) /
             static_cast<double>(addresses.size());
  rates.m2 = l1_misses == 0 ? 0.0
                            : static_cast<double>(l2_misses) /
                                  static_cast<double>(l1_misses);
  sig.miss_rates = rates;
  return sig;
}

std::string signature_to_json(const WorkloadSignature& sig) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["name"] = sig.name;
  j["instruction_count"] = sig.instruction_count;
  j["memory_access_count"] = sig.memory_access_count;

  ordered_json counts = ordered_json::object();
  ordered_json mix = ordered_json::object();
  for (std::size_t c = 0; c < kOpcodeClassCount; ++c) {
    const char* name = opcode_name(static_cast<OpcodeClass>(c));
    counts[name] = sig.class_counts[c];
    mix[name] = sig.instruction_mix[c];
  }
  j["class_counts"] = counts;
  j["instruction_mix"] = mix;

  if (sig.entropy) {
    ordered_json points = ordered_json::array();
    for (const EntropyPoint& p : sig.entropy->points) {
      points.push_back({{"bit_reduction", p.bit_reduction},
                        {"entropy_bits", p.entropy_bits}});
    }
    j["entropy"] = {{"points", points}};
  } else {
    j["entropy"] = nullptr;
  }

  if (sig.spatial) {
    ordered_json pairs = ordered_json::array();
    for (const SpatialPair& p : sig.spatial->pairs) {
      pairs.push_back({{"line_size", p.line_size}, {"score", p.score}});
    }
    j["spatial"] = {{"pairs", pairs}, {"total", sig.spatial->total}};
  } else {
    j["spatial"] = nullptr;
  }

  if (sig.miss_rates) {
    j["miss_rates"] = {{"m1", sig.miss_rates->m1},
                       {"m2", sig.miss_rates->m2}};
  } else {
    j["miss_rates"] = nullptr;
  }

  j["dlp_per_opcode"] = class_map_json(sig.dlp_per_opcode, sig.class_counts,
                                       /*skip_absent=*/true);
  j["dlp_weighted"] = sig.dlp_weighted;
  j["bb_parallelism"] = sig.bb_parallelism;
  return j.dump(2) + "\n";
}

WorkloadSignature signature_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw SignatureParseError("not a JSON object");
  }
  try {
    int version = require(j, "schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw SignatureParseError("unsupported schema_version " +
                                std::to_string(version));
    }

    WorkloadSignature sig;
    sig.name = require(j, "name").get<std::string>();
    sig.instruction_count = require(j, "instruction_count").get<std::uint64_t>();
    sig.memory_access_count =
        require(j, "memory_access_count").get<std::uint64_t>();

    const ordered_json& counts = require(j, "class_counts");
    const ordered_json& mix = require(j, "instruction_mix");
    for (std::size_t c = 0; c < kOpcodeClassCount; ++c) {
      const char* name = opcode_name(static_cast<OpcodeClass>(c));
      if (counts.contains(name)) {
        sig.class_counts[c] = counts.at(name).get<std::uint64_t>();
      }
      if (mix.contains(name)) {
        sig.instruction_mix[c] = mix.at(name).get<double>();
      }
    }

    const ordered_json& entropy = require(j, "entropy");
    if (!entropy.is_null()) {
      EntropyCurve curve;
      for (const auto& p : require(entropy, "points")) {
        curve.points.push_back({p.at("bit_reduction").get<std::uint32_t>(),
                                p.at("entropy_bits").get<double>()});
      }
      sig.entropy = std::move(curve);
    }

    const ordered_json& spatial = require(j, "spatial");
    if (!spatial.is_null()) {
      SpatialResult result;
      for (const auto& p : require(spatial, "pairs")) {
        result.pairs.push_back({p.at("line_size").get<std::uint32_t>(),
                                p.at("score").get<double>()});
      }
      result.total = require(spatial, "total").get<double>();
      sig.spatial = std::move(result);
    }

    const ordered_json& rates = require(j, "miss_rates");
    if (!rates.is_null()) {
      sig.miss_rates = MissRates{require(rates, "m1").get<double>(),
                                 require(rates, "m2").get<double>()};
    }

    const ordered_json& dlp = require(j, "dlp_per_opcode");
    for (std::size_t c = 0; c < kOpcodeClassCount; ++c) {
      const char* name = opcode_name(static_cast<OpcodeClass>(c));
      if (dlp.contains(name)) {
        sig.dlp_per_opcode[c] = dlp.at(name).get<double>();
      }
    }
    sig.dlp_weighted = require(j, "dlp_weighted").get<double>();
    sig.bb_parallelism = require(j, "bb_parallelism").get<double>();
    return sig;
  } catch (const SignatureParseError&) {
    throw;
  } catch (const nlohmann::json::exception& ex) {
    throw SignatureParseError(ex.what());
  }
}

CharacterizationConfig characterization_config_from(const ConfigMap& config) {
  CharacterizationConfig out;
  out.reductions = config.get_u32_list("reductions", out.reductions);
  out.line_pairs = config.get_u32_list("line_pairs", out.line_pairs);
  out.capacity = config.get_size("capacity", out.capacity);
  out.l2_capacity = config.get_size("l2_capacity", out.l2_capacity);
  out.line_size =
      static_cast<std::uint32_t>(config.get_size("line_size", out.line_size));
  out.weights = config.get_double_list("spatial_weights", out.weights);
  return out;
}

}  // namespace nmcdse
