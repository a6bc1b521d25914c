#include "nmcdse/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "nmcdse/units.hpp"

namespace nmcdse {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) {
      parts.push_back(trim(text.substr(start)));
      break;
    }
    parts.push_back(trim(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return parts;
}

}  // namespace

ConfigMap ConfigMap::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str(), path);
}

ConfigMap ConfigMap::from_string(std::string_view text, std::string origin) {
  ConfigMap map;
  map.origin_ = std::move(origin);
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(map.origin_ + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + std::string(line) +
                        "'");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(map.origin_ + ":" + std::to_string(line_no) +
                        ": empty key");
    }
    if (value.empty()) {
      throw ConfigError(map.origin_ + ":" + std::to_string(line_no) +
                        ": empty value for key '" + std::string(key) + "'");
    }
    map.entries_[std::string(key)] = Entry{std::string(value), line_no, false};
  }
  return map;
}

void ConfigMap::apply_override(std::string_view key_eq_value) {
  size_t eq = key_eq_value.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(key_eq_value) +
                      "' must look like key=value");
  }
  std::string_view key = trim(key_eq_value.substr(0, eq));
  std::string_view value = trim(key_eq_value.substr(eq + 1));
  if (key.empty() || value.empty()) {
    throw ConfigError("override '" + std::string(key_eq_value) +
                      "' must look like key=value");
  }
  entries_[std::string(key)] = Entry{std::string(value), 0, false};
}

bool ConfigMap::contains(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

const ConfigMap::Entry* ConfigMap::find(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  it->second.consumed = true;
  return &it->second;
}

void ConfigMap::fail(std::string_view key, const Entry& entry,
                     const std::string& reason) const {
  std::string where = origin_;
  if (entry.line > 0) where += ":" + std::to_string(entry.line);
  throw ConfigError(where + ": key '" + std::string(key) + "': " + reason);
}

std::string ConfigMap::get_string(std::string_view key,
                                  std::string fallback) const {
  const Entry* e = find(key);
  return e ? e->value : std::move(fallback);
}

#define NMCDSE_CONFIG_GETTER(NAME, RESULT, PARSER)                        \
  RESULT ConfigMap::NAME(std::string_view key, RESULT fallback) const {  \
    const Entry* e = find(key);                                          \
    if (!e) return fallback;                                             \
    try {                                                                \
      return PARSER(e->value);                                           \
    } catch (const std::exception& ex) {                                 \
      fail(key, *e, ex.what());                                          \
    }                                                                    \
  }

NMCDSE_CONFIG_GETTER(get_double, double, parse_double)
NMCDSE_CONFIG_GETTER(get_size, std::uint64_t, parse_size_bytes)
NMCDSE_CONFIG_GETTER(get_bandwidth, double, parse_bandwidth)
NMCDSE_CONFIG_GETTER(get_frequency, double, parse_frequency)
NMCDSE_CONFIG_GETTER(get_energy_per_bit, double, parse_energy_per_bit)
NMCDSE_CONFIG_GETTER(get_energy, double, parse_energy)
NMCDSE_CONFIG_GETTER(get_power, double, parse_power)
NMCDSE_CONFIG_GETTER(get_time, double, parse_time_seconds)
NMCDSE_CONFIG_GETTER(get_cycles, double, parse_cycles)

#undef NMCDSE_CONFIG_GETTER

std::uint32_t ConfigMap::get_u32(std::string_view key,
                                 std::uint32_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  double value = 0.0;
  try {
    value = parse_double(e->value);
  } catch (const std::exception& ex) {
    fail(key, *e, ex.what());
  }
  if (value < 0 || value > 4294967295.0 || value != static_cast<double>(
                                                        static_cast<std::uint32_t>(value))) {
    fail(key, *e, "expected a non-negative integer");
  }
  return static_cast<std::uint32_t>(value);
}

std::uint64_t ConfigMap::get_u64(std::string_view key,
                                 std::uint64_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  double value = 0.0;
  try {
    value = parse_double(e->value);
  } catch (const std::exception& ex) {
    fail(key, *e, ex.what());
  }
  if (value < 0 || value > 9.22e18) {
    fail(key, *e, "expected a non-negative integer");
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<std::uint32_t> ConfigMap::get_u32_list(
    std::string_view key, std::vector<std::uint32_t> fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::vector<std::uint32_t> out;
  for (std::string_view part : split_commas(e->value)) {
    if (part.empty()) fail(key, *e, "empty list element");
    double value = 0.0;
    try {
      value = parse_double(part);
    } catch (const std::exception& ex) {
      fail(key, *e, ex.what());
    }
    if (value < 0 || value > 4294967295.0 ||
        value != static_cast<double>(static_cast<std::uint32_t>(value))) {
      fail(key, *e, "list element '" + std::string(part) +
                        "' is not a non-negative integer");
    }
    out.push_back(static_cast<std::uint32_t>(value));
  }
  return out;
}

std::vector<double> ConfigMap::get_double_list(
    std::string_view key, std::vector<double> fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::vector<double> out;
  for (std::string_view part : split_commas(e->value)) {
    if (part.empty()) fail(key, *e, "empty list element");
    try {
      out.push_back(parse_double(part));
    } catch (const std::exception& ex) {
      fail(key, *e, ex.what());
    }
  }
  return out;
}

std::vector<std::string> ConfigMap::unconsumed_keys() const {
  std::vector<std::string> keys;
  for (const auto& [key, entry] : entries_) {
    if (!entry.consumed) keys.push_back(key);
  }
  return keys;
}

}  // namespace nmcdse
