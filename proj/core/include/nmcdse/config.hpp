#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nmcdse {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& reason)
      : std::runtime_error(reason) {}
};

/// Flat `key = value` file with `#` comments. Getters record which keys were
/// consumed so callers can reject unknown keys after binding every struct
/// they accept (see unconsumed_keys). Unit-suffixed getters accept the
/// syntaxes documented in units.hpp; list getters split on commas.
class ConfigMap {
 public:
  ConfigMap() = default;

  /// Throws ConfigError with file/line context on malformed lines.
  static ConfigMap from_file(const std::string& path);
  static ConfigMap from_string(std::string_view text,
                               std::string origin = "<string>");

  /// Applies one "key=value" override, replacing any file value.
  /// Throws ConfigError when no '=' is present or the key is empty.
  void apply_override(std::string_view key_eq_value);

  bool contains(std::string_view key) const;
  bool empty() const { return entries_.empty(); }
  const std::string& origin() const { return origin_; }

  /// Each getter returns the fallback when the key is absent and throws
  /// ConfigError (naming key and origin) when the value does not parse.
  std::string get_string(std::string_view key, std::string fallback) const;
  double get_double(std::string_view key, double fallback) const;
  std::uint32_t get_u32(std::string_view key, std::uint32_t fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
  std::uint64_t get_size(std::string_view key, std::uint64_t fallback) const;
  double get_bandwidth(std::string_view key, double fallback) const;
  double get_frequency(std::string_view key, double fallback) const;
  double get_energy_per_bit(std::string_view key, double fallback) const;
  double get_energy(std::string_view key, double fallback) const;
  double get_power(std::string_view key, double fallback) const;
  double get_time(std::string_view key, double fallback) const;
  double get_cycles(std::string_view key, double fallback) const;
  std::vector<std::uint32_t> get_u32_list(
      std::string_view key, std::vector<std::uint32_t> fallback) const;
  std::vector<double> get_double_list(std::string_view key,
                                      std::vector<double> fallback) const;

  /// Keys never touched by any getter, sorted; non-empty after binding all
  /// expected structs means the file holds an unknown key.
  std::vector<std::string> unconsumed_keys() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool consumed = false;
  };

  const Entry* find(std::string_view key) const;
  [[noreturn]] void fail(std::string_view key, const Entry& entry,
                         const std::string& reason) const;

  std::map<std::string, Entry, std::less<>> entries_;
  std::string origin_ = "<empty>";
};

}  // namespace nmcdse
