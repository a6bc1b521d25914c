#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nmcdse {

class UnitParseError : public std::invalid_argument {
 public:
  explicit UnitParseError(const std::string& reason)
      : std::invalid_argument(reason) {}
};

/// "32KB" -> 32768. Sizes are binary: B, KB/KiB, MB/MiB, GB/GiB multiply by
/// powers of 1024. A bare number means bytes. Whitespace around the number
/// and before the suffix is ignored; suffixes are case-insensitive.
std::uint64_t parse_size_bytes(std::string_view text);

/// "16GB/s" -> 16e9. Bandwidths are decimal: B/s, KB/s, MB/s, GB/s. A bare
/// number means bytes per second.
double parse_bandwidth(std::string_view text);

/// "3GHz" -> 3e9. Hz, kHz, MHz, GHz. A bare number means Hz.
double parse_frequency(std::string_view text);

/// "3.7pJ/b" -> 3.7e-12. pJ/b, nJ/b, uJ/b, J/b. A bare number means J/bit.
double parse_energy_per_bit(std::string_view text);

/// "50pJ" -> 5e-11. pJ, nJ, uJ, mJ, J. A bare number means joules.
double parse_energy(std::string_view text);

/// "0.96W" -> 0.96. uW, mW, W. A bare number means watts.
double parse_power(std::string_view text);

/// "5us" -> 5e-6. ns, us, ms, s. A bare number means seconds.
double parse_time_seconds(std::string_view text);

/// "2cycles" or "1 cycle" or "2" -> plain count.
double parse_cycles(std::string_view text);

/// Plain double with full-string validation.
double parse_double(std::string_view text);

/// Shortest float form at 6 significant digits ("%.6g").
std::string format_g6(double value);

}  // namespace nmcdse
