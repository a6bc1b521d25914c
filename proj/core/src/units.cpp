#include "nmcdse/units.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>

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

bool suffix_is(std::string_view suffix, std::string_view expected) {
  if (suffix.size() != expected.size()) return false;
  for (size_t i = 0; i < suffix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(suffix[i])) !=
        std::tolower(static_cast<unsigned char>(expected[i]))) {
      return false;
    }
  }
  return true;
}

struct Scale {
  std::string_view suffix;
  double factor;
};

/// Splits "<number><suffix>", scales by the matched suffix. An empty suffix
/// uses bare_factor. Suffix comparison is case-insensitive.
double parse_scaled(std::string_view text, std::string_view what,
                    std::initializer_list<Scale> scales, double bare_factor) {
  std::string_view trimmed = trim(text);
  if (trimmed.empty()) {
    throw UnitParseError("empty " + std::string(what) + " value");
  }
  std::string buf(trimmed);
  const char* begin = buf.c_str();
  char* end = nullptr;
  errno = 0;
  double value = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE || !std::isfinite(value)) {
    throw UnitParseError("cannot parse " + std::string(what) + " '" +
                         std::string(text) + "'");
  }
  std::string_view suffix = trim(std::string_view(end));
  if (suffix.empty()) return value * bare_factor;
  for (const Scale& s : scales) {
    if (suffix_is(suffix, s.suffix)) return value * s.factor;
  }
  throw UnitParseError("unknown unit '" + std::string(suffix) + "' in " +
                       std::string(what) + " '" + std::string(text) + "'");
}

}  // namespace

std::uint64_t parse_size_bytes(std::string_view text) {
  double bytes = parse_scaled(text, "size",
                              {{"B", 1.0},
                               {"KB", 1024.0},
                               {"KiB", 1024.0},
                               {"MB", 1024.0 * 1024.0},
                               {"MiB", 1024.0 * 1024.0},
                               {"GB", 1024.0 * 1024.0 * 1024.0},
                               {"GiB", 1024.0 * 1024.0 * 1024.0}},
                              1.0);
  if (bytes < 0.0 || bytes > 9.22e18) {
    throw UnitParseError("size out of range: '" + std::string(text) + "'");
  }
  return static_cast<std::uint64_t>(std::llround(bytes));
}

double parse_bandwidth(std::string_view text) {
  return parse_scaled(text, "bandwidth",
                      {{"B/s", 1.0},
                       {"KB/s", 1e3},
                       {"MB/s", 1e6},
                       {"GB/s", 1e9}},
                      1.0);
}

double parse_frequency(std::string_view text) {
  return parse_scaled(text, "frequency",
                      {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}},
                      1.0);
}

double parse_energy_per_bit(std::string_view text) {
  return parse_scaled(text, "energy per bit",
                      {{"pJ/b", 1e-12},
                       {"nJ/b", 1e-9},
                       {"uJ/b", 1e-6},
                       {"J/b", 1.0}},
                      1.0);
}

double parse_energy(std::string_view text) {
  return parse_scaled(text, "energy",
                      {{"pJ", 1e-12},
                       {"nJ", 1e-9},
                       {"uJ", 1e-6},
                       {"mJ", 1e-3},
                       {"J", 1.0}},
                      1.0);
}

double parse_power(std::string_view text) {
  return parse_scaled(text, "power", {{"uW", 1e-6}, {"mW", 1e-3}, {"W", 1.0}},
                      1.0);
}

double parse_time_seconds(std::string_view text) {
  return parse_scaled(text, "time",
                      {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}},
                      1.0);
}

double parse_cycles(std::string_view text) {
  return parse_scaled(text, "cycle count", {{"cycle", 1.0}, {"cycles", 1.0}},
                      1.0);
}

double parse_double(std::string_view text) {
  return parse_scaled(text, "number", {}, 1.0);
}

std::string format_g6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

}  // namespace nmcdse
