#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nmcdse/trace.hpp"

namespace nmcdse {

/// Parse failure with the 1-based line number of the offending record.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Streaming parser for the line-oriented trace text format:
///
///   I <seq_id> <OPCODE> <bb_id> <dest|-> <src1,src2,...|-> [<hex_addr> <size>]
///
/// Comment lines start with '#'. The two trailing fields are present exactly
/// for LOAD/STORE records. gzip-compressed input is detected from its magic
/// bytes and inflated on the fly. Single pass, constant memory per record.
Trace parse_trace(std::istream& in, std::string name = {});
Trace parse_trace_file(const std::string& path);

/// Canonical text form of one record (no trailing newline).
std::string format_record(const InstructionRecord& rec);

/// Writes the canonical text form; parse followed by serialize is the
/// identity on canonically formatted input.
void serialize_trace(const Trace& trace, std::ostream& out);
void write_trace_file(const Trace& trace, const std::string& path);

}  // namespace nmcdse
