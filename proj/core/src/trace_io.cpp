#include "nmcdse/trace_io.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace nmcdse {
namespace {

constexpr std::size_t kMaxLineBytes = 1 << 16;

bool parse_u64(std::string_view token, std::uint64_t& out, int base = 10) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out, base);
  return ec == std::errc() && ptr == last;
}

bool parse_u32(std::string_view token, std::uint32_t& out) {
  std::uint64_t wide = 0;
  if (!parse_u64(token, wide) || wide > 0xffffffffULL) return false;
  out = static_cast<std::uint32_t>(wide);
  return true;
}

bool parse_register(std::string_view token, std::uint32_t& out) {
  if (token.size() < 2 || token[0] != 'r') return false;
  return parse_u32(token.substr(1), out);
}

/// Splits a line into whitespace-separated tokens, in place.
std::size_t tokenize(std::string_view line,
                     std::array<std::string_view, 10>& tokens) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (count == tokens.size()) return count + 1;  // too many tokens
    tokens[count++] = line.substr(start, i - start);
  }
  return count;
}

struct LineParser {
  std::size_t line_no = 0;
  bool have_prev_seq = false;
  std::uint64_t prev_seq = 0;

  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError(line_no, reason);
  }

  /// Parses one line into rec. Returns false for blank/comment lines.
  bool parse_line(std::string_view line, InstructionRecord& rec) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t begin = 0;
    while (begin < line.size() &&
           (line[begin] == ' ' || line[begin] == '\t')) {
      ++begin;
    }
    if (begin == line.size()) return false;
    if (line[begin] == '#') return false;

    std::array<std::string_view, 10> tok;
    std::size_t n = tokenize(line, tok);
    if (n > tok.size()) fail("too many fields");
    if (n < 6) fail("expected at least 6 fields, got " + std::to_string(n));
    if (tok[0] != "I") {
      fail("expected record marker 'I', got '" + std::string(tok[0]) + "'");
    }

    if (!parse_u64(tok[1], rec.seq_id)) {
      fail("bad seq_id '" + std::string(tok[1]) + "'");
    }
    if (have_prev_seq && rec.seq_id <= prev_seq) {
      fail("non-monotone seq_id " + std::to_string(rec.seq_id) + " after " +
           std::to_string(prev_seq));
    }
    prev_seq = rec.seq_id;
    have_prev_seq = true;

    auto opcode = opcode_from_name(tok[2]);
    if (!opcode) fail("unknown opcode '" + std::string(tok[2]) + "'");
    rec.opcode = *opcode;

    if (!parse_u32(tok[3], rec.bb_id)) {
      fail("bad bb_id '" + std::string(tok[3]) + "'");
    }

    rec.dest.reset();
    if (tok[4] != "-") {
      std::uint32_t reg = 0;
      if (!parse_register(tok[4], reg)) {
        fail("bad destination register '" + std::string(tok[4]) + "'");
      }
      rec.dest = reg;
    }

    rec.sources.clear();
    if (tok[5] != "-") {
      std::string_view rest = tok[5];
      while (!rest.empty()) {
        std::size_t comma = rest.find(',');
        std::string_view part = rest.substr(0, comma);
        std::uint32_t reg = 0;
        if (!parse_register(part, reg)) {
          fail("bad source register '" + std::string(part) + "'");
        }
        rec.sources.push_back(reg);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      if (rec.sources.empty()) fail("empty source list");
    }

    rec.mem_addr.reset();
    rec.mem_size.reset();
    if (is_memory_op(rec.opcode)) {
      if (n != 8) fail(std::string(opcode_name(rec.opcode)) +
                       " needs address and size fields");
      std::string_view addr = tok[6];
      if (addr.size() < 3 || addr[0] != '0' ||
          (addr[1] != 'x' && addr[1] != 'X')) {
        fail("address '" + std::string(addr) + "' must be 0x-prefixed hex");
      }
      std::uint64_t value = 0;
      if (!parse_u64(addr.substr(2), value, 16)) {
        fail("bad hex address '" + std::string(addr) + "'");
      }
      rec.mem_addr = value;
      std::uint32_t size = 0;
      if (!parse_u32(tok[7], size) || !valid_mem_size(size)) {
        fail("bad access size '" + std::string(tok[7]) +
             "' (power of two in [1, 64])");
      }
      rec.mem_size = size;
    } else if (n != 6) {
      fail(std::string("address on non-memory opcode ") +
           opcode_name(rec.opcode));
    }
    return true;
  }
};

bool looks_gzipped(const unsigned char* bytes, std::size_t n) {
  return n >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b;
}

std::string inflate_gzip(const std::string& compressed) {
  z_stream strm{};
  if (inflateInit2(&strm, 16 + MAX_WBITS) != Z_OK) {
    throw ParseError(0, "cannot initialize gzip decoder");
  }
  std::string out;
  std::vector<unsigned char> buf(1 << 16);
  strm.next_in =
      reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  strm.avail_in = static_cast<uInt>(compressed.size());
  int rc = Z_OK;
  do {
    strm.next_out = buf.data();
    strm.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&strm, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&strm);
      throw ParseError(0, "corrupt gzip stream");
    }
    out.append(reinterpret_cast<char*>(buf.data()),
               buf.size() - strm.avail_out);
  } while (rc != Z_STREAM_END && (strm.avail_in > 0 || strm.avail_out == 0));
  inflateEnd(&strm);
  if (rc != Z_STREAM_END) throw ParseError(0, "truncated gzip stream");
  return out;
}

Trace parse_plain(std::istream& in, std::string name) {
  Trace trace;
  trace.meta.name = std::move(name);
  trace.meta.source = "parsed";

  LineParser parser;
  std::string line;
  line.reserve(256);
  InstructionRecord rec;
  while (std::getline(in, line)) {
    ++parser.line_no;
    if (line.size() > kMaxLineBytes) parser.fail("line too long");
    if (parser.parse_line(line, rec)) {
      trace.records.push_back(rec);
    }
  }
  return trace;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason),
      line_(line) {}

Trace parse_trace(std::istream& in, std::string name) {
  int first = in.peek();
  if (first == 0x1f) {
    std::ostringstream raw;
    raw << in.rdbuf();
    std::string bytes = raw.str();
    if (looks_gzipped(reinterpret_cast<const unsigned char*>(bytes.data()),
                      bytes.size())) {
      std::istringstream inflated(inflate_gzip(bytes));
      return parse_plain(inflated, std::move(name));
    }
    std::istringstream replay(bytes);
    return parse_plain(replay, std::move(name));
  }
  return parse_plain(in, std::move(name));
}

Trace parse_trace_file(const std::string& path) {
  // gzopen reads both gzip and plain files, sniffing the magic bytes, and
  // streams decompression so huge traces never sit in memory twice.
  gzFile file = gzopen(path.c_str(), "rb");
  if (file == nullptr) {
    throw ParseError(0, "cannot open trace file '" + path + "'");
  }
  gzbuffer(file, 1 << 17);

  Trace trace;
  std::string stem = path;
  if (size_t slash = stem.find_last_of('/'); slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  if (size_t dot = stem.find('.'); dot != std::string::npos) {
    stem = stem.substr(0, dot);
  }
  trace.meta.name = stem;
  trace.meta.source = "parsed";

  LineParser parser;
  std::vector<char> buf(kMaxLineBytes);
  InstructionRecord rec;
  try {
    while (gzgets(file, buf.data(), static_cast<int>(buf.size())) != nullptr) {
      ++parser.line_no;
      std::size_t len = std::strlen(buf.data());
      if (len + 1 == buf.size() && buf[len - 1] != '\n') {
        parser.fail("line too long");
      }
      if (len > 0 && buf[len - 1] == '\n') --len;
      if (parser.parse_line(std::string_view(buf.data(), len), rec)) {
        trace.records.push_back(rec);
      }
    }
    int errnum = Z_OK;
    gzerror(file, &errnum);
    if (errnum != Z_OK && errnum != Z_STREAM_END) {
      parser.fail("error reading '" + path + "'");
    }
  } catch (...) {
    gzclose(file);
    throw;
  }
  gzclose(file);
  return trace;
}

std::string format_record(const InstructionRecord& rec) {
  char buf[96];
  std::string out = "I ";
  out += std::to_string(rec.seq_id);
  out += ' ';
  out += opcode_name(rec.opcode);
  out += ' ';
  out += std::to_string(rec.bb_id);
  out += ' ';
  if (rec.dest) {
    out += 'r';
    out += std::to_string(*rec.dest);
  } else {
    out += '-';
  }
  out += ' ';
  if (rec.sources.empty()) {
    out += '-';
  } else {
    for (std::size_t i = 0; i < rec.sources.size(); ++i) {
      if (i > 0) out += ',';
      out += 'r';
      out += std::to_string(rec.sources[i]);
    }
  }
  if (rec.mem_addr) {
    std::snprintf(buf, sizeof(buf), " 0x%llx %u",
                  static_cast<unsigned long long>(*rec.mem_addr),
                  rec.mem_size ? *rec.mem_size : 0u);
    out += buf;
  }
  return out;
}

void serialize_trace(const Trace& trace, std::ostream& out) {
  for (const InstructionRecord& rec : trace.records) {
    out << format_record(rec) << '\n';
  }
}

void write_trace_file(const Trace& trace, const std::string& path) {
  bool gzipped = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  if (gzipped) {
    gzFile file = gzopen(path.c_str(), "wb");
    if (file == nullptr) {
      throw std::runtime_error("cannot write trace file '" + path + "'");
    }
    for (const InstructionRecord& rec : trace.records) {
      std::string line = format_record(rec);
      line += '\n';
      if (gzwrite(file, line.data(), static_cast<unsigned>(line.size())) == 0) {
        gzclose(file);
        throw std::runtime_error("error writing '" + path + "'");
      }
    }
    gzclose(file);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write trace file '" + path + "'");
  }
  serialize_trace(trace, out);
  if (!out) {
    throw std::runtime_error("error writing '" + path + "'");
  }
}

}  // namespace nmcdse
