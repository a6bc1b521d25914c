#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nmcdse/synthetic.hpp"
#include "nmcdse/trace.hpp"
#include "nmcdse/trace_io.hpp"

using namespace nmcdse;

namespace {

Trace parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

}  // namespace

TEST_SUITE("trace_io") {

TEST_CASE("single well-formed load") {
  Trace t = parse_text("I 0 LOAD 0 r1 - 0x1000 8\n");
  REQUIRE(t.records.size() == 1);
  const InstructionRecord& r = t.records[0];
  CHECK(r.seq_id == 0);
  CHECK(r.opcode == OpcodeClass::Load);
  CHECK(r.bb_id == 0);
  REQUIRE(r.dest.has_value());
  CHECK(*r.dest == 1);
  CHECK(r.sources.empty());
  REQUIRE(r.mem_addr.has_value());
  CHECK(*r.mem_addr == 0x1000);
  CHECK(*r.mem_size == 8);
}

TEST_CASE("address on a non-memory opcode is rejected") {
  CHECK_THROWS_WITH_AS(parse_text("I 0 IADD 0 r3 r1,r2 0x1000 8\n"),
                       doctest::Contains("address on non-memory opcode"),
                       ParseError);
}

TEST_CASE("three-line file parses field by field") {
  Trace t = parse_text(
      "# golden fragment\n"
      "I 0 LOAD 0 r1 - 0x100 8\n"
      "I 1 IADD 0 r2 r1 \n"
      "I 2 STORE 1 - r2 0x140 8\n");
  REQUIRE(t.records.size() == 3);
  CHECK(t.records[0].opcode == OpcodeClass::Load);
  CHECK(t.records[1].opcode == OpcodeClass::IAdd);
  CHECK(t.records[1].sources == std::vector<std::uint32_t>{1});
  CHECK_FALSE(t.records[1].mem_addr.has_value());
  CHECK(t.records[2].opcode == OpcodeClass::Store);
  CHECK(t.records[2].bb_id == 1);
  CHECK_FALSE(t.records[2].dest.has_value());
  CHECK(*t.records[2].mem_addr == 0x140);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse_text("I 0 LOAD 0 r1 - 0x100 8\nI 1 BOGUS 0 - -\n");
    FAIL("expected ParseError");
  } catch (const ParseError& ex) {
    CHECK(ex.line() == 2);
    CHECK(std::string(ex.what()).find("BOGUS") != std::string::npos);
  }
}

TEST_CASE("non-monotone seq_id is rejected") {
  CHECK_THROWS_WITH_AS(
      parse_text("I 5 LOAD 0 r1 - 0x0 8\nI 5 LOAD 0 r1 - 0x8 8\n"),
      doctest::Contains("non-monotone"), ParseError);
}

TEST_CASE("malformed fields are rejected") {
  CHECK_THROWS_AS(parse_text("I x LOAD 0 r1 - 0x0 8\n"), ParseError);
  CHECK_THROWS_AS(parse_text("I 0 LOAD 0 r1 -\n"), ParseError);          // no addr
  CHECK_THROWS_AS(parse_text("I 0 LOAD 0 r1 - 4096 8\n"), ParseError);   // not hex
  CHECK_THROWS_AS(parse_text("I 0 LOAD 0 r1 - 0x0 3\n"), ParseError);    // size
  CHECK_THROWS_AS(parse_text("I 0 LOAD 0 q1 - 0x0 8\n"), ParseError);    // reg
  CHECK_THROWS_AS(parse_text("J 0 LOAD 0 r1 - 0x0 8\n"), ParseError);    // marker
}

TEST_CASE("round trip is byte identical on canonical text") {
  const std::string canonical =
      "I 0 LOAD 0 r1 - 0x100 8\n"
      "I 1 IADD 0 r2 r1\n"
      "I 2 FMUL 0 r3 r1,r2\n"
      "I 3 STORE 1 - r3 0x180 8\n";
  Trace t = parse_text(canonical);
  std::ostringstream out;
  serialize_trace(t, out);
  CHECK(out.str() == canonical);
}

TEST_CASE("serialize then parse preserves every field") {
  PatternSpec spec;
  spec.kind = PatternKind::Stencil1d;
  spec.array_bytes = 4096;
  spec.sweeps = 2;
  Trace original = generate_synthetic(spec);

  std::ostringstream out;
  serialize_trace(original, out);
  Trace reparsed = parse_text(out.str());
  REQUIRE(reparsed.records.size() == original.records.size());
  for (std::size_t i = 0; i < original.records.size(); ++i) {
    const auto& a = original.records[i];
    const auto& b = reparsed.records[i];
    CHECK(a.seq_id == b.seq_id);
    CHECK(a.opcode == b.opcode);
    CHECK(a.bb_id == b.bb_id);
    CHECK(a.dest == b.dest);
    CHECK(a.sources == b.sources);
    CHECK(a.mem_addr == b.mem_addr);
    CHECK(a.mem_size == b.mem_size);
  }
}

TEST_CASE("gzip files round trip through the magic-byte sniffer") {
  PatternSpec spec;
  spec.kind = PatternKind::Sequential;
  spec.n_accesses = 500;
  Trace original = generate_synthetic(spec);

  std::string path = "trace_io_test.trc.gz";
  write_trace_file(original, path);

  // the file on disk really is gzip, not plain text
  std::ifstream raw(path, std::ios::binary);
  unsigned char magic[2] = {0, 0};
  raw.read(reinterpret_cast<char*>(magic), 2);
  CHECK(magic[0] == 0x1f);
  CHECK(magic[1] == 0x8b);
  raw.close();

  Trace reparsed = parse_trace_file(path);
  CHECK(reparsed.records.size() == original.records.size());
  CHECK(reparsed.records.back().mem_addr == original.records.back().mem_addr);
  std::remove(path.c_str());
}

TEST_CASE("validate flags each invariant violation") {
  Trace t;
  InstructionRecord ok;
  ok.seq_id = 0;
  ok.opcode = OpcodeClass::Load;
  ok.mem_addr = 0x10;
  ok.mem_size = 8;
  t.records.push_back(ok);
  CHECK(validate(t).ok());

  InstructionRecord dup = ok;  // duplicated seq_id
  t.records.push_back(dup);
  InstructionRecord bad_size;
  bad_size.seq_id = 5;
  bad_size.opcode = OpcodeClass::Store;
  bad_size.mem_addr = 0x20;
  bad_size.mem_size = 3;
  t.records.push_back(bad_size);
  InstructionRecord stray_addr;
  stray_addr.seq_id = 6;
  stray_addr.opcode = OpcodeClass::IAdd;
  stray_addr.mem_addr = 0x30;
  stray_addr.mem_size = 8;
  t.records.push_back(stray_addr);
  InstructionRecord no_addr;
  no_addr.seq_id = 7;
  no_addr.opcode = OpcodeClass::Load;
  t.records.push_back(no_addr);

  ValidationReport report = validate(t);
  REQUIRE(report.violations.size() == 4);
  CHECK(report.violations[0].kind == ViolationKind::NonMonotoneSeqId);
  CHECK(report.violations[1].kind == ViolationKind::InvalidMemSize);
  CHECK(report.violations[2].kind == ViolationKind::AddressOnNonMemoryOpcode);
  CHECK(report.violations[3].kind ==
        ViolationKind::MissingAddressOnMemoryOpcode);
}

}  // TEST_SUITE("trace_io")
