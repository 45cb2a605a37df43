#pragma once

#include <string>
#include <vector>

#include "dirackit/types.hpp"

namespace dirackit {

struct CheckRecord {
  std::string name;
  std::string anchor;   // pointer into the underlying write-up
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  double wall_ms = 0.0;
};

struct Report {
  std::string engine_version = "0.1.0";
  std::string config_echo;
  std::uint64_t seed = 0;
  bool include_timings = false;
  std::vector<CheckRecord> records;

  int passed() const {
    int c = 0;
    for (const auto& r : records) c += r.pass ? 1 : 0;
    return c;
  }
  int failed() const { return int(records.size()) - passed(); }
  bool all_pass() const { return failed() == 0; }
};

// fixed key order, UTF-8; timings included only when requested so that a
// fixed seed reproduces files byte-for-byte
std::string report_to_json(const Report& r);

// path "-" writes to standard output
void emit_report(const Report& r, const std::string& path);

Report parse_report(const std::string& json_text);

}  // namespace dirackit
