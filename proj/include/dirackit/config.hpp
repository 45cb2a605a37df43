#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dirackit/types.hpp"

namespace dirackit {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario configuration: plain-text sections of key = value lines.
//
//   [engine]
//   signature = 3,1
//   convention = +1
//   seed = 42
//   groups = clifford, appendix, simple-type, potential, blw, masses, pauli, demo-sm
//   fixture = electroweak          # or a .model file path
//   [grid]
//   sizes = 8, 16, 32
//   [tolerances]
//   scale = 1.0
//
// '#' starts a comment; numbers accept scientific notation.
struct ScenarioConfig {
  int p = 3;
  int q = 1;
  int convention_sign = +1;
  std::uint64_t seed = 42;
  std::vector<std::string> groups = {"clifford", "appendix", "simple-type", "potential",
                                     "blw",      "masses",   "pauli",       "demo-sm"};
  std::string fixture = "electroweak";
  std::vector<int> grid_sizes = {8, 16, 32};
  double tolerance_scale = 1.0;
  bool include_timings = false;

  std::string echo() const;  // canonical one-line summary for reports
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

}  // namespace dirackit
