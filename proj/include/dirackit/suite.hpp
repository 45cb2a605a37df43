#pragma once

#include "dirackit/config.hpp"
#include "dirackit/report.hpp"

namespace dirackit {

// Named check groups, run in dependency order by run_suite.  Each check
// derives its own random stream from the global seed and its name, so the
// set of checks executed never changes the data any one check sees.
std::vector<CheckRecord> run_group(const std::string& group, const ScenarioConfig& cfg);

Report run_suite(const ScenarioConfig& cfg);

const std::vector<std::string>& known_groups();

}  // namespace dirackit
