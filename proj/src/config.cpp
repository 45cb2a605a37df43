#include "dirackit/config.hpp"

#include <fstream>
#include <sstream>

namespace dirackit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string ScenarioConfig::echo() const {
  std::ostringstream out;
  out << "signature=" << p << "," << q << " convention=" << (convention_sign > 0 ? "+1" : "-1")
      << " seed=" << seed << " fixture=" << fixture << " grids=";
  for (std::size_t i = 0; i < grid_sizes.size(); ++i)
    out << (i ? "," : "") << grid_sizes[i];
  out << " tol_scale=" << tolerance_scale << " groups=";
  for (std::size_t i = 0; i < groups.size(); ++i) out << (i ? "," : "") << groups[i];
  return out.str();
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw config_error("expected key = value: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "signature") {
        auto parts = split_list(value);
        if (parts.size() != 2) throw config_error("signature needs p,q");
        cfg.p = std::stoi(parts[0]);
        cfg.q = std::stoi(parts[1]);
      } else if (key == "convention") {
        cfg.convention_sign = std::stoi(value);
        if (cfg.convention_sign != 1 && cfg.convention_sign != -1)
          throw config_error("convention must be +1 or -1");
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "groups") {
        cfg.groups = split_list(value);
      } else if (key == "fixture") {
        cfg.fixture = value;
      } else if (key == "sizes") {
        cfg.grid_sizes.clear();
        for (const auto& s : split_list(value)) cfg.grid_sizes.push_back(std::stoi(s));
      } else if (key == "scale") {
        cfg.tolerance_scale = std::stod(value);
        if (cfg.tolerance_scale <= 0) throw config_error("tolerance scale must be positive");
      } else if (key == "timings") {
        cfg.include_timings = value == "true" || value == "1" || value == "on";
      } else {
        throw config_error("unknown key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw config_error("cannot parse value for " + key + ": " + value);
    } catch (const std::out_of_range&) {
      throw config_error("value out of range for " + key + ": " + value);
    }
  }
  if ((cfg.p + cfg.q) % 2 != 0 || cfg.p + cfg.q < 2 || cfg.p < 0 || cfg.q < 0)
    throw config_error("signature requires even n = p+q >= 2");
  for (int l : cfg.grid_sizes)
    if (l < 4) throw config_error("grid sizes must be >= 4");
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace dirackit
