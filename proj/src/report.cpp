#include "dirackit/report.hpp"

#include <fstream>
#include <iostream>

#include <json.hpp>

namespace dirackit {

using ordered_json = nlohmann::ordered_json;

std::string report_to_json(const Report& r) {
  ordered_json j;
  j["engine"] = "dirackit";
  j["version"] = r.engine_version;
  j["seed"] = r.seed;
  j["config"] = r.config_echo;
  ordered_json checks = ordered_json::array();
  for (const CheckRecord& c : r.records) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["anchor"] = c.anchor;
    jc["status"] = c.pass ? "pass" : "fail";
    jc["residual"] = c.residual;
    jc["tolerance"] = c.tolerance;
    if (r.include_timings) jc["wall_ms"] = c.wall_ms;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["summary"]["total"] = r.records.size();
  j["summary"]["passed"] = r.passed();
  j["summary"]["failed"] = r.failed();
  return j.dump(2) + "\n";
}

void emit_report(const Report& r, const std::string& path) {
  const std::string text = report_to_json(r);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to " + path);
  out << text;
}

Report parse_report(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  Report r;
  r.engine_version = j.at("version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config_echo = j.at("config").get<std::string>();
  for (const auto& jc : j.at("checks")) {
    CheckRecord c;
    c.name = jc.at("name").get<std::string>();
    c.anchor = jc.at("anchor").get<std::string>();
    c.pass = jc.at("status").get<std::string>() == "pass";
    c.residual = jc.at("residual").get<double>();
    c.tolerance = jc.at("tolerance").get<double>();
    if (jc.contains("wall_ms")) {
      c.wall_ms = jc.at("wall_ms").get<double>();
      r.include_timings = true;
    }
    r.records.push_back(c);
  }
  const auto& s = j.at("summary");
  if (s.at("total").get<std::size_t>() != r.records.size() ||
      s.at("passed").get<int>() != r.passed() || s.at("failed").get<int>() != r.failed())
    throw std::runtime_error("report summary counts do not match records");
  return r;
}

}  // namespace dirackit
