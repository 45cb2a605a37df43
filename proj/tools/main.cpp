// dirackit command line: scenario-driven verification suite for Dirac-type
// operator identities.  Exit codes: 0 all checks pass, 1 check failure,
// 2 invalid input.
#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "dirackit/config.hpp"
#include "dirackit/fermion_model.hpp"
#include "dirackit/report.hpp"
#include "dirackit/suite.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path = "-";
  bool json = false;
  double tolerance_scale = 0.0;  // 0 = keep config value
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "scenario config file");
  cmd->add_option("--out", opts.out_path, "report path, '-' for stdout");
  cmd->add_flag("--json", opts.json, "emit the JSON report (default for suite)");
  cmd->add_option("--tolerance-scale", opts.tolerance_scale, "scale all tolerances");
  cmd->add_option("--seed", opts.seed, "global random seed")->each([&](const std::string&) {
    opts.seed_set = true;
  });
}

dirackit::ScenarioConfig make_config(const CommonOpts& opts) {
  dirackit::ScenarioConfig cfg;
  if (!opts.config_path.empty()) cfg = dirackit::load_config(opts.config_path);
  if (opts.seed_set) cfg.seed = opts.seed;
  if (opts.tolerance_scale > 0) cfg.tolerance_scale = opts.tolerance_scale;
  return cfg;
}

int run_groups(const dirackit::ScenarioConfig& cfg, const CommonOpts& opts, bool force_json) {
  dirackit::Report rep = dirackit::run_suite(cfg);
  if (force_json || opts.json || opts.out_path != "-") {
    dirackit::emit_report(rep, opts.out_path);
  }
  if (!(force_json || opts.json) || opts.out_path != "-") {
    for (const auto& r : rep.records)
      std::cerr << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  residual=" << r.residual
                << " tol=" << r.tolerance << "\n";
    std::cerr << rep.passed() << "/" << rep.records.size() << " checks passed\n";
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dirackit: Clifford/Dirac-operator verification engine"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string model_out;

  std::map<std::string, std::string> groups = {
      {"clifford", "Clifford relation and chirality checks"},
      {"appendix", "index decomposition identities"},
      {"simple-type", "simple-type characterization and solution space"},
      {"potential", "Dirac potential identities"},
      {"blw", "lattice Lichnerowicz split"},
      {"masses", "symmetry breaking and mass operators"},
      {"pauli", "doubling, charge conjugation, Lagrangian split"},
      {"demo-sm", "electroweak lepton demonstration"},
  };
  std::vector<CLI::App*> subcommands;
  for (const auto& [name, desc] : groups) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_common(cmd, opts);
    subcommands.push_back(cmd);
  }
  CLI::App* suite = app.add_subcommand("suite", "run the configured check groups");
  add_common(suite, opts);

  CLI::App* dump = app.add_subcommand("dump-model", "write a built-in fixture model file");
  std::string fixture_name = "electroweak";
  dump->add_option("--fixture", fixture_name, "electroweak or abelian");
  dump->add_option("--out", model_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dump->parsed()) {
      dirackit::FermionModel m = fixture_name == "abelian"
                                     ? dirackit::abelian_higgs_model(1.3, 0.8)
                                     : dirackit::electroweak_model(1.3, 0.8);
      dirackit::save_model(m, model_out);
      return 0;
    }
    dirackit::ScenarioConfig cfg = make_config(opts);
    if (suite->parsed()) return run_groups(cfg, opts, true);
    for (std::size_t i = 0; i < subcommands.size(); ++i) {
      if (subcommands[i]->parsed()) {
        auto it = groups.begin();
        std::advance(it, long(i));
        cfg.groups = {it->first};
        return run_groups(cfg, opts, false);
      }
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const dirackit::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
