// wlansim command line: validate scenario files, run one PHY arm, or run
// the 802.11a vs 802.11b comparison and emit CSV metrics.

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "wlansim/report.hpp"
#include "wlansim/runner.hpp"
#include "wlansim/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOrderingsViolated = 1;
constexpr int kExitError = 2;

std::optional<wlansim::ScenarioConfig> load_or_print(const std::string& path) {
  wlansim::LoadResult r =
      path.empty() ? wlansim::load_scenario_text(wlansim::paper_scenario_text())
                   : wlansim::load_scenario_file(path);
  if (!r.ok()) {
    for (const auto& e : r.errors) {
      if (e.line > 0) {
        std::cerr << (path.empty() ? "<built-in>" : path) << ":" << e.line << ": " << e.message
                  << "\n";
      } else {
        std::cerr << (path.empty() ? "" : path + ": ") << e.message << "\n";
      }
    }
    return std::nullopt;
  }
  return r.config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wlansim: SIP/VoIP QoS comparison over simulated 802.11a/b WLANs"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::string phy = "b";
  std::uint64_t seed = 0;
  bool seed_set = false;
  double duration_s = -1;

  auto add_common = [&](CLI::App* cmd, bool with_phy) {
    cmd->add_option("--scenario", scenario_path,
                    "Scenario file (defaults to the built-in reference scenario)");
    cmd->add_option("--seed", seed, "Override the scenario's random seed")
        ->each([&](const std::string&) { seed_set = true; });
    cmd->add_option("--duration", duration_s, "Override the simulated horizon, seconds");
    cmd->add_option("--out", out_dir, "Output directory");
    if (with_phy) cmd->add_option("--phy", phy, "PHY standard: a or b");
  };

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate->add_option("--scenario", scenario_path, "Scenario file");

  CLI::App* run = app.add_subcommand("run", "Run a single arm and emit its metrics");
  add_common(run, true);

  CLI::App* compare =
      app.add_subcommand("compare", "Run both PHY arms with one seed and compare");
  add_common(compare, false);

  CLI::App* print_scn =
      app.add_subcommand("print-scenario", "Print the built-in reference scenario");

  CLI11_PARSE(app, argc, argv);

  try {
    if (print_scn->parsed()) {
      std::cout << wlansim::paper_scenario_text();
      return kExitOk;
    }

    auto cfg = load_or_print(scenario_path);
    if (!cfg) return kExitError;

    if (validate->parsed()) {
      std::cout << "scenario ok: " << cfg->nodes.size() << " nodes, " << cfg->flow_count()
                << " flows, " << cfg->channels.size() << " channels\n";
      return kExitOk;
    }

    if (seed_set) cfg->seed = seed;
    if (duration_s > 0) cfg->duration = wlansim::from_seconds(duration_s);

    if (run->parsed()) {
      if (phy != "a" && phy != "b") {
        std::cerr << "--phy must be 'a' or 'b'\n";
        return kExitError;
      }
      const auto arm = phy == "a" ? wlansim::PhyStandard::A : wlansim::PhyStandard::B;
      wlansim::RunReport report = wlansim::run_scenario(*cfg, arm, cfg->seed);
      wlansim::emit_run_outputs(report, out_dir);
      std::cout << "run complete: 802.11" << phy << ", seed " << cfg->seed << ", "
                << report.events_fired << " events, outputs in " << out_dir << "\n";
      if (!report.conservation_ok || !report.jitter_closure_ok) {
        std::cerr << "internal accounting check failed\n";
        return kExitError;
      }
      return kExitOk;
    }

    // compare
    wlansim::ComparisonReport cmp = wlansim::run_comparison(*cfg, cfg->seed);
    wlansim::emit_comparison_outputs(cmp, out_dir);
    std::cout << wlansim::comparison_text(cmp);
    std::cout << "outputs in " << out_dir << "\n";
    if (!cmp.a.conservation_ok || !cmp.b.conservation_ok) {
      std::cerr << "internal accounting check failed\n";
      return kExitError;
    }
    return cmp.all_hold() ? kExitOk : kExitOrderingsViolated;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
