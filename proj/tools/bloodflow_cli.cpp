#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bloodflow/scenarios.hpp"

namespace {

using namespace bloodflow;

void apply_overrides(RunConfig* cfg, int order, int cells, bool no_wb,
                     const std::string& out) {
  if (order) cfg->order = order;
  if (cells) cfg->cells = cells;
  if (no_wb) cfg->well_balanced = false;
  if (!out.empty()) cfg->out = out;
}

int cmd_run(const RunConfig& cfg) {
  const ScenarioSpec sp = make_scenario(cfg.scenario, cfg.inflow_shapiro);
  const RunResult res = run_scenario(sp, cfg);
  const int N = cfg.cells > 0 ? cfg.cells : sp.cells;
  std::printf("scenario=%s order=%d cells=%d steps=%ld fallback_cells=%ld\n",
              sp.name.c_str(), cfg.order, N, res.stats.steps, res.stats.fallback_cells);
  if (res.has_norms)
    std::printf("L1_A=%.6e Linf_A=%.6e L1_Q=%.6e Linf_Q=%.6e\n", res.norms.l1A,
                res.norms.linfA, res.norms.l1Q, res.norms.linfQ);
  std::printf("artifacts written to %s/\n", cfg.out.c_str());
  return 0;
}

int cmd_convergence(const RunConfig& cfg) {
  const ScenarioSpec sp = make_scenario(cfg.scenario, cfg.inflow_shapiro);
  const auto rows = convergence_study(sp, cfg);
  std::printf("%8s %14s %8s %14s %8s %8s\n", "N", "L1_A", "rate_A", "L1_Q", "rate_Q",
              "steps");
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i == 0)
      std::printf("%8d %14.6e %8s %14.6e %8s %8ld\n", r.N, r.l1A, "-", r.l1Q, "-", r.steps);
    else
      std::printf("%8d %14.6e %8.2f %14.6e %8.2f %8ld\n", r.N, r.l1A, r.rateA, r.l1Q,
                  r.rateQ, r.steps);
  }
  return 0;
}

int cmd_steady_check(const RunConfig& cfg) {
  const ScenarioSpec sp = make_scenario(cfg.scenario, cfg.inflow_shapiro);
  const SteadyCheckResult res = steady_silence(sp, cfg);
  std::printf("moment_rhs_rel=%.3e point_rhs_rel=%.3e -> %s\n", res.mom_rel, res.pt_rel,
              res.pass ? "PASS" : "FAIL");
  return res.pass ? 0 : 1;
}

int cmd_list() {
  for (const auto& name : scenario_names()) {
    const ScenarioSpec sp = make_scenario(name);
    std::printf("%-24s %s\n", name.c_str(), sp.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D blood flow solver: high-order well-balanced hybrid scheme"};
  app.require_subcommand(1);

  std::string config_path, out, meshes_csv;
  int order = 0, cells = 0;
  bool no_wb = false;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("config", config_path, "key=value run configuration")->required();
    sub->add_option("--order", order, "scheme order (3, 4, or 5)")
        ->check(CLI::IsMember({3, 4, 5}));
    sub->add_option("--cells", cells, "number of mesh cells")->check(CLI::PositiveNumber);
    sub->add_flag("--no-well-balanced", no_wb, "disable the reference-state subtraction");
    sub->add_option("--out", out, "output directory");
  };

  auto* run = app.add_subcommand("run", "run a scenario and write CSV artifacts");
  add_common(run, true);
  auto* conv = app.add_subcommand("convergence", "self-convergence study on nested meshes");
  add_common(conv, true);
  conv->add_option("--meshes", meshes_csv, "comma-separated doubling cell counts");
  auto* chk = app.add_subcommand("steady-check",
                                 "assemble the initial right-hand side and verify silence");
  add_common(chk, true);
  app.add_subcommand("list-scenarios", "print the built-in scenario catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-scenarios")) return cmd_list();
    RunConfig cfg = bloodflow::load_config(config_path);
    apply_overrides(&cfg, order, cells, no_wb, out);
    if (!meshes_csv.empty()) {
      cfg.meshes.clear();
      std::stringstream ss(meshes_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) cfg.meshes.push_back(std::stoi(tok));
    }
    if (cfg.scenario.empty()) throw std::runtime_error("config is missing scenario=");
    if (app.got_subcommand("run")) return cmd_run(cfg);
    if (app.got_subcommand("convergence")) return cmd_convergence(cfg);
    if (app.got_subcommand("steady-check")) return cmd_steady_check(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
