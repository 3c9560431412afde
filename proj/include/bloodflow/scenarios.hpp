#pragma once

#include <string>
#include <vector>

#include "bloodflow/mesh_state.hpp"
#include "bloodflow/model.hpp"
#include "bloodflow/time_stepper.hpp"

namespace bloodflow {

// A complete experiment definition: domain, tube law, parameter fields,
// initial data, and (when meaningful) the unperturbed steady closures used
// for error reporting.
struct ScenarioSpec {
  std::string name;
  std::string description;
  double x_left = 0.0, x_right = 1.0;
  int cells = 50;
  BoundaryMode bc = BoundaryMode::extrapolation;
  double rho = 1060.0, m = 0.5, n = 0.0;
  ScalarField K, A0, pe;
  InitialData ic;
  double t_end = 1.0;
  std::vector<double> snapshots;   // intermediate output times
  ScalarField baseA, baseQ;        // may be empty

  Model model() const { return Model(rho, m, n); }
};

// Built-in catalog. inflow_shapiro applies to the moving-blood steady
// scenarios (example4-*, example5).
ScenarioSpec make_scenario(const std::string& name, double inflow_shapiro = 0.1);
const std::vector<std::string>& scenario_names();

struct RunConfig {
  std::string scenario;
  int order = 5;               // 3 | 4 | 5
  int cells = 0;               // 0: scenario default
  double t_end = -1.0;         // < 0: scenario default
  bool well_balanced = true;
  double cfl = 0.0;            // 0: default for the order
  double inflow_shapiro = 0.1;
  std::string out = "out";
  bool emit_plots = false;
  std::vector<int> meshes = {40, 80, 160, 320};
};

// Flat key=value file; '#' comments; [section] headers are accepted and
// ignored. Unknown keys are an error.
RunConfig load_config(const std::string& path);

struct Norms {
  double l1A = 0.0, linfA = 0.0, l1Q = 0.0, linfQ = 0.0;
};

// Cell-average errors against reference closures (closure averages via the
// same Gauss-Lobatto rule used for projection).
Norms error_norms(const Mesh& mesh, const BasisTables& bt, const SolutionState& s,
                  const ScalarField& refA, const ScalarField& refQ);

struct RunResult {
  Norms norms;
  bool has_norms = false;
  RunStats stats;
  SolutionState final_state;
  Mesh mesh;
};

// Full run with CSV artifacts under cfg.out: cell/point CSVs at snapshot
// times and t_end, a run log, a summary line, and optionally a gnuplot
// script.
RunResult run_scenario(const ScenarioSpec& sp, const RunConfig& cfg);

struct ConvergenceRow {
  int N = 0;
  double l1A = 0.0, l1Q = 0.0;   // against the next finer mesh
  double rateA = 0.0, rateQ = 0.0;
  long steps = 0;
};

// Successive-mesh self-convergence on dyadically nested meshes. Time steps
// scale as dx^{(r+1)/3}, anchored at the coarsest mesh, so the third-order
// time integrator does not cap the spatial order.
std::vector<ConvergenceRow> convergence_study(const ScenarioSpec& sp, const RunConfig& cfg);

struct SteadyCheckResult {
  double mom_rel = 0.0;  // max moment rhs over max interface flux / dx
  double pt_rel = 0.0;   // max point rhs over max interface (Q, E) / dx
  bool pass = false;
};

// Assemble the semi-discrete right-hand side on the projected initial data
// and report its relative magnitude (machine silence check).
SteadyCheckResult steady_silence(const ScenarioSpec& sp, const RunConfig& cfg,
                                 double tol = 1e-12);

// Total discrete mass/momentum from the zeroth moments.
double total_mass(const Mesh& mesh, const SolutionState& s);
double total_momentum(const Mesh& mesh, const SolutionState& s);

}  // namespace bloodflow
