// End-to-end acceptance battery. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any of them fail. Tolerances are pinned
// here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bloodflow/reference_solutions.hpp"
#include "bloodflow/scenarios.hpp"
#include "bloodflow/time_stepper.hpp"

using namespace bloodflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

double now_seconds() {
  using clk = std::chrono::steady_clock;
  static const clk::time_point t0 = clk::now();
  return std::chrono::duration<double>(clk::now() - t0).count();
}

struct ConvData {  // per order, reused by criterion 8
  std::vector<int> N;
  std::vector<double> l1A;
  std::vector<long> steps;
};

bool criterion1(ConvData data[3]) {
  const double t_start = now_seconds();
  bool ok = true;
  ScenarioSpec sp = make_scenario("example1");
  for (int order : {3, 4, 5}) {
    RunConfig cfg;
    cfg.scenario = sp.name;
    cfg.order = order;
    cfg.meshes = {40, 80, 160, 320};
    const auto rows = convergence_study(sp, cfg);
    ConvData& d = data[order - 3];
    for (const auto& r : rows) {
      d.N.push_back(r.N);
      d.l1A.push_back(r.l1A);
      d.steps.push_back(r.steps);
    }
    const double need = order - 0.4;
    for (size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].rateA < need || rows[i].rateQ < need) ok = false;
    }
  }
  const double elapsed = now_seconds() - t_start;
  if (elapsed > 300.0) ok = false;
  return ok;
}

struct SteadyScenario {
  const char* name;
  // Horizon for the unbalanced comparison run; < 0 keeps the scenario
  // default. The unbalanced vein run destabilizes immediately and its step
  // size collapses, so it is sampled shortly after start instead — its error
  // there is already of order one.
  double nwb_t_end;
};

const SteadyScenario kSteady[] = {
    {"example2-unloaded", -1.0}, {"example2-loaded", -1.0}, {"example4-aneurysm", -1.0},
    {"example4-stenosis", -1.0}, {"example4-step", -1.0},   {"example8", -1.0},
    {"example9", 1e-5},
};

// Relative error of the run against its own steady closures: L1 per unit
// length and Linf, both divided by the closure amplitude.
struct RelErr {
  double l1, linf;
};

RelErr relative_errors(const ScenarioSpec& sp, const RunResult& rr) {
  double scale = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = sp.x_left + (sp.x_right - sp.x_left) * i / 200.0;
    scale = std::max(scale, std::abs(sp.baseA(x)));
  }
  return {rr.norms.l1A / ((sp.x_right - sp.x_left) * scale), rr.norms.linfA / scale};
}

bool criterion2() {
  bool ok = true;
  for (const SteadyScenario& sc : kSteady) {
    const ScenarioSpec sp = make_scenario(sc.name);
    for (int order : {3, 4, 5}) {
      RunConfig cfg;
      cfg.scenario = sp.name;
      cfg.order = order;
      cfg.out = "/tmp/bf_acc/wb";
      const RelErr wb = relative_errors(sp, run_scenario(sp, cfg));
      cfg.well_balanced = false;
      cfg.out = "/tmp/bf_acc/nwb";
      if (sc.nwb_t_end > 0.0) cfg.t_end = sc.nwb_t_end;
      const RelErr nwb = relative_errors(sp, run_scenario(sp, cfg));
      if (wb.l1 > 1e-12 || wb.linf > 1e-12) ok = false;
      // The balancing must matter: either the unbalanced run is at least
      // three orders of magnitude worse, or the discretization happens to be
      // exact for this configuration even without it (both errors at machine
      // level, which only occurs for the unloaded rest state at order 3 and
      // the stenosis at order 5).
      if (!(nwb.l1 >= 1e3 * wb.l1 || nwb.linf <= 1e-11)) ok = false;
    }
  }
  return ok;
}

bool criterion3() {
  bool ok = true;
  for (const SteadyScenario& sc : kSteady) {
    const ScenarioSpec sp = make_scenario(sc.name);
    for (int order : {3, 4, 5}) {
      RunConfig cfg;
      cfg.scenario = sp.name;
      cfg.order = order;
      const SteadyCheckResult r = steady_silence(sp, cfg);
      if (!r.pass || r.mom_rel > 1e-12 || r.pt_rel > 1e-12) ok = false;
    }
  }
  return ok;
}

bool criterion4() {
  // Periodic domain with flat parameters; the scheme must telescope.
  ScenarioSpec sp = make_scenario("example1");
  sp.A0 = [](double) { return 5.0; };
  sp.K = [](double) { return 1.26156626101008039e8; };  // any positive constant
  bool ok = true;
  for (int order : {3, 4, 5}) {
    const int deg = order - 1;
    const Mesh mesh = build_mesh(sp.x_left, sp.x_right, 40, BoundaryMode::periodic);
    SolutionState s;
    ParameterData p;
    initialize(mesh, BasisTables::get(deg), sp.ic, sp.K, sp.A0, sp.pe, &s, &p);
    const SpatialScheme sch(mesh, sp.model(), p, deg, true);

    // assembled zeroth-moment source: identically zero, bit for bit
    CellSamples cs;
    ReferenceSteadyState ref;
    for (int j = 0; j < mesh.n; ++j) {
      if (!sch.sample_cell(s, j, deg, &cs)) ok = false;
      sch.reference_for(cs, &ref);
      double oa = 1.0, oq = 1.0;
      sch.wb_source(cs, ref, 0, &oa, &oq);
      if (oa != 0.0 || oq != 0.0) ok = false;
    }

    const double m0 = total_mass(mesh, s), q0 = total_momentum(mesh, s);
    TimeStepper ts(sch);
    StepInfo info;
    for (int i = 0; i < 100; ++i) ts.step(&s, ts.compute_dt(s), &info);
    if (std::abs(total_mass(mesh, s) - m0) > 1e-12 * std::abs(m0)) ok = false;
    if (std::abs(total_momentum(mesh, s) - q0) > 1e-12 * std::abs(q0)) ok = false;
  }
  return ok;
}

bool criterion5() {
  struct Case {
    const char* scen;
    double center;
  };
  bool ok = true;
  for (const Case& c : {Case{"example3", 0.07}, Case{"example5", 0.08}}) {
    const ScenarioSpec sp = make_scenario(c.scen);
    const Model md = sp.model();
    // initial pulse amplitude, half-width, and the speed range carrying it
    double amp0 = 0.0, cmax = 0.0, cmin = 1e300, half = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double x = sp.x_left + (sp.x_right - sp.x_left) * i / 2000.0;
      const double d = std::abs(sp.ic.A(x) - sp.baseA(x));
      amp0 = std::max(amp0, d);
      if (d > 1e-16 * sp.ic.A(x)) half = std::max(half, std::abs(x - c.center));
      const double A = sp.ic.A(x);
      const double cs = md.sound_speed(A, sp.K(x), sp.A0(x));
      cmax = std::max(cmax, std::abs(sp.ic.Q(x) / A) + cs);
      cmin = std::min(cmin, cs - std::abs(sp.ic.Q(x) / A));
    }
    const double T = sp.snapshots.front();
    double out_wb = 0.0, out_nwb = 0.0;
    for (int wb = 1; wb >= 0; --wb) {
      RunConfig cfg;
      cfg.scenario = sp.name;
      cfg.order = 5;
      cfg.well_balanced = wb;
      cfg.t_end = T;
      cfg.out = "/tmp/bf_acc/pert";
      ScenarioSpec run = sp;
      run.t_end = T;
      run.snapshots.clear();
      const RunResult rr = run_scenario(run, cfg);
      const Mesh& mesh = rr.mesh;
      // base averages through the same projection as the initial data, so the
      // comparison is free of quadrature error on the parameter ramps
      SolutionState bs;
      ParameterData bp;
      initialize(mesh, BasisTables::get(4), InitialData{sp.baseA, sp.baseQ}, sp.K, sp.A0,
                 sp.pe, &bs, &bp);
      const double lo = cmin * T - half - 3.0 * mesh.dx;
      const double hi = cmax * T + half + 3.0 * mesh.dx;
      double inL = 0.0, inR = 0.0, out = 0.0;
      for (int j = 0; j < mesh.n; ++j) {
        const double xc = mesh.center(j);
        const double d = std::abs(rr.final_state.mA(j, 0) - bs.mA(j, 0));
        const double r = std::abs(xc - c.center);
        if (r >= lo && r <= hi) {
          (xc < c.center ? inL : inR) = std::max(xc < c.center ? inL : inR, d);
        } else {
          out = std::max(out, d);
        }
      }
      if (wb) {
        // two humps of comparable size on both sides, clean background
        if (inL < amp0 / 3.0 || inL > 2.0 * amp0) ok = false;
        if (inR < amp0 / 3.0 || inR > 2.0 * amp0) ok = false;
        if (out >= 0.1 * amp0) ok = false;
        out_wb = out;
      } else {
        out_nwb = out;
      }
    }
    // Unbalanced runs must show visible background artifacts: beyond the 10%
    // bound for the moving-blood pulse, and at least 20x the balanced
    // background for the blood-at-rest pulse (whose amplitude is large
    // against the unbalanced steady error).
    if (std::string(c.scen) == "example5") {
      if (out_nwb <= 0.1 * amp0) ok = false;
    } else {
      if (out_nwb <= 20.0 * std::max(out_wb, 1e-30)) ok = false;
    }
  }
  return ok;
}

struct RiemannCase {
  const char* scen;
  double xm;
};

bool criterion6() {
  bool ok = true;
  for (const RiemannCase& c : {RiemannCase{"example6", 0.0}, RiemannCase{"example7-rarefactions", 0.1},
                               RiemannCase{"example7-shocks", 0.1}}) {
    const ScenarioSpec sp = make_scenario(c.scen);
    const Model md = sp.model();
    const double AL = sp.ic.A(sp.x_left), AR = sp.ic.A(sp.x_right);
    const double uL = sp.ic.Q(sp.x_left) / AL, uR = sp.ic.Q(sp.x_right) / AR;
    const ExactRiemannArtery ex(md, sp.K(c.xm), sp.A0(c.xm), {AL, uL, AR, uR});
    const double cL = md.sound_speed(AL, sp.K(c.xm), sp.A0(c.xm));
    const double cR = md.sound_speed(AR, sp.K(c.xm), sp.A0(c.xm));
    const double cM = md.sound_speed(ex.A_middle(), sp.K(c.xm), sp.A0(c.xm));
    const double waves[4] = {
        ex.left_is_shock() ? ex.left_shock_speed() : uL - cL,
        ex.left_is_shock() ? ex.left_shock_speed() : ex.u_middle() - cM,
        ex.right_is_shock() ? ex.right_shock_speed() : ex.u_middle() + cM,
        ex.right_is_shock() ? ex.right_shock_speed() : uR + cR};

    const double q0lo = std::min(AL * uL, AR * uR), q0hi = std::max(AL * uL, AR * uR);
    // Transient bound on the cell-average discharge: the start-up Gibbs
    // overshoot of the tourniquet case reaches ~17% of the middle state on a
    // 50-cell mesh, so allow a 25% band; a genuine blow-up exceeds it by
    // orders of magnitude.
    const double dq = 0.25 * std::max(q0hi - q0lo, std::abs(ex.A_middle() * ex.u_middle()));

    double prev_l1 = 1e300;
    for (int N : {25, 50, 100}) {
      const Mesh mesh = build_mesh(sp.x_left, sp.x_right, N, sp.bc);
      SolutionState s;
      ParameterData p;
      initialize(mesh, BasisTables::get(4), sp.ic, sp.K, sp.A0, sp.pe, &s, &p);
      const SpatialScheme sch(mesh, md, p, 4, true);
      TimeStepper ts(sch);
      StepInfo info;
      double worst_dist = 0.0;
      bool q_extrema_ok = true;
      while (s.t < sp.t_end - 1e-15) {
        const double t0 = s.t;
        ts.step(&s, std::min(ts.compute_dt(s), sp.t_end - s.t), &info);
        if (N == 50) {
          for (int j : info.reduced_cells) {
            double dmin = std::abs(mesh.center(j) - c.xm) / mesh.dx;
            for (double w : waves)
              dmin = std::min(dmin, std::abs(mesh.center(j) - (c.xm + w * t0)) / mesh.dx);
            worst_dist = std::max(worst_dist, dmin);
          }
        }
        for (int j = 0; j < mesh.n; ++j) {
          if (!(s.mA(j, 0) > 0.0)) ok = false;  // no accepted negative area
          if (s.mQ(j, 0) < std::min(q0lo, ex.A_middle() * ex.u_middle()) - dq ||
              s.mQ(j, 0) > std::max(q0hi, ex.A_middle() * ex.u_middle()) + dq)
            q_extrema_ok = false;
        }
      }
      for (int i = 0; i <= mesh.n; ++i)
        if (!(s.ptA[i] > 0.0)) ok = false;

      // L1 distance to the exact solution, via cell-center sampling
      double l1 = 0.0;
      for (int j = 0; j < mesh.n; ++j) {
        const PrimState v = ex.sample((mesh.center(j) - c.xm) / s.t);
        l1 += mesh.dx * std::abs(s.mA(j, 0) - v.A);
      }
      if (l1 >= prev_l1) ok = false;  // strictly decreasing with refinement
      prev_l1 = l1;

      // shock locations: midpoint crossing of the cell averages vs s*t
      auto shock_pos = [&](double Aout, double side) {
        const double mid = 0.5 * (Aout + ex.A_middle());
        if (side > 0) {
          for (int j = mesh.n - 1; j >= 0; --j)
            if (s.mA(j, 0) >= mid) return mesh.interface(j + 1);
        } else {
          for (int j = 0; j < mesh.n; ++j)
            if (s.mA(j, 0) >= mid) return mesh.interface(j);
        }
        return 1e300;
      };
      if (ex.right_is_shock()) {
        const double pos = shock_pos(AR, +1.0);
        if (std::abs(pos - (c.xm + ex.right_shock_speed() * s.t)) > 2.0 * mesh.dx)
          ok = false;
      }
      if (ex.left_is_shock()) {
        const double pos = shock_pos(AL, -1.0);
        if (std::abs(pos - (c.xm + ex.left_shock_speed() * s.t)) > 2.0 * mesh.dx)
          ok = false;
      }
      if (N == 50) {
        if (worst_dist > 5.0) ok = false;  // activations hug the discontinuities
        if (!q_extrema_ok) ok = false;
      }
    }
  }
  return ok;
}

bool criterion7() {
  const double t_start = now_seconds();
  bool ok = true;
  auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };
  for (int r : {2, 3, 4}) {
    const BasisTables& bt = BasisTables::get(r);
    double wsum = 0.0;
    for (int k = 0; k < bt.npts; ++k) wsum += bt.weight[k];
    if (!near(wsum, 1.0, 1e-15)) ok = false;
    if (bt.node[0] != -0.5 || bt.node[bt.npts - 1] != 0.5) ok = false;
    // duality of every shape function against every DoF functional
    for (int d = 0; d < bt.ndofs; ++d) {
      if (bt.B[d][0] != (d == 0 ? 1.0 : 0.0)) ok = false;
      if (bt.B[d][bt.npts - 1] != (d == 1 ? 1.0 : 0.0)) ok = false;
      for (int l = 0; l < bt.nmom; ++l) {
        double s = 0.0;
        for (int k = 0; k < bt.npts; ++k)
          s += bt.weight[k] * bt.B[d][k] * std::pow(bt.node[k], l);
        s *= (l + 1) * std::pow(2.0, l);
        if (!near(s, d == 2 + l ? 1.0 : 0.0, 1e-13)) ok = false;
      }
    }
    // quadrature exactness on monomials up to degree 2r-1:
    // integral over [-1/2,1/2] of xi^p is 0 (odd) or 2^{-p}/(p+1) (even)
    for (int pdeg = 0; pdeg <= 2 * r - 1; ++pdeg) {
      double s = 0.0;
      for (int k = 0; k < bt.npts; ++k) s += bt.weight[k] * std::pow(bt.node[k], pdeg);
      const double exact = pdeg % 2 ? 0.0 : std::pow(0.5, pdeg) / (pdeg + 1);
      if (!near(s, exact, 1e-14)) ok = false;
    }
    // interpolation reproduces degree-r polynomials
    double f[kMaxNodes], dofs[kMaxDofs];
    for (int k = 0; k < bt.npts; ++k) f[k] = std::pow(bt.node[k] + 0.3, r);
    project_samples_to_dofs(bt, f, dofs);
    for (double xi : {-0.41, 0.11, 0.37})
      if (!near(interpolate_dofs(bt, dofs, xi), std::pow(xi + 0.3, r), 1e-12)) ok = false;
    // one-sided stencil differentiates degree-r data exactly at the face
    double d = 0.0, sum = 0.0;
    for (int k = 0; k < bt.npts; ++k) {
      d += bt.dplus[k] * std::pow(bt.node[k], r);
      sum += bt.dplus[k];
    }
    if (sum != 0.0) ok = false;
    if (!near(d, r * std::pow(0.5, r - 1), 1e-12)) ok = false;
  }
  if (now_seconds() - t_start > 30.0) ok = false;
  return ok;
}

bool criterion8(const ConvData data[3]) {
  // Mesh size reaching an L1 error of 1e-6 in A, by log-log extrapolation of
  // the two finest convergence rows; total work counted as cell updates with
  // steps growing as the measured step counts extrapolated the same way.
  double updates[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const ConvData& d = data[i];
    if (d.N.size() < 2) return false;
    const size_t k = d.N.size() - 1;
    const double pN = std::log(d.l1A[k] / d.l1A[k - 1]) / std::log(double(d.N[k]) / d.N[k - 1]);
    const double Nstar = d.N[k] * std::pow(1e-6 / d.l1A[k], 1.0 / pN);
    const double pS = std::log(double(d.steps[k]) / d.steps[k - 1]) /
                      std::log(double(d.N[k]) / d.N[k - 1]);
    const double Sstar = d.steps[k] * std::pow(Nstar / d.N[k], pS);
    updates[i] = Nstar * Sstar;
  }
  return updates[2] < updates[0];
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* what, bool ok) {
    std::printf("criterion %d (%s): %s\n", id, what, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    if (!ok) ++failures;
  };

  ConvData conv[3];
  report(1, "high-order spatial convergence within budget", criterion1(conv));
  report(2, "steady preservation and the balanced/unbalanced contrast", criterion2());
  report(3, "semi-discrete silence on steady data", criterion3());
  report(4, "exact conservation with flat parameters", criterion4());
  report(5, "small-perturbation transport on coarse meshes", criterion5());
  report(6, "Riemann problems: accuracy, shocks, and limiter locality", criterion6());
  report(7, "basis and quadrature property suite within budget", criterion7());
  report(8, "higher order reaches the target error cheaper", criterion8(conv));

  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
