#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "bloodflow/stabilization.hpp"
#include "bloodflow/wb_moments.hpp"

namespace bloodflow {

// Default CFL numbers per polynomial degree (scheme orders 3, 4, 5).
double default_cfl(int degree);

struct StepInfo {
  double dt_taken = 0.0;
  int n_reduced = 0;   // cells finishing below full degree
  int min_order = 0;   // 1 for the fallback, else degree + 1
  int redos = 0;
  std::vector<int> reduced_cells;
};

struct RunStats {
  long steps = 0;
  long fallback_cells = 0;  // cumulative over accepted steps
};

// Three-stage strong-stability-preserving Runge-Kutta advance with
// a-posteriori degree control. Each accepted step starts from full degree;
// cells flagged by the limiter rerun the whole step (at most three reruns)
// at reduced degree. A first-order cell that still loses positivity halves
// the step size.
class TimeStepper {
 public:
  TimeStepper(const SpatialScheme& scheme, double cfl = 0.0);

  double compute_dt(const SolutionState& s) const;

  // One accepted step of size at most dt_request (internal halving may take
  // less). Advances *s and fills info.
  void step(SolutionState* s, double dt_request, StepInfo* info);

  // March to t_end; the final step is clamped. Optional CSV run log
  // (step,t,n_troubled,min_order). Returns cumulative statistics.
  RunStats advance_to(SolutionState* s, double t_end, const std::string& log_path = "");

  double cfl() const { return cfl_; }

 private:
  // Stage combinations in increment form; a zero right-hand side reproduces
  // the input state bitwise.
  static void add_scaled(const SolutionState& base, const RhsVector* r1, double a1,
                         const RhsVector* r2, double a2, const RhsVector* r3, double a3,
                         SolutionState* out);

  const SpatialScheme* scheme_;
  MoodLimiter mood_;
  double cfl_;
};

}  // namespace bloodflow
