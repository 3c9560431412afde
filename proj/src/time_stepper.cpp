#include "bloodflow/time_stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bloodflow {

double default_cfl(int degree) {
  switch (degree) {
    case 2:
      return 0.4;
    case 3:
      return 0.2;
    case 4:
      return 0.1;
    default:
      throw std::invalid_argument("unsupported degree");
  }
}

TimeStepper::TimeStepper(const SpatialScheme& scheme, double cfl)
    : scheme_(&scheme), mood_(scheme), cfl_(cfl > 0.0 ? cfl : default_cfl(scheme.degree())) {}

double TimeStepper::compute_dt(const SolutionState& s) const {
  const double lam = scheme_->max_wave_speed(s);
  if (!(lam > 0.0)) throw std::runtime_error("nonpositive maximal wave speed");
  return cfl_ * scheme_->mesh().dx / lam;
}

void TimeStepper::add_scaled(const SolutionState& base, const RhsVector* r1, double a1,
                             const RhsVector* r2, double a2, const RhsVector* r3,
                             double a3, SolutionState* out) {
  *out = base;
  auto axpy = [](std::vector<double>& y, const std::vector<double>& x, double a) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  };
  const RhsVector* rs[3] = {r1, r2, r3};
  const double as[3] = {a1, a2, a3};
  for (int i = 0; i < 3; ++i) {
    if (!rs[i]) continue;
    axpy(out->momA, rs[i]->momA, as[i]);
    axpy(out->momQ, rs[i]->momQ, as[i]);
    axpy(out->ptA, rs[i]->ptA, as[i]);
    axpy(out->ptU, rs[i]->ptU, as[i]);
  }
}

void TimeStepper::step(SolutionState* s, double dt_request, StepInfo* info) {
  const int n = s->n;
  const int full = scheme_->degree();
  DegreeMap deg(n, full);
  mood_.prepare(*s);

  double dt = dt_request;
  int redos = 0;
  int halvings = 0;
  SolutionState u1, u2, cand;
  RhsVector L0, L1, L2;
  std::vector<int> trb, pos_bad, dmp_bad;

  for (;;) {
    bool stage_fail = false;
    // Stage positivity failure demotes to first order; if already there the
    // step size is halved.
    auto handle_stage_failure = [&]() {
      bool need_halve = false;
      for (int j : trb) {
        if (deg[j] == 0)
          need_halve = true;
        else
          deg[j] = 0;
      }
      if (need_halve) {
        dt *= 0.5;
        if (++halvings > 40) throw std::runtime_error("time step collapsed to zero");
      }
      stage_fail = true;
    };

    if (!scheme_->compute_rhs(*s, deg, &L0, &trb)) {
      handle_stage_failure();
    } else {
      add_scaled(*s, &L0, dt, nullptr, 0.0, nullptr, 0.0, &u1);
      u1.t = s->t + dt;
      if (!scheme_->compute_rhs(u1, deg, &L1, &trb)) {
        handle_stage_failure();
      } else {
        add_scaled(*s, &L0, 0.25 * dt, &L1, 0.25 * dt, nullptr, 0.0, &u2);
        u2.t = s->t + 0.5 * dt;
        if (!scheme_->compute_rhs(u2, deg, &L2, &trb)) {
          handle_stage_failure();
        } else {
          add_scaled(*s, &L0, dt / 6.0, &L1, dt / 6.0, &L2, 2.0 * dt / 3.0, &cand);
          cand.t = s->t + dt;
        }
      }
    }
    if (stage_fail) continue;

    if (mood_.inspect(cand, deg, &pos_bad, &dmp_bad) || redos >= 3) break;
    ++redos;
    bool need_halve = false;
    for (int j : pos_bad) {
      if (deg[j] == 0)
        need_halve = true;
      else
        deg[j] = 0;
    }
    for (int j : dmp_bad) deg[j] = MoodLimiter::demote(deg[j]);
    if (need_halve) {
      dt *= 0.5;
      if (++halvings > 40) throw std::runtime_error("time step collapsed to zero");
    }
  }

  mood_.reproject_reduced(&cand, deg);
  *s = std::move(cand);

  info->dt_taken = dt;
  info->redos = redos;
  info->n_reduced = 0;
  info->reduced_cells.clear();
  int dmin = full;
  for (int j = 0; j < n; ++j) {
    if (deg[j] < full) {
      ++info->n_reduced;
      info->reduced_cells.push_back(j);
    }
    dmin = std::min(dmin, deg[j]);
  }
  info->min_order = dmin == 0 ? 1 : dmin + 1;
}

RunStats TimeStepper::advance_to(SolutionState* s, double t_end, const std::string& log_path) {
  RunStats stats;
  std::FILE* log = nullptr;
  if (!log_path.empty()) {
    log = std::fopen(log_path.c_str(), "w");
    if (!log) throw std::runtime_error("cannot open " + log_path);
    std::fprintf(log, "step,t,n_troubled,min_order\n");
  }
  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
  StepInfo info;
  while (s->t < t_end - eps) {
    double dt = std::min(compute_dt(*s), t_end - s->t);
    const double t_before = s->t;
    step(s, dt, &info);
    if (s->t == t_before) {
      if (log) std::fclose(log);
      throw std::runtime_error("time step underflow: the solution has diverged");
    }
    ++stats.steps;
    stats.fallback_cells += info.n_reduced;
    if (log)
      std::fprintf(log, "%ld,%.17g,%d,%d\n", stats.steps, s->t, info.n_reduced,
                   info.min_order);
    if (stats.steps > 20000000) {
      if (log) std::fclose(log);
      throw std::runtime_error("step budget exhausted");
    }
  }
  if (log) std::fclose(log);
  return stats;
}

}  // namespace bloodflow
