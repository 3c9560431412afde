#include "bloodflow/reference_solutions.hpp"

#include <cmath>
#include <stdexcept>

#include "bloodflow/wb_moments.hpp"

namespace bloodflow {

ScalarField steady_profile(const Model& md, double Q, double E, ScalarField K,
                           ScalarField A0, ScalarField pe) {
  Model m = md;
  return [m, Q, E, K = std::move(K), A0 = std::move(A0), pe = std::move(pe)](double x) {
    const double Kv = K(x), A0v = A0(x), pev = pe(x);
    const double Astar = critical_area(m, Q, Kv, A0v);
    const double seed = std::max(A0v, 1.5 * Astar);
    bool ok = true;
    double a = solve_reference_area(m, Q, E, Kv, A0v, pev, seed, &ok);
    if (!ok) throw std::runtime_error("no subcritical steady state at queried point");
    // Polish to machine stagnation.
    for (int it = 0; it < 60; ++it) {
      const double f = digamma(m, a, Q, E, Kv, A0v, pev);
      const double d = digamma_prime(m, a, Q, Kv, A0v);
      double next = a - f / d;
      if (next <= Astar) next = 0.5 * (a + Astar);
      if (!(next > 0.0) || next == a) break;
      a = next;
    }
    return a;
  };
}

double ExactRiemannArtery::psi(double A) const {
  return K_ / (3.0 * md_.rho()) * A * std::sqrt(A) / std::sqrt(A0_);
}

double ExactRiemannArtery::wave_fn(double A, double A_side, double* deriv) const {
  if (A <= A_side) {
    // Rarefaction: Riemann invariant u -+ 4c.
    if (deriv) *deriv = csound(A) / A;  // d(4c)/dA = c/A for c ~ A^{1/4}
    return 4.0 * (csound(A) - csound(A_side));
  }
  const double dpsi = psi(A) - psi(A_side);
  const double dA = A - A_side;
  const double val = std::sqrt(dpsi * dA / (A * A_side));
  if (deriv) {
    const double dpsi_dA = K_ / (2.0 * md_.rho()) * std::sqrt(A / A0_);
    const double g = dpsi * dA / (A * A_side);
    const double dg = (dpsi_dA * dA + dpsi) / (A * A_side) - g / A;
    *deriv = 0.5 * dg / val;
  }
  return val;
}

ExactRiemannArtery::ExactRiemannArtery(const Model& md, double K, double A0,
                                       const RiemannStates& st)
    : md_(md), K_(K), A0_(A0), st_(st) {
  if (!(md.m() == 0.5 && md.n() == 0.0))
    throw std::invalid_argument("exact solver covers the artery law only");
  gamma_ = std::sqrt(K / (2.0 * md.rho())) / std::sqrt(std::sqrt(A0));

  // Monotone scalar equation for the middle area:
  //   wave_fn(A; AL) + wave_fn(A; AR) + uR - uL = 0.
  auto F = [&](double A, double* d) {
    double d1 = 0.0, d2 = 0.0;
    const double v = wave_fn(A, st.AL, d ? &d1 : nullptr) +
                     wave_fn(A, st.AR, d ? &d2 : nullptr) + st.uR - st.uL;
    if (d) *d = d1 + d2;
    return v;
  };

  double lo = 1e-12 * std::min(st.AL, st.AR);
  double hi = std::max(st.AL, st.AR);
  while (F(hi, nullptr) < 0.0) hi *= 2.0;
  if (F(lo, nullptr) > 0.0) throw std::runtime_error("vacuum-adjacent Riemann data");
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double d;
    const double f = F(a, &d);
    if (f > 0.0)
      hi = a;
    else
      lo = a;
    double next = a - f / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == a || hi - lo <= 1e-16 * hi) break;
    a = next;
  }
  Am_ = a;
  um_ = st.uL - wave_fn(a, st.AL, nullptr);
}

double ExactRiemannArtery::left_shock_speed() const {
  return (Am_ * um_ - st_.AL * st_.uL) / (Am_ - st_.AL);
}

double ExactRiemannArtery::right_shock_speed() const {
  return (Am_ * um_ - st_.AR * st_.uR) / (Am_ - st_.AR);
}

PrimState ExactRiemannArtery::sample(double xi) const {
  const double cL = csound(st_.AL), cR = csound(st_.AR), cm = csound(Am_);
  // Left wave.
  if (left_is_shock()) {
    if (xi < left_shock_speed()) return {st_.AL, st_.uL};
  } else {
    if (xi < st_.uL - cL) return {st_.AL, st_.uL};
    if (xi < um_ - cm) {
      const double c = (st_.uL + 4.0 * cL - xi) / 5.0;
      const double c2 = c * c;
      return {c2 * c2 / (gamma_ * gamma_ * gamma_ * gamma_), xi + c};
    }
  }
  // Right wave.
  if (right_is_shock()) {
    if (xi > right_shock_speed()) return {st_.AR, st_.uR};
  } else {
    if (xi > st_.uR + cR) return {st_.AR, st_.uR};
    if (xi > um_ + cm) {
      const double c = (xi - (st_.uR - 4.0 * cR)) / 5.0;
      const double c2 = c * c;
      return {c2 * c2 / (gamma_ * gamma_ * gamma_ * gamma_), xi - c};
    }
  }
  return {Am_, um_};
}

}  // namespace bloodflow
