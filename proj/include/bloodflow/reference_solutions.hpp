#pragma once

#include "bloodflow/mesh_state.hpp"
#include "bloodflow/model.hpp"

namespace bloodflow {

// Pointwise subcritical solution A(x) of
//   Q^2/(2 A^2) + (K(x) phi(A/A0(x)) + pext(x))/rho = E,
// refined by Newton iteration until the update stagnates at machine
// resolution. Throws when no subcritical root exists at some queried x.
ScalarField steady_profile(const Model& md, double Q, double E, ScalarField K,
                           ScalarField A0, ScalarField pe);

struct RiemannStates {
  double AL, uL, AR, uR;
};

// Exact solution of the Riemann problem for the artery law (m = 1/2, n = 0)
// with constant K and A0: two waves, each a shock or rarefaction, joined by a
// constant middle state. sample() takes the similarity variable xi = x/t.
class ExactRiemannArtery {
 public:
  ExactRiemannArtery(const Model& md, double K, double A0, const RiemannStates& st);

  double A_middle() const { return Am_; }
  double u_middle() const { return um_; }
  bool left_is_shock() const { return Am_ > st_.AL; }
  bool right_is_shock() const { return Am_ > st_.AR; }
  // Wave speeds: shock speed, or the (head, tail) pair of a rarefaction fan.
  double left_shock_speed() const;
  double right_shock_speed() const;

  PrimState sample(double xi) const;

 private:
  double csound(double A) const { return gamma_ * std::sqrt(std::sqrt(A)); }
  double psi(double A) const;
  // Velocity drop across the wave connecting A_side to A (shock for
  // A > A_side, rarefaction below), and its A-derivative.
  double wave_fn(double A, double A_side, double* deriv) const;

  Model md_;
  double K_, A0_, gamma_;
  RiemannStates st_;
  double Am_ = 0.0, um_ = 0.0;
};

}  // namespace bloodflow
