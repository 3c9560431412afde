#pragma once

#include <cmath>
#include <stdexcept>

// 1-D blood flow model:
//   A_t + Q_x = 0
//   Q_t + (Q^2/A + (K*A0/rho) * PhiTilde(A/A0))_x = s2
//   s2 = -(A0/rho)*Phi(A/A0)*K_x + (K/rho)*PhiTilde(A/A0)*(A0)_x - (A/rho)*pext_x
// with the tube law p = K*phi(A/A0) + pext, phi(a) = a^m - a^n.

namespace bloodflow {

struct ConsState {
  double A;  // cross-sectional area [m^2]
  double Q;  // flow [m^3/s]
};

struct PrimState {
  double A;  // cross-sectional area [m^2]
  double u;  // averaged velocity [m/s]
};

struct EquilibriumVars {
  double Q;  // flow [m^3/s]
  double E;  // energy-like variable [m^2/s^2]
};

struct Flux2 {
  double fA;
  double fQ;
};

// Tube-law exponents and fluid density. The two physically used exponent
// pairs (artery m=1/2,n=0 and vein m=10,n=-3/2) get closed-form power
// evaluations; anything else falls back to std::pow.
class Model {
 public:
  Model(double rho, double m, double n) : rho_(rho), m_(m), n_(n) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    if (!(m > 0.0)) throw std::invalid_argument("m must be positive");
    if (!(n > -2.0 && n <= 0.0)) throw std::invalid_argument("n must lie in (-2, 0]");
    if (m == 0.5 && n == 0.0)
      kind_ = Kind::artery;
    else if (m == 10.0 && n == -1.5)
      kind_ = Kind::vein;
    else
      kind_ = Kind::general;
  }

  static Model artery(double rho) { return Model(rho, 0.5, 0.0); }
  static Model vein(double rho) { return Model(rho, 10.0, -1.5); }

  double rho() const { return rho_; }
  double m() const { return m_; }
  double n() const { return n_; }

  // phi(a) = a^m - a^n  (a^0 := 1 so that phi is continuous down to a = 0
  // for the artery law).
  double phi(double a) const {
    switch (kind_) {
      case Kind::artery:
        return std::sqrt(a) - 1.0;
      case Kind::vein:
        return pow10(a) - 1.0 / (a * std::sqrt(a));
      default:
        return powg(a, m_) - powg(a, n_);
    }
  }

  // phi'(a) = m a^{m-1} - n a^{n-1}
  double phi_prime(double a) const {
    switch (kind_) {
      case Kind::artery:
        return 0.5 / std::sqrt(a);
      case Kind::vein: {
        const double a2 = a * a;
        const double a4 = a2 * a2;
        return 10.0 * a4 * a4 * a + 1.5 / (a2 * std::sqrt(a));
      }
      default:
        return m_ * powg(a, m_ - 1.0) - n_ * powg(a, n_ - 1.0);
    }
  }

  // Phi(a) = a^{m+1}/(m+1) - a^{n+1}/(n+1)
  double big_phi(double a) const {
    switch (kind_) {
      case Kind::artery:
        return (2.0 / 3.0) * a * std::sqrt(a) - a;
      case Kind::vein:
        return pow10(a) * a / 11.0 + 2.0 / std::sqrt(a);
      default:
        return powg(a, m_ + 1.0) / (m_ + 1.0) - powg(a, n_ + 1.0) / (n_ + 1.0);
    }
  }

  // PhiTilde(a) = m a^{m+1}/(m+1) - n a^{n+1}/(n+1)
  double big_phi_tilde(double a) const {
    switch (kind_) {
      case Kind::artery:
        return (1.0 / 3.0) * a * std::sqrt(a);
      case Kind::vein:
        return 10.0 * pow10(a) * a / 11.0 - 3.0 / std::sqrt(a);
      default:
        return m_ * powg(a, m_ + 1.0) / (m_ + 1.0) - n_ * powg(a, n_ + 1.0) / (n_ + 1.0);
    }
  }

  Flux2 flux(double A, double Q, double K, double A0) const {
    return {Q, Q * Q / A + K * A0 / rho_ * big_phi_tilde(A / A0)};
  }

  // Momentum source density; the mass component is always zero.
  double source_q(double A, double K, double A0, double dK, double dA0, double dpe) const {
    const double a = A / A0;
    return -(A0 / rho_) * big_phi(a) * dK + (K / rho_) * big_phi_tilde(a) * dA0 -
           (A / rho_) * dpe;
  }

  double equilibrium_E(double A, double u, double K, double A0, double pe) const {
    return 0.5 * u * u + (K * phi(A / A0) + pe) / rho_;
  }

  EquilibriumVars equilibrium_vars(const PrimState& v, double K, double A0, double pe) const {
    return {v.A * v.u, equilibrium_E(v.A, v.u, K, A0, pe)};
  }

  // c = sqrt((K/rho) * (A/A0) * phi'(A/A0)); artery: sqrt(K/(2 rho)) (A/A0)^{1/4}.
  double sound_speed(double A, double K, double A0) const {
    const double a = A / A0;
    const double c2 = (K / rho_) * a * phi_prime(a);
    if (!(c2 > 0.0)) throw std::domain_error("nonpositive wave speed radicand");
    return std::sqrt(c2);
  }

  void eigenvalues(double A, double u, double K, double A0, double* lam1, double* lam2) const {
    const double c = sound_speed(A, K, A0);
    *lam1 = u - c;
    *lam2 = u + c;
  }

  double max_abs_eigenvalue(double A, double u, double K, double A0) const {
    return std::abs(u) + sound_speed(A, K, A0);
  }

  double shapiro(double A, double u, double K, double A0) const {
    return std::abs(u) / sound_speed(A, K, A0);
  }

  static PrimState cons_to_prim(const ConsState& u) { return {u.A, u.Q / u.A}; }
  static ConsState prim_to_cons(const PrimState& v) { return {v.A, v.A * v.u}; }

 private:
  enum class Kind { artery, vein, general };

  static double pow10(double a) {
    const double a2 = a * a;
    const double a4 = a2 * a2;
    const double a5 = a4 * a;
    return a5 * a5;
  }
  static double powg(double a, double p) {
    if (p == 0.0) return 1.0;  // a^0 := 1 including a = 0
    return std::pow(a, p);
  }

  double rho_, m_, n_;
  Kind kind_;
};

}  // namespace bloodflow
