#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bloodflow/model.hpp"

using namespace bloodflow;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Central-difference helper for the derivative identities.
template <class F>
double fd(F f, double a, double h = 1e-6) {
  return (f(a + h) - f(a - h)) / (2.0 * h);
}
}  // namespace

TEST_CASE("constructor validation") {
  CHECK_THROWS(Model(-1.0, 0.5, 0.0));
  CHECK_THROWS(Model(1060.0, 0.0, 0.0));
  CHECK_THROWS(Model(1060.0, 0.5, 0.5));   // n must be <= 0
  CHECK_THROWS(Model(1060.0, 0.5, -2.0));  // n must be > -2
  CHECK_NOTHROW(Model(1060.0, 0.7, -0.5));
}

TEST_CASE("artery law closed forms") {
  const Model md = Model::artery(1060.0);
  CHECK(md.m() == 0.5);
  CHECK(md.n() == 0.0);
  CHECK(md.phi(4.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(md.phi(1.0) == 0.0);
  CHECK(md.phi_prime(4.0) == doctest::Approx(0.25).epsilon(1e-15));
  // Phi(a) = (2/3) a^{3/2} - a, PhiTilde(a) = a^{3/2}/3
  CHECK(md.big_phi(4.0) == doctest::Approx(16.0 / 3.0 - 4.0).epsilon(1e-15));
  CHECK(md.big_phi_tilde(4.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("vein law values") {
  const Model md = Model::vein(1050.0);
  const double a = 1.3;
  CHECK(md.phi(a) == doctest::Approx(13.111189170048439).epsilon(1e-14));
  CHECK(md.phi_prime(a) == doctest::Approx(106.82344759329026).epsilon(1e-14));
  CHECK(md.big_phi(a) == doctest::Approx(3.3833527604658766).epsilon(1e-14));
  CHECK(md.big_phi_tilde(a) == doctest::Approx(13.661193160597094).epsilon(1e-14));
}

TEST_CASE("general exponent pair values") {
  const Model md(1000.0, 0.7, -0.5);
  const double a = 0.9;
  CHECK(md.phi(a) == doctest::Approx(-0.12519085570408875).epsilon(1e-14));
  CHECK(md.phi_prime(a) == doctest::Approx(1.3080860723049885).epsilon(1e-14));
  CHECK(md.big_phi(a) == doctest::Approx(-1.4055951090911253).epsilon(1e-14));
  CHECK(md.big_phi_tilde(a) == doctest::Approx(1.2929233389574454).epsilon(1e-14));
}

TEST_CASE("derivative identities Phi' = phi and PhiTilde' = a phi'") {
  for (const Model& md :
       {Model::artery(1060.0), Model::vein(1050.0), Model(1000.0, 0.7, -0.5)}) {
    for (double a : {0.8, 1.0, 1.4}) {
      CHECK(fd([&](double x) { return md.big_phi(x); }, a) ==
            doctest::Approx(md.phi(a)).epsilon(1e-8));
      CHECK(fd([&](double x) { return md.big_phi_tilde(x); }, a) ==
            doctest::Approx(a * md.phi_prime(a)).epsilon(1e-8));
    }
  }
}

TEST_CASE("flux and source assemble the model formulas") {
  const Model md = Model::artery(1060.0);
  const double A = 1.2e-4, Q = 3e-5, K = 1e8, A0 = 1e-4;
  const Flux2 f = md.flux(A, Q, K, A0);
  CHECK(f.fA == Q);
  CHECK(f.fQ ==
        doctest::Approx(Q * Q / A + K * A0 / 1060.0 * md.big_phi_tilde(A / A0))
            .epsilon(1e-15));
  const double dK = 2.0, dA0 = 3e-4, dpe = 5.0;
  const double a = A / A0;
  CHECK(md.source_q(A, K, A0, dK, dA0, dpe) ==
        doctest::Approx(-(A0 / 1060.0) * md.big_phi(a) * dK +
                        (K / 1060.0) * md.big_phi_tilde(a) * dA0 - (A / 1060.0) * dpe)
            .epsilon(1e-15));
}

TEST_CASE("artery sound speed closed form") {
  const Model md = Model::artery(1060.0);
  const double A0 = kPi * 16e-6, K = 1e8;
  // c = sqrt(K/(2 rho)) (A/A0)^{1/4}
  CHECK(md.sound_speed(1.2 * A0, K, A0) ==
        doctest::Approx(227.31462642619331).epsilon(1e-14));
  CHECK_THROWS(md.sound_speed(0.0, K, A0));
}

TEST_CASE("eigenvalues, Shapiro number, equilibrium variables") {
  const Model md = Model::artery(1060.0);
  const double A = 1.1e-4, u = 0.4, K = 1e8, A0 = 1e-4, pe = 500.0;
  const double c = md.sound_speed(A, K, A0);
  double l1, l2;
  md.eigenvalues(A, u, K, A0, &l1, &l2);
  CHECK(l1 == doctest::Approx(u - c).epsilon(1e-15));
  CHECK(l2 == doctest::Approx(u + c).epsilon(1e-15));
  CHECK(md.max_abs_eigenvalue(A, u, K, A0) == doctest::Approx(u + c).epsilon(1e-15));
  CHECK(md.shapiro(A, u, K, A0) == doctest::Approx(u / c).epsilon(1e-15));
  const EquilibriumVars v = md.equilibrium_vars({A, u}, K, A0, pe);
  CHECK(v.Q == A * u);
  CHECK(v.E ==
        doctest::Approx(0.5 * u * u + (K * md.phi(A / A0) + pe) / 1060.0).epsilon(1e-15));
}

TEST_CASE("cons/prim round trip") {
  const ConsState u{1.5e-4, 6e-5};
  const PrimState v = Model::cons_to_prim(u);
  CHECK(v.u == doctest::Approx(0.4).epsilon(1e-15));
  const ConsState back = Model::prim_to_cons(v);
  CHECK(back.A == u.A);
  CHECK(back.Q == doctest::Approx(u.Q).epsilon(1e-15));
}
