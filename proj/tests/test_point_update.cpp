#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bloodflow/point_update.hpp"

using namespace bloodflow;

namespace {

const Model md = Model::artery(1060.0);
const double K = 1e8, A0 = 3.141592653589793 * 16e-6;

void mat_vec(const double m[2][2], const double v[2], double* out) {
  out[0] = m[0][0] * v[0] + m[0][1] * v[1];
  out[1] = m[1][0] * v[0] + m[1][1] * v[1];
}

}  // namespace

TEST_CASE("split matrices sum to the identity") {
  for (double u : {-3.0, -0.2, 0.0, 0.4, 2.5, 400.0}) {
    const SignSplitJacobian J = jacobian_sign(md, {1.3 * A0, u}, K, A0);
    CHECK(J.plus[0][0] + J.minus[0][0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(J.plus[0][1] + J.minus[0][1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(J.plus[1][0] + J.minus[1][0] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(J.plus[1][1] + J.minus[1][1] == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("split matrices are complementary projectors") {
  const SignSplitJacobian J = jacobian_sign(md, {1.1 * A0, 0.7}, K, A0);
  // plus*plus == plus, plus*minus == 0
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double pp = 0.0, pm = 0.0;
      for (int k = 0; k < 2; ++k) {
        pp += J.plus[i][k] * J.plus[k][j];
        pm += J.plus[i][k] * J.minus[k][j];
      }
      CHECK(pp == doctest::Approx(J.plus[i][j]).epsilon(1e-12));
      CHECK(pm == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("characteristic fields are routed by their wave speed") {
  const double A = 1.2 * A0, u = 0.5;  // subcritical: u - c < 0 < u + c
  const double c = md.sound_speed(A, K, A0);
  REQUIRE(u < c);
  const double s = A / c;
  const SignSplitJacobian J = jacobian_sign(md, {A, u}, K, A0);
  const double r1[2] = {-s, 1.0};  // speed u - c
  const double r2[2] = {s, 1.0};   // speed u + c
  double y[2];
  mat_vec(J.minus, r1, y);
  CHECK(y[0] == doctest::Approx(r1[0]).epsilon(1e-12));
  CHECK(y[1] == doctest::Approx(r1[1]).epsilon(1e-12));
  mat_vec(J.plus, r1, y);
  CHECK(std::abs(y[0]) <= s * 1e-12);
  mat_vec(J.plus, r2, y);
  CHECK(y[0] == doctest::Approx(r2[0]).epsilon(1e-12));
  CHECK(y[1] == doctest::Approx(r2[1]).epsilon(1e-12));
}

TEST_CASE("supercritical flow sends everything one way") {
  const double A = A0, c = md.sound_speed(A, K, A0);
  const SignSplitJacobian J = jacobian_sign(md, {A, 2.0 * c}, K, A0);
  CHECK(J.plus[0][0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(J.plus[1][1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(J.minus[0][0] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(J.minus[1][1] == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("a sonic interface splits its field half and half") {
  const double A = A0, c = md.sound_speed(A, K, A0);
  const double s = A / c;
  const SignSplitJacobian J = jacobian_sign(md, {A, c}, K, A0);  // u - c = 0
  const double r1[2] = {-s, 1.0};
  double y[2];
  mat_vec(J.plus, r1, y);
  CHECK(y[0] == doctest::Approx(0.5 * r1[0]).epsilon(1e-12));
  CHECK(y[1] == doctest::Approx(0.5 * r1[1]).epsilon(1e-12));
}

TEST_CASE("apply2") {
  const double m[2][2] = {{1.0, 2.0}, {3.0, 4.0}};
  double y0, y1;
  apply2(m, 5.0, 7.0, &y0, &y1);
  CHECK(y0 == 19.0);
  CHECK(y1 == 43.0);
}
