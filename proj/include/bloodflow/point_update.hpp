#pragma once

#include "bloodflow/model.hpp"

// Jacobian-sign upwinding for the interface point values. The split matrices
// J+ and J- project onto the characteristic fields with positive/negative
// speed; a zero eigenvalue contributes 1/2 to each so that J+ + J- = I holds
// throughout.

namespace bloodflow {

struct SignSplitJacobian {
  double plus[2][2];
  double minus[2][2];
};

// Eigen-decomposition based splitting at a primitive interface state. The
// eigenvector matrix columns are (-s, 1) for u - c and (s, 1) for u + c with
// s = A/c.
SignSplitJacobian jacobian_sign(const Model& md, const PrimState& v, double K, double A0);

inline void apply2(const double m[2][2], double x0, double x1, double* y0, double* y1) {
  *y0 = m[0][0] * x0 + m[0][1] * x1;
  *y1 = m[1][0] * x0 + m[1][1] * x1;
}

}  // namespace bloodflow
