#pragma once

#include <array>
#include <cstddef>

// Polynomial machinery on the reference cell xi in [-1/2, 1/2] for degrees
// r = 2, 3, 4 (scheme orders 3, 4, 5):
//  - shape functions B_{-1/2}, B_{1/2}, B_0..B_{r-2} dual to the DoF
//    functionals (face values + scaled moments),
//  - Gauss-Lobatto nodes/weights (weights normalized to sum to 1),
//  - nodal Lagrange bases on the Gauss-Lobatto nodes,
//  - one-sided derivative stencils at the right face.
//
// DoF ordering used throughout: [left face, right face, moment 0, ..., moment r-2].

namespace bloodflow {

inline constexpr int kMaxDegree = 4;
inline constexpr int kMaxNodes = kMaxDegree + 1;
inline constexpr int kMaxDofs = kMaxDegree + 1;

// C_l = (l+1) 2^l / dx^{l+1}; moment l of f is C_l * integral of f * (x-xc)^l.
double normalization_constant(int l, double dx);

struct BasisTables {
  int r = 0;          // polynomial degree
  int npts = 0;       // r + 1 Gauss-Lobatto nodes
  int ndofs = 0;      // r + 1 DoFs per cell
  int nmom = 0;       // r - 1 moments

  std::array<double, kMaxNodes> node{};    // ascending, node[0] = -1/2, node[npts-1] = 1/2
  std::array<double, kMaxNodes> weight{};  // positive, sums to exactly 1

  // Shape function values/derivatives at the nodes. B[d][k] is DoF d's shape
  // function at node k; endpoint columns are exact 0/1 so interpolation at a
  // face returns the face DoF bitwise.
  std::array<std::array<double, kMaxNodes>, kMaxDofs> B{};
  std::array<std::array<double, kMaxNodes>, kMaxDofs> dB{};   // d/dxi

  // Monomial data: b_l(+-1/2) scaled by C_l collapses to (l+1)(+-1)^l / dx;
  // stored here are the reference pieces (l+1)(+-1)^l.
  std::array<double, kMaxDofs> face_plus{};   // (l+1)
  std::array<double, kMaxDofs> face_minus{};  // (l+1)(-1)^l

  // Quadrature coefficients for the moment update, reference scaled:
  //   flux bulk term:   sum_k fluxcoef[l][k] * f_k / dx
  //   source bulk term: sum_k srccoef[l][k] * s_k
  // fluxcoef[l][k] = (l+1) 2^l l w_k node_k^{l-1}, srccoef[l][k] = (l+1) 2^l w_k node_k^l.
  std::array<std::array<double, kMaxNodes>, kMaxDofs> fluxcoef{};
  std::array<std::array<double, kMaxNodes>, kMaxDofs> srccoef{};

  // Right-face one-sided stencils over the nodes of the adjacent cells,
  // reference scaled (apply as sum_k c_k E_k / dx). dplus acts on the left
  // cell's nodes (ascending), dminus on the right cell's nodes (ascending);
  // dminus is the negated reverse of dplus. Coefficients sum to 0.
  std::array<double, kMaxNodes> dplus{};
  std::array<double, kMaxNodes> dminus{};

  // Evaluate shape function d (DoF ordering above) or its xi-derivative at
  // arbitrary xi; used when a neighbor needs samples at a different order's
  // nodes than this table's.
  double shape(int d, double xi) const;
  double shape_deriv(int d, double xi) const;

  // Nodal Lagrange basis l_k on this table's Gauss-Lobatto nodes.
  double lagrange(int k, double xi) const;

  // Immutable shared table for degree r in {2, 3, 4}.
  static const BasisTables& get(int r);
};

// Interpolate cell DoFs at xi: dofs[0]*B_{-1/2} + dofs[1]*B_{1/2} + sum moments.
double interpolate_dofs(const BasisTables& bt, const double* dofs, double xi);

// Project a function sampled at the Gauss-Lobatto nodes (f[0..r]) plus exact
// face values into DoFs. Faces come straight from f at the endpoints; moments
// use the Gauss-Lobatto quadrature with symmetric-pair summation so odd
// moments of even data vanish exactly.
void project_samples_to_dofs(const BasisTables& bt, const double* f, double* dofs);

}  // namespace bloodflow
