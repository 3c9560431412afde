#include "bloodflow/point_update.hpp"

#include <algorithm>

#include "bloodflow/wb_moments.hpp"

namespace bloodflow {

SignSplitJacobian jacobian_sign(const Model& md, const PrimState& v, double K, double A0) {
  const double c = md.sound_speed(v.A, K, A0);
  const double s = v.A / c;
  auto gate = [](double lam) { return lam > 0.0 ? 1.0 : (lam < 0.0 ? 0.0 : 0.5); };
  const double d1 = gate(v.u - c);
  const double d2 = gate(v.u + c);
  SignSplitJacobian J;
  J.plus[0][0] = 0.5 * (d1 + d2);
  J.plus[0][1] = 0.5 * s * (d2 - d1);
  J.plus[1][0] = 0.5 * (d2 - d1) / s;
  J.plus[1][1] = 0.5 * (d1 + d2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) J.minus[a][b] = (a == b ? 1.0 : 0.0) - J.plus[a][b];
  return J;
}

// Point values (A, u) evolve through the flux pair (Q, E): W_t + (Q, E)_x = 0
// in smooth regions, including parameter gradients (they enter through E).
// Each side's one-sided derivative of (Q, E) is filtered by the matching
// characteristic projector. Subtracting the interface value before applying
// the stencil makes a discretely steady state (constant Q, E on each side)
// yield an exactly zero derivative.
void SpatialScheme::point_rhs_all(const SolutionState& s, const DegreeMap& deg,
                                  RhsVector* rhs) const {
  const int n = s.n;
  const bool per = mesh_.bc == BoundaryMode::periodic;
  const double inv_dx = 1.0 / mesh_.dx;
  const int ilast = per ? n - 1 : n;

  for (int i = 0; i <= ilast; ++i) {
    const int jl = per ? (i + n - 1) % n : i - 1;
    const int jr = per ? i : (i < n ? i : -1);
    const bool has_l = jl >= 0;
    const bool has_r = jr >= 0;

    int dmin = degree_;
    if (has_l) dmin = std::min(dmin, deg[jl]);
    if (has_r) dmin = std::min(dmin, deg[jr]);

    const SignSplitJacobian J = jacobian_sign(model_, {s.ptA[i], s.ptU[i]},
                                              params_->ptK[i], params_->ptA0[i]);
    const EquilibriumVars ref = interface_equilibrium(s, i);

    double dpQ = 0.0, dpE = 0.0, dmQ = 0.0, dmE = 0.0;
    if (dmin == 0) {
      // Fallback: first-order upwind differences of the neighboring
      // interface values.
      if (has_l) {
        const EquilibriumVars vl = interface_equilibrium(s, per ? (i + n - 1) % n : i - 1);
        dpQ = (ref.Q - vl.Q) * inv_dx;
        dpE = (ref.E - vl.E) * inv_dx;
      }
      if (has_r) {
        const EquilibriumVars vr = interface_equilibrium(s, per ? (i + 1) % n : i + 1);
        dmQ = (vr.Q - ref.Q) * inv_dx;
        dmE = (vr.E - ref.E) * inv_dx;
      }
    } else {
      const BasisTables& bt = BasisTables::get(dmin);
      double bufQ[kMaxNodes], bufE[kMaxNodes];
      if (has_l) {
        const double *q = scratch_[jl].Eq, *e = scratch_[jl].Ee;
        if (deg[jl] != dmin) {
          resample_E(s, jl, deg[jl], dmin, bufQ, bufE);
          q = bufQ;
          e = bufE;
        }
        for (int k = 0; k < bt.npts; ++k) {
          dpQ += bt.dplus[k] * (q[k] - ref.Q);
          dpE += bt.dplus[k] * (e[k] - ref.E);
        }
        dpQ *= inv_dx;
        dpE *= inv_dx;
      }
      if (has_r) {
        const double *q = scratch_[jr].Eq, *e = scratch_[jr].Ee;
        if (deg[jr] != dmin) {
          resample_E(s, jr, deg[jr], dmin, bufQ, bufE);
          q = bufQ;
          e = bufE;
        }
        for (int k = 0; k < bt.npts; ++k) {
          dmQ += bt.dminus[k] * (q[k] - ref.Q);
          dmE += bt.dminus[k] * (e[k] - ref.E);
        }
        dmQ *= inv_dx;
        dmE *= inv_dx;
      }
    }

    double p0, p1, m0, m1;
    apply2(J.plus, dpQ, dpE, &p0, &p1);
    apply2(J.minus, dmQ, dmE, &m0, &m1);
    rhs->ptA[i] = -(p0 + m0);
    rhs->ptU[i] = -(p1 + m1);
  }
  if (per) {
    rhs->ptA[n] = rhs->ptA[0];
    rhs->ptU[n] = rhs->ptU[0];
  }
}

}  // namespace bloodflow
