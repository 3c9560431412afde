#include "bloodflow/wb_moments.hpp"

#include <algorithm>
#include <cmath>

namespace bloodflow {

double digamma(const Model& md, double A, double Q, double E, double K, double A0,
               double pe) {
  return 0.5 * Q * Q / (A * A) + (K * md.phi(A / A0) + pe) / md.rho() - E;
}

double digamma_prime(const Model& md, double A, double Q, double K, double A0) {
  return -Q * Q / (A * A * A) + K / (md.rho() * A0) * md.phi_prime(A / A0);
}

namespace {

// g(A) = (K/(rho A0)) A^3 phi'(A/A0), strictly increasing from 0; the
// critical area solves g(A) = Q^2.
double crit_lhs(const Model& md, double A, double K, double A0) {
  return K / (md.rho() * A0) * A * A * A * md.phi_prime(A / A0);
}

}  // namespace

double critical_area(const Model& md, double Q, double K, double A0) {
  if (Q == 0.0) return 0.0;
  const double q2 = Q * Q;
  if (md.m() == 0.5 && md.n() == 0.0)
    return std::pow(2.0 * md.rho() * q2 * std::sqrt(A0) / K, 0.4);
  double hi = A0;
  while (crit_lhs(md, hi, K, A0) < q2) hi *= 2.0;
  double lo = hi * 0.5;
  while (crit_lhs(md, lo, K, A0) > q2) {
    hi = lo;
    lo *= 0.5;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (crit_lhs(md, mid, K, A0) < q2 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double solve_reference_area(const Model& md, double Q, double E, double K, double A0,
                            double pe, double A_seed, bool* ok) {
  *ok = true;
  const double tol = 1e-13 * std::max(1.0, std::abs(E));
  if (std::abs(digamma(md, A_seed, Q, E, K, A0, pe)) <= tol) return A_seed;

  const double Astar = critical_area(md, Q, K, A0);
  // digamma is monotone on each side of its minimum at A*; `upper` picks the
  // branch containing the seed (Q = 0 has only the upper branch).
  const bool upper = A_seed >= Astar;
  int budget = 100;

  double lo, hi;
  if (upper) {
    double f = digamma(md, A_seed, Q, E, K, A0, pe);
    if (f > 0.0) {
      hi = A_seed;
      lo = std::max(Astar, 0.5 * A_seed);
      while (lo > Astar && digamma(md, lo, Q, E, K, A0, pe) > 0.0 && budget-- > 0) {
        hi = lo;
        lo = std::max(Astar, 0.5 * lo);
      }
    } else {
      lo = A_seed;
      hi = 2.0 * A_seed;
      while (digamma(md, hi, Q, E, K, A0, pe) < 0.0 && budget-- > 0) {
        lo = hi;
        hi *= 2.0;
      }
    }
  } else {
    // Lower branch: digamma decreases in A, +inf at 0+.
    double f = digamma(md, A_seed, Q, E, K, A0, pe);
    if (f > 0.0) {
      lo = A_seed;
      hi = Astar;
    } else {
      hi = A_seed;
      lo = 0.5 * A_seed;
      while (digamma(md, lo, Q, E, K, A0, pe) < 0.0 && budget-- > 0) {
        hi = lo;
        lo *= 0.5;
      }
    }
  }
  if (budget <= 0) {
    *ok = false;
    return A_seed;
  }

  double a = std::clamp(A_seed, lo, hi);
  for (int it = 0; it < budget; ++it) {
    const double f = digamma(md, a, Q, E, K, A0, pe);
    if (std::abs(f) <= tol) return a;
    const bool high = upper ? (f > 0.0) : (f < 0.0);
    (high ? hi : lo) = a;
    const double d = digamma_prime(md, a, Q, K, A0);
    double next = a - f / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == a) {
      // Stagnation at machine resolution; accept only if reasonably converged.
      if (std::abs(f) <= 1e-10 * std::max(1.0, std::abs(E))) return a;
      break;
    }
    a = next;
  }
  *ok = false;
  return A_seed;
}

SpatialScheme::SpatialScheme(const Mesh& mesh, const Model& model,
                             const ParameterData& params, int degree, bool well_balanced)
    : mesh_(mesh), model_(model), params_(&params), degree_(degree), wb_(well_balanced) {
  const BasisTables& bt = BasisTables::get(degree);
  const int n = mesh.n;
  centerK_.resize(n);
  centerA0_.resize(n);
  centerPe_.resize(n);
  for (int j = 0; j < n; ++j) {
    if (params.const_pattern[j]) {
      centerK_[j] = params.ptK[j];
      centerA0_[j] = params.ptA0[j];
      centerPe_[j] = params.ptPe[j];
    } else {
      double dofs[kMaxDofs];
      auto interp0 = [&](const std::vector<double>& pt, const std::vector<double>& mom) {
        dofs[0] = pt[j];
        dofs[1] = pt[j + 1];
        for (int l = 0; l < bt.nmom; ++l) dofs[2 + l] = mom[j * params.nmom + l];
        // Clamp to the face bracket: a steep in-cell parameter ramp can make
        // the interpolant overshoot (even below zero), and these center
        // values only set indicator scales and the fallback source.
        return std::clamp(interpolate_dofs(bt, dofs, 0.0), std::min(pt[j], pt[j + 1]),
                          std::max(pt[j], pt[j + 1]));
      };
      centerK_[j] = interp0(params.ptK, params.momK);
      centerA0_[j] = interp0(params.ptA0, params.momA0);
      centerPe_[j] = interp0(params.ptPe, params.momPe);
    }
  }
  scratch_.resize(n);
  iflux_.resize(n + 1);
}

bool SpatialScheme::sample_cell(const SolutionState& s, int j, int deg,
                                CellSamples* out) const {
  const BasisTables& bt = BasisTables::get(deg);
  const int np = bt.npts;
  const int nm = bt.nmom;
  out->np = np;
  out->positive = true;
  out->const_params = params_->const_pattern[j] != 0;

  double dA[kMaxDofs], dQ[kMaxDofs], dK[kMaxDofs], dA0[kMaxDofs], dPe[kMaxDofs];
  dA[0] = s.ptA[j];
  dA[1] = s.ptA[j + 1];
  dQ[0] = s.ptA[j] * s.ptU[j];
  dQ[1] = s.ptA[j + 1] * s.ptU[j + 1];
  dK[0] = params_->ptK[j];
  dK[1] = params_->ptK[j + 1];
  dA0[0] = params_->ptA0[j];
  dA0[1] = params_->ptA0[j + 1];
  dPe[0] = params_->ptPe[j];
  dPe[1] = params_->ptPe[j + 1];
  for (int l = 0; l < nm; ++l) {
    dA[2 + l] = s.mA(j, l);
    dQ[2 + l] = s.mQ(j, l);
    dK[2 + l] = params_->momK[j * params_->nmom + l];
    dA0[2 + l] = params_->momA0[j * params_->nmom + l];
    dPe[2 + l] = params_->momPe[j * params_->nmom + l];
  }

  const double inv_dx = 1.0 / mesh_.dx;
  for (int k = 0; k < np; ++k) {
    double A = 0.0, Q = 0.0;
    for (int d = 0; d < bt.ndofs; ++d) {
      A += dA[d] * bt.B[d][k];
      Q += dQ[d] * bt.B[d][k];
    }
    out->A[k] = A;
    out->Q[k] = Q;
    if (out->const_params) {
      out->K[k] = dK[0];
      out->A0[k] = dA0[0];
      out->pe[k] = dPe[0];
      out->dK[k] = out->dA0[k] = out->dpe[k] = 0.0;
    } else {
      double K = 0.0, A0 = 0.0, pe = 0.0, gK = 0.0, gA0 = 0.0, gpe = 0.0;
      for (int d = 0; d < bt.ndofs; ++d) {
        K += dK[d] * bt.B[d][k];
        A0 += dA0[d] * bt.B[d][k];
        pe += dPe[d] * bt.B[d][k];
        gK += dK[d] * bt.dB[d][k];
        gA0 += dA0[d] * bt.dB[d][k];
        gpe += dPe[d] * bt.dB[d][k];
      }
      out->K[k] = K;
      out->A0[k] = A0;
      out->pe[k] = pe;
      out->dK[k] = gK * inv_dx;
      out->dA0[k] = gA0 * inv_dx;
      out->dpe[k] = gpe * inv_dx;
    }
    if (!(A > 0.0) || !(out->K[k] > 0.0) || !(out->A0[k] > 0.0)) {
      out->positive = false;
      return false;
    }
    out->Eq[k] = Q;
    out->Ee[k] = model_.equilibrium_E(A, Q / A, out->K[k], out->A0[k], out->pe[k]);
  }
  return true;
}

void SpatialScheme::reference_for(const CellSamples& cs, ReferenceSteadyState* ref) const {
  ref->exists = false;
  ref->Q_hat = ref->E_hat = 0.0;
  if (!wb_) return;
  const int np = cs.np;

  // Fast path: data already steady with respect to the first sample's
  // equilibrium pair. This is the outcome the scan below would reach, with
  // A_hat taken verbatim from the samples.
  {
    const double Q1 = cs.Eq[0], E1 = cs.Ee[0];
    const double tol = 1e-13 * std::max(1.0, std::abs(E1));
    bool steady = true;
    for (int k = 0; k < np; ++k) {
      if (std::abs(digamma(model_, cs.A[k], Q1, E1, cs.K[k], cs.A0[k], cs.pe[k])) > tol) {
        steady = false;
        break;
      }
    }
    if (steady) {
      ref->Q_hat = Q1;
      ref->E_hat = E1;
      for (int k = 0; k < np; ++k) ref->A_hat[k] = cs.A[k];
      ref->exists = true;
      return;
    }
  }

  if (cs.const_params) {
    // One digamma per candidate and at most two root solves (one per branch);
    // reusing the root keeps the hat flux identical at both faces, which the
    // conservation identity relies on.
    const double K = cs.K[0], A0 = cs.A0[0], pe = cs.pe[0];
    for (int iota = 0; iota < np; ++iota) {
      const double Qi = cs.Eq[iota], Ei = cs.Ee[iota];
      const double Astar = critical_area(model_, Qi, K, A0);
      // Q = 0: digamma decreases without bound as A -> 0+, so the candidate
      // is always admissible (evaluating at A* = 0 would be 0/0).
      if (Qi != 0.0 && !(digamma(model_, Astar, Qi, Ei, K, A0, pe) <= 0.0)) continue;
      double root[2];
      bool have[2] = {false, false};
      bool ok = true;
      for (int k = 0; k < np && ok; ++k) {
        const int side = cs.A[k] >= Astar ? 1 : 0;
        if (!have[side]) {
          root[side] = solve_reference_area(model_, Qi, Ei, K, A0, pe, cs.A[k], &ok);
          have[side] = true;
        }
        ref->A_hat[k] = root[side];
      }
      if (!ok) return;
      ref->Q_hat = Qi;
      ref->E_hat = Ei;
      ref->exists = true;
      return;
    }
    return;
  }

  for (int iota = 0; iota < np; ++iota) {
    const double Qi = cs.Eq[iota], Ei = cs.Ee[iota];
    bool admissible = true;
    for (int k = 0; k < np; ++k) {
      if (k == iota) continue;
      if (Qi == 0.0) continue;
      const double Astar = critical_area(model_, Qi, cs.K[k], cs.A0[k]);
      if (!(digamma(model_, Astar, Qi, Ei, cs.K[k], cs.A0[k], cs.pe[k]) <= 0.0)) {
        admissible = false;
        break;
      }
    }
    if (!admissible) continue;
    bool ok = true;
    for (int k = 0; k < np && ok; ++k)
      ref->A_hat[k] = solve_reference_area(model_, Qi, Ei, cs.K[k], cs.A0[k], cs.pe[k],
                                           cs.A[k], &ok);
    if (!ok) return;
    ref->Q_hat = Qi;
    ref->E_hat = Ei;
    ref->exists = true;
    return;
  }
}

void SpatialScheme::wb_source(const CellSamples& cs, const ReferenceSteadyState& ref,
                              int l, double* outA, double* outQ) const {
  const BasisTables& bt = BasisTables::get(cs.np - 1);
  const double inv_dx = 1.0 / mesh_.dx;
  Flux2 Fh[kMaxNodes];
  double Sh[kMaxNodes];
  for (int k = 0; k < cs.np; ++k) {
    if (ref.exists) {
      Fh[k] = model_.flux(ref.A_hat[k], ref.Q_hat, cs.K[k], cs.A0[k]);
      Sh[k] = model_.source_q(ref.A_hat[k], cs.K[k], cs.A0[k], cs.dK[k], cs.dA0[k],
                              cs.dpe[k]);
    } else {
      Fh[k] = {0.0, 0.0};
      Sh[k] = 0.0;
    }
  }
  double rA = (bt.face_plus[l] * Fh[cs.np - 1].fA - bt.face_minus[l] * Fh[0].fA) * inv_dx;
  double rQ = (bt.face_plus[l] * Fh[cs.np - 1].fQ - bt.face_minus[l] * Fh[0].fQ) * inv_dx;
  for (int k = 0; k < cs.np; ++k) {
    const Flux2 F = model_.flux(cs.A[k], cs.Q[k], cs.K[k], cs.A0[k]);
    const double S =
        model_.source_q(cs.A[k], cs.K[k], cs.A0[k], cs.dK[k], cs.dA0[k], cs.dpe[k]);
    rA += bt.fluxcoef[l][k] * (F.fA - Fh[k].fA) * inv_dx;
    rQ += bt.fluxcoef[l][k] * (F.fQ - Fh[k].fQ) * inv_dx;
    rQ += bt.srccoef[l][k] * (S - Sh[k]);
  }
  *outA = rA;
  *outQ = rQ;
}

void SpatialScheme::moment_rhs_cell(const SolutionState& s, int j, int deg,
                                    RhsVector* rhs) const {
  const CellSamples& cs = scratch_[j];
  const BasisTables& bt = BasisTables::get(deg);
  const double inv_dx = 1.0 / mesh_.dx;

  ReferenceSteadyState ref;
  reference_for(cs, &ref);

  Flux2 Fh[kMaxNodes];
  double Sh[kMaxNodes];
  Flux2 dF[kMaxNodes];
  double dS[kMaxNodes];
  for (int k = 0; k < cs.np; ++k) {
    if (ref.exists) {
      Fh[k] = model_.flux(ref.A_hat[k], ref.Q_hat, cs.K[k], cs.A0[k]);
      Sh[k] = model_.source_q(ref.A_hat[k], cs.K[k], cs.A0[k], cs.dK[k], cs.dA0[k],
                              cs.dpe[k]);
    } else {
      Fh[k] = {0.0, 0.0};
      Sh[k] = 0.0;
    }
    const Flux2 F = model_.flux(cs.A[k], cs.Q[k], cs.K[k], cs.A0[k]);
    const double S =
        model_.source_q(cs.A[k], cs.K[k], cs.A0[k], cs.dK[k], cs.dA0[k], cs.dpe[k]);
    dF[k] = {F.fA - Fh[k].fA, F.fQ - Fh[k].fQ};
    dS[k] = S - Sh[k];
  }
  // Interface minus hat flux at the faces; at a preserved steady state the
  // operands are bitwise equal and the difference is exactly zero.
  const Flux2 dFm = {iflux_[j].fA - Fh[0].fA, iflux_[j].fQ - Fh[0].fQ};
  const Flux2 dFp = {iflux_[j + 1].fA - Fh[cs.np - 1].fA,
                     iflux_[j + 1].fQ - Fh[cs.np - 1].fQ};

  for (int l = 0; l < s.nmom; ++l) {
    double rA = 0.0, rQ = 0.0;
    if (l < deg - 1) {
      rA = -(bt.face_plus[l] * dFp.fA - bt.face_minus[l] * dFm.fA) * inv_dx;
      rQ = -(bt.face_plus[l] * dFp.fQ - bt.face_minus[l] * dFm.fQ) * inv_dx;
      for (int k = 0; k < cs.np; ++k) {
        rA += bt.fluxcoef[l][k] * dF[k].fA * inv_dx;
        rQ += bt.fluxcoef[l][k] * dF[k].fQ * inv_dx;
        rQ += bt.srccoef[l][k] * dS[k];
      }
    }
    rhs->momA[j * s.nmom + l] = rA;
    rhs->momQ[j * s.nmom + l] = rQ;
  }
}

void SpatialScheme::cell_average(const SolutionState& s, int j, double* A, double* Q) const {
  if (j < 0 || j >= s.n) {
    // Extrapolation ghost: constant state equal to the boundary point value.
    const int i = j < 0 ? 0 : s.n;
    *A = s.ptA[i];
    *Q = s.ptA[i] * s.ptU[i];
    return;
  }
  *A = s.mA(j, 0);
  *Q = s.mQ(j, 0);
}

void SpatialScheme::llf_cell_rhs(const SolutionState& s, int j, RhsVector* rhs) const {
  const int n = s.n;
  const bool per = mesh_.bc == BoundaryMode::periodic;
  const double inv_dx = 1.0 / mesh_.dx;

  auto llf_flux = [&](int i) {
    int jl = i - 1, jr = i;
    if (per) {
      jl = (i + n - 1) % n;
      jr = i % n;
    }
    double Al, Ql, Ar, Qr;
    cell_average(s, jl, &Al, &Ql);
    cell_average(s, jr, &Ar, &Qr);
    const double K = params_->ptK[i], A0 = params_->ptA0[i];
    const Flux2 Fl = model_.flux(Al, Ql, K, A0);
    const Flux2 Fr = model_.flux(Ar, Qr, K, A0);
    const double alpha = std::max(model_.max_abs_eigenvalue(Al, Ql / Al, K, A0),
                                  model_.max_abs_eigenvalue(Ar, Qr / Ar, K, A0));
    return Flux2{0.5 * (Fl.fA + Fr.fA) - 0.5 * alpha * (Ar - Al),
                 0.5 * (Fl.fQ + Fr.fQ) - 0.5 * alpha * (Qr - Ql)};
  };

  const Flux2 Fm = llf_flux(j);
  const Flux2 Fp = llf_flux(j + 1);
  double src = 0.0;
  if (!params_->const_pattern[j]) {
    const BasisTables& bt = BasisTables::get(degree_);
    double dofs[3][kMaxDofs];
    const std::vector<double>* pts[3] = {&params_->ptK, &params_->ptA0, &params_->ptPe};
    const std::vector<double>* moms[3] = {&params_->momK, &params_->momA0, &params_->momPe};
    double g[3];
    for (int c = 0; c < 3; ++c) {
      dofs[c][0] = (*pts[c])[j];
      dofs[c][1] = (*pts[c])[j + 1];
      for (int l = 0; l < bt.nmom; ++l) dofs[c][2 + l] = (*moms[c])[j * params_->nmom + l];
      double gd = 0.0;
      for (int d = 0; d < bt.ndofs; ++d) gd += dofs[c][d] * bt.shape_deriv(d, 0.0);
      g[c] = gd * inv_dx;
    }
    src = model_.source_q(s.mA(j, 0), centerK_[j], centerA0_[j], g[0], g[1], g[2]);
  }
  rhs->momA[j * s.nmom] = -(Fp.fA - Fm.fA) * inv_dx;
  rhs->momQ[j * s.nmom] = -(Fp.fQ - Fm.fQ) * inv_dx + src;
  for (int l = 1; l < s.nmom; ++l) {
    rhs->momA[j * s.nmom + l] = 0.0;
    rhs->momQ[j * s.nmom + l] = 0.0;
  }
}

void SpatialScheme::resample_E(const SolutionState& s, int j, int deg_cell, int deg_target,
                               double* Eq, double* Ee) const {
  // Evaluate the cell's own-degree interpolant at another degree's nodes.
  const BasisTables& bc = BasisTables::get(deg_cell);
  const BasisTables& btg = BasisTables::get(deg_target);
  double dA[kMaxDofs], dQ[kMaxDofs], dK[kMaxDofs], dA0[kMaxDofs], dPe[kMaxDofs];
  dA[0] = s.ptA[j];
  dA[1] = s.ptA[j + 1];
  dQ[0] = s.ptA[j] * s.ptU[j];
  dQ[1] = s.ptA[j + 1] * s.ptU[j + 1];
  dK[0] = params_->ptK[j];
  dK[1] = params_->ptK[j + 1];
  dA0[0] = params_->ptA0[j];
  dA0[1] = params_->ptA0[j + 1];
  dPe[0] = params_->ptPe[j];
  dPe[1] = params_->ptPe[j + 1];
  for (int l = 0; l < bc.nmom; ++l) {
    dA[2 + l] = s.mA(j, l);
    dQ[2 + l] = s.mQ(j, l);
    dK[2 + l] = params_->momK[j * params_->nmom + l];
    dA0[2 + l] = params_->momA0[j * params_->nmom + l];
    dPe[2 + l] = params_->momPe[j * params_->nmom + l];
  }
  const bool cp = params_->const_pattern[j] != 0;
  for (int k = 0; k < btg.npts; ++k) {
    const double xi = btg.node[k];
    double A = 0.0, Q = 0.0, K = 0.0, A0 = 0.0, pe = 0.0;
    for (int d = 0; d < bc.ndofs; ++d) {
      const double b = bc.shape(d, xi);
      A += dA[d] * b;
      Q += dQ[d] * b;
      if (!cp) {
        K += dK[d] * b;
        A0 += dA0[d] * b;
        pe += dPe[d] * b;
      }
    }
    if (cp) {
      K = dK[0];
      A0 = dA0[0];
      pe = dPe[0];
    }
    Eq[k] = Q;
    Ee[k] = model_.equilibrium_E(A, Q / A, K, A0, pe);
  }
}

void SpatialScheme::cell_indicators(const SolutionState& s, std::vector<double>* Qc,
                                    std::vector<double>* Ec) const {
  Qc->resize(s.n);
  Ec->resize(s.n);
  for (int j = 0; j < s.n; ++j) {
    const double A = s.mA(j, 0), Q = s.mQ(j, 0);
    (*Qc)[j] = Q;
    (*Ec)[j] = model_.equilibrium_E(A, Q / A, centerK_[j], centerA0_[j], centerPe_[j]);
  }
}

double SpatialScheme::cell_wave_scale(const SolutionState& s, int j) const {
  const double A = s.mA(j, 0);
  return A / model_.sound_speed(A, centerK_[j], centerA0_[j]);
}

EquilibriumVars SpatialScheme::interface_equilibrium(const SolutionState& s, int i) const {
  return model_.equilibrium_vars({s.ptA[i], s.ptU[i]}, params_->ptK[i], params_->ptA0[i],
                                 params_->ptPe[i]);
}

double SpatialScheme::max_wave_speed(const SolutionState& s) const {
  double lam = 0.0;
  for (int i = 0; i <= s.n; ++i)
    lam = std::max(lam, model_.max_abs_eigenvalue(s.ptA[i], s.ptU[i], params_->ptK[i],
                                                  params_->ptA0[i]));
  CellSamples cs;
  for (int j = 0; j < s.n; ++j) {
    if (!sample_cell(s, j, degree_, &cs)) continue;
    for (int k = 0; k < cs.np; ++k)
      lam = std::max(lam, model_.max_abs_eigenvalue(cs.A[k], cs.Q[k] / cs.A[k], cs.K[k],
                                                    cs.A0[k]));
  }
  return lam;
}

bool SpatialScheme::compute_rhs(const SolutionState& s, const DegreeMap& deg,
                                RhsVector* rhs, std::vector<int>* troubled) const {
  const int n = s.n;
  troubled->clear();
  rhs->momA.assign(s.momA.size(), 0.0);
  rhs->momQ.assign(s.momQ.size(), 0.0);
  rhs->ptA.assign(s.ptA.size(), 0.0);
  rhs->ptU.assign(s.ptU.size(), 0.0);

  for (int i = 0; i <= n; ++i) {
    if (!(s.ptA[i] > 0.0)) {
      if (i > 0) troubled->push_back(i - 1);
      if (i < n) troubled->push_back(i);
    }
  }
  if (!troubled->empty()) return false;

  for (int j = 0; j < n; ++j) {
    const int dj = deg[j];
    if (dj == 0) {
      if (!(s.mA(j, 0) > 0.0)) troubled->push_back(j);
      continue;
    }
    if (!sample_cell(s, j, dj, &scratch_[j])) troubled->push_back(j);
  }
  if (!troubled->empty()) return false;

  for (int i = 0; i <= n; ++i) {
    const double A = s.ptA[i];
    iflux_[i] = model_.flux(A, A * s.ptU[i], params_->ptK[i], params_->ptA0[i]);
  }

  for (int j = 0; j < n; ++j) {
    if (deg[j] == 0)
      llf_cell_rhs(s, j, rhs);
    else
      moment_rhs_cell(s, j, deg[j], rhs);
  }

  point_rhs_all(s, deg, rhs);
  return true;
}

}  // namespace bloodflow
