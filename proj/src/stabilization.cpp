#include "bloodflow/stabilization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bloodflow {

MoodLimiter::MoodLimiter(const SpatialScheme& scheme) : scheme_(&scheme) {}

void MoodLimiter::prepare(const SolutionState& prev) {
  const Mesh& mesh = scheme_->mesh();
  const int n = prev.n;
  const bool per = mesh.bc == BoundaryMode::periodic;
  std::vector<double> Qc, Ec;
  scheme_->cell_indicators(prev, &Qc, &Ec);
  qlo_.resize(n);
  qhi_.resize(n);
  elo_.resize(n);
  ehi_.resize(n);
  std::vector<double> fQ(n + 1), fE(n + 1);
  for (int i = 0; i <= n; ++i) {
    const EquilibriumVars v = scheme_->interface_equilibrium(prev, i);
    fQ[i] = v.Q;
    fE[i] = v.E;
  }
  const double dx3 = mesh.dx * mesh.dx * mesh.dx;
  const int d = scheme_->degree();
  const double cfl = d <= 2 ? 0.4 : (d == 3 ? 0.2 : 0.1);
  // Whole-domain indicator ranges. Few-permille excursions of a decaying
  // start-up glitch are not oscillations worth demoting over; a real Gibbs
  // overshoot is a few percent of these ranges and still trips the bounds.
  double gQ = 0.0, gE = 0.0;
  {
    auto [q0, q1] = std::minmax_element(Qc.begin(), Qc.end());
    auto [e0, e1] = std::minmax_element(Ec.begin(), Ec.end());
    gQ = *q1 - *q0;
    gE = *e1 - *e0;
  }
  for (int j = 0; j < n; ++j) {
    double ql = Qc[j], qh = Qc[j], el = Ec[j], eh = Ec[j];
    for (int off = -1; off <= 1; off += 2) {
      int k = j + off;
      if (per)
        k = (k + n) % n;
      else
        k = std::clamp(k, 0, n - 1);
      ql = std::min(ql, Qc[k]);
      qh = std::max(qh, Qc[k]);
      el = std::min(el, Ec[k]);
      eh = std::max(eh, Ec[k]);
    }
    // The envelope also spans the previous interface values of the cell and
    // its neighbors, so the candidate interface values can be held to the
    // same bounds.
    for (int i = j - 1; i <= j + 2; ++i) {
      int k = per ? ((i % n) + n) % n : std::clamp(i, 0, n);
      ql = std::min(ql, fQ[k]);
      qh = std::max(qh, fQ[k]);
      el = std::min(el, fE[k]);
      eh = std::max(eh, fE[k]);
    }
    const double sig = scheme_->cell_wave_scale(prev, j);
    // Plateau exemption: where both indicators are flat relative to their
    // physical scales no oscillation can develop, and the raw envelope would
    // flag any arriving wavefront however tiny. c^2 and A*c share the units
    // of E and Q and keep the scales positive for blood at rest.
    const double Abar = prev.mA(j, 0);
    const double cbar = Abar / sig;
    const double scaleQ = std::max(std::abs(Qc[j]), Abar * cbar);
    const double scaleE = std::max(std::abs(Ec[j]), cbar * cbar);
    if (qh - ql <= 1e-6 * scaleQ && eh - el <= 1e-6 * scaleE) {
      qlo_[j] = elo_[j] = -std::numeric_limits<double>::infinity();
      qhi_[j] = ehi_[j] = std::numeric_limits<double>::infinity();
      continue;
    }
    // The quasilinear coupling moves Q by up to ~dt * A * E_x (and E by the
    // mirrored amount) per step even in perfectly smooth flow, so the envelope
    // of each variable is widened by the one-step transport bound taken from
    // the other. Both terms vanish on steady data. The relative floor keeps
    // sub-significant wiggles (numerical precursors running ahead of a wave)
    // from demoting cells far from any feature.
    const double dq = std::max({1e-4 * (qh - ql), dx3, 1e-5 * scaleQ, 2e-3 * gQ,
                                cfl * sig * (eh - el)});
    const double de = std::max({1e-4 * (eh - el), dx3, 1e-5 * scaleE, 2e-3 * gE,
                                cfl * (qh - ql) / sig});
    qlo_[j] = ql - dq;
    qhi_[j] = qh + dq;
    elo_[j] = el - de;
    ehi_[j] = eh + de;
  }
}

bool MoodLimiter::inspect(const SolutionState& cand, const DegreeMap& deg,
                          std::vector<int>* pos_bad, std::vector<int>* dmp_bad) const {
  const int n = cand.n;
  pos_bad->clear();
  dmp_bad->clear();

  std::vector<char> bad(n, 0);
  for (int i = 0; i <= n; ++i) {
    if (std::isfinite(cand.ptA[i]) && cand.ptA[i] > 0.0 && std::isfinite(cand.ptU[i]))
      continue;
    if (i > 0) bad[i - 1] = 1;
    if (i < n) bad[i % n] = 1;
  }
  CellSamples cs;
  for (int j = 0; j < n; ++j) {
    if (bad[j]) continue;
    bool fin = true;
    for (int l = 0; l < cand.nmom && fin; ++l)
      fin = std::isfinite(cand.mA(j, l)) && std::isfinite(cand.mQ(j, l));
    if (!fin || !(cand.mA(j, 0) > 0.0)) {
      bad[j] = 1;
      continue;
    }
    const int dj = deg[j] > 0 ? deg[j] : 0;
    if (dj > 0 && !scheme_->sample_cell(cand, j, dj, &cs)) bad[j] = 1;
  }
  for (int j = 0; j < n; ++j)
    if (bad[j]) pos_bad->push_back(j);

  if (pos_bad->empty()) {
    std::vector<double> Qc, Ec;
    scheme_->cell_indicators(cand, &Qc, &Ec);
    std::vector<char> dmp(n, 0);
    auto outside = [&](int j, double q, double e) {
      return q < qlo_[j] || q > qhi_[j] || e < elo_[j] || e > ehi_[j];
    };
    for (int j = 0; j < n; ++j)
      if (deg[j] > 0 && outside(j, Qc[j], Ec[j])) dmp[j] = 1;
    // Interface values are held to the same envelopes; Gibbs overshoots of a
    // polynomial straddling a discontinuity show up here first.
    for (int i = 0; i <= n; ++i) {
      const EquilibriumVars v = scheme_->interface_equilibrium(cand, i);
      if (i > 0 && deg[i - 1] > 0 && outside(i - 1, v.Q, v.E)) dmp[i - 1] = 1;
      const int jr = i % n;
      if (i < n && deg[jr] > 0 && outside(jr, v.Q, v.E)) dmp[jr] = 1;
    }
    for (int j = 0; j < n; ++j)
      if (dmp[j]) dmp_bad->push_back(j);  // fallback cells are not demoted further
  }
  return pos_bad->empty() && dmp_bad->empty();
}

int MoodLimiter::demote(int d) {
  switch (d) {
    case 4:
      return 3;
    case 3:
      return 2;
    default:
      return 0;
  }
}

void MoodLimiter::reproject_reduced(SolutionState* s, const DegreeMap& deg) const {
  const int full = scheme_->degree();
  const BasisTables& bf = BasisTables::get(full);
  for (int j = 0; j < s->n; ++j) {
    const int dj = deg[j];
    if (dj >= full) continue;
    if (dj == 0) {
      // Constant-in-cell data: even moments equal the average, odd vanish.
      const double a = s->mA(j, 0), q = s->mQ(j, 0);
      for (int l = 1; l < s->nmom; ++l) {
        s->mA(j, l) = (l % 2 == 0) ? a : 0.0;
        s->mQ(j, l) = (l % 2 == 0) ? q : 0.0;
      }
      continue;
    }
    const BasisTables& bc = BasisTables::get(dj);
    double dA[kMaxDofs], dQ[kMaxDofs];
    dA[0] = s->ptA[j];
    dA[1] = s->ptA[j + 1];
    dQ[0] = s->ptA[j] * s->ptU[j];
    dQ[1] = s->ptA[j + 1] * s->ptU[j + 1];
    for (int l = 0; l < bc.nmom; ++l) {
      dA[2 + l] = s->mA(j, l);
      dQ[2 + l] = s->mQ(j, l);
    }
    double fA[kMaxNodes], fQ[kMaxNodes];
    for (int k = 0; k < bf.npts; ++k) {
      double a = 0.0, q = 0.0;
      for (int d = 0; d < bc.ndofs; ++d) {
        const double b = bc.shape(d, bf.node[k]);
        a += dA[d] * b;
        q += dQ[d] * b;
      }
      fA[k] = a;
      fQ[k] = q;
    }
    // The full-degree Gauss-Lobatto quadrature integrates the reduced-degree
    // interpolant times the monomial weight exactly.
    for (int l = bc.nmom; l < s->nmom; ++l) {
      double a = 0.0, q = 0.0;
      for (int k = 0; k < bf.npts; ++k) {
        a += bf.srccoef[l][k] * fA[k];
        q += bf.srccoef[l][k] * fQ[k];
      }
      s->mA(j, l) = a;
      s->mQ(j, l) = q;
    }
  }
}

}  // namespace bloodflow
