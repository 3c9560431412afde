#include "bloodflow/mesh_state.hpp"

#include <cstdio>
#include <cmath>

namespace bloodflow {

Mesh build_mesh(double x_left, double x_right, int n, BoundaryMode bc) {
  if (!(x_right > x_left)) throw std::invalid_argument("empty domain");
  if (n < 4) throw std::invalid_argument("need at least 4 cells");
  Mesh m;
  m.x_left = x_left;
  m.x_right = x_right;
  m.n = n;
  m.dx = (x_right - x_left) / n;
  m.bc = bc;
  return m;
}

namespace {

// Sample a closure at the cell's Gauss-Lobatto nodes and write DoFs; bitwise
// constant samples get the canonical constant pattern. Returns whether the
// cell was constant.
bool project_cell(const Mesh& mesh, const BasisTables& bt, const ScalarField& f, int j,
                  int nmom, double* face_l, double* face_r, double* mom) {
  double s[kMaxNodes];
  const double xc = mesh.center(j);
  // Face nodes use the interface coordinates verbatim so face samples agree
  // bitwise with the shared interface samples (matters when a closure jumps
  // exactly at an interface).
  s[0] = f(mesh.interface(j));
  s[bt.npts - 1] = f(mesh.interface(j + 1));
  for (int k = 1; k + 1 < bt.npts; ++k) s[k] = f(xc + bt.node[k] * mesh.dx);
  bool constant = true;
  for (int k = 1; k < bt.npts; ++k) constant &= (s[k] == s[0]);
  double dofs[kMaxDofs];
  if (constant) {
    dofs[0] = dofs[1] = s[0];
    for (int l = 0; l < bt.nmom; ++l) dofs[2 + l] = (l % 2 == 0) ? s[0] : 0.0;
  } else {
    project_samples_to_dofs(bt, s, dofs);
  }
  *face_l = dofs[0];
  *face_r = dofs[1];
  for (int l = 0; l < nmom; ++l) mom[l] = dofs[2 + l];
  return constant;
}

}  // namespace

void initialize(const Mesh& mesh, const BasisTables& bt, const InitialData& ic,
                const ScalarField& K, const ScalarField& A0, const ScalarField& pe,
                SolutionState* state, ParameterData* params) {
  const int n = mesh.n;
  const int nmom = bt.nmom;
  state->n = n;
  state->nmom = nmom;
  state->t = 0.0;
  state->momA.assign(static_cast<size_t>(n) * nmom, 0.0);
  state->momQ.assign(static_cast<size_t>(n) * nmom, 0.0);
  state->ptA.assign(n + 1, 0.0);
  state->ptU.assign(n + 1, 0.0);
  params->n = n;
  params->nmom = nmom;
  params->momK.assign(static_cast<size_t>(n) * nmom, 0.0);
  params->momA0.assign(static_cast<size_t>(n) * nmom, 0.0);
  params->momPe.assign(static_cast<size_t>(n) * nmom, 0.0);
  params->ptK.assign(n + 1, 0.0);
  params->ptA0.assign(n + 1, 0.0);
  params->ptPe.assign(n + 1, 0.0);
  params->const_pattern.assign(n, 0);

  for (int i = 0; i <= n; ++i) {
    const double x = mesh.interface(i);
    const double A = ic.A(x);
    if (!(A > 0.0)) throw std::domain_error("nonpositive initial area at an interface");
    state->ptA[i] = A;
    state->ptU[i] = ic.Q(x) / A;
    params->ptK[i] = K(x);
    params->ptA0[i] = A0(x);
    params->ptPe[i] = pe(x);
    if (!(params->ptK[i] > 0.0 && params->ptA0[i] > 0.0))
      throw std::domain_error("nonpositive K or A0 at an interface");
  }
  if (mesh.bc == BoundaryMode::periodic) {
    // One shared physical point; keep the pair bitwise identical.
    state->ptA[n] = state->ptA[0];
    state->ptU[n] = state->ptU[0];
    params->ptK[n] = params->ptK[0];
    params->ptA0[n] = params->ptA0[0];
    params->ptPe[n] = params->ptPe[0];
  }

  double fl, fr;
  for (int j = 0; j < n; ++j) {
    // State moments: faces re-projected here must agree with the shared
    // interface samples; they do bitwise because the closure is sampled at
    // the same x. The stored faces live in pt*, the per-cell call only fills
    // the moments.
    project_cell(mesh, bt, ic.A, j, nmom, &fl, &fr, &state->momA[j * nmom]);
    project_cell(mesh, bt, ic.Q, j, nmom, &fl, &fr, &state->momQ[j * nmom]);
    if (!(state->mA(j, 0) > 0.0)) throw std::domain_error("nonpositive initial cell average");

    bool c = project_cell(mesh, bt, K, j, nmom, &fl, &fr, &params->momK[j * nmom]);
    c &= project_cell(mesh, bt, A0, j, nmom, &fl, &fr, &params->momA0[j * nmom]);
    c &= project_cell(mesh, bt, pe, j, nmom, &fl, &fr, &params->momPe[j * nmom]);
    params->const_pattern[j] = c ? 1 : 0;
  }
}

void write_cell_csv(const std::string& path, const Mesh& mesh, const SolutionState& s) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "x_center,A_avg,Q_avg\n");
  for (int j = 0; j < mesh.n; ++j)
    std::fprintf(f, "%.17g,%.17g,%.17g\n", mesh.center(j), s.mA(j, 0), s.mQ(j, 0));
  std::fclose(f);
}

void write_point_csv(const std::string& path, const Mesh& mesh, const SolutionState& s) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "x,A_point,u_point\n");
  for (int i = 0; i <= mesh.n; ++i)
    std::fprintf(f, "%.17g,%.17g,%.17g\n", mesh.interface(i), s.ptA[i], s.ptU[i]);
  std::fclose(f);
}

}  // namespace bloodflow
