#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bloodflow/fe_basis.hpp"
#include "bloodflow/model.hpp"

namespace bloodflow {

enum class BoundaryMode { periodic, extrapolation };

struct Mesh {
  double x_left = 0.0;
  double x_right = 1.0;
  int n = 0;
  double dx = 0.0;
  BoundaryMode bc = BoundaryMode::extrapolation;

  double center(int j) const { return x_left + (j + 0.5) * dx; }
  double interface(int i) const { return x_left + i * dx; }
};

Mesh build_mesh(double x_left, double x_right, int n, BoundaryMode bc);

// Discrete unknowns: per-cell moments of (A, Q) for l = 0..r-2, stored
// cell-major, plus shared interface point values in primitive form (A, u).
// With periodic boundaries pt*[n] mirrors pt*[0].
struct SolutionState {
  int n = 0;
  int nmom = 0;
  double t = 0.0;
  std::vector<double> momA, momQ;  // size n * nmom
  std::vector<double> ptA, ptU;    // size n + 1

  double& mA(int j, int l) { return momA[j * nmom + l]; }
  double& mQ(int j, int l) { return momQ[j * nmom + l]; }
  double mA(int j, int l) const { return momA[j * nmom + l]; }
  double mQ(int j, int l) const { return momQ[j * nmom + l]; }
};

// Projected parameter fields K, A0, pext in the same DoF layout (one scalar
// channel each). const_pattern[j] is set when cell j's three channels are all
// in canonical constant form (faces equal, even moments equal the face value,
// odd moments zero); the solver then treats parameter derivatives as exactly
// zero there.
struct ParameterData {
  int n = 0;
  int nmom = 0;
  std::vector<double> momK, momA0, momPe;
  std::vector<double> ptK, ptA0, ptPe;
  std::vector<unsigned char> const_pattern;
};

using ScalarField = std::function<double(double)>;

struct InitialData {
  ScalarField A;
  ScalarField Q;  // conservative IC; point values store u = Q/A
};

// Project ICs and parameter fields onto the discrete space. Interface points
// take the exact closure values; moments come from the Gauss-Lobatto
// quadrature of the cell samples. Closures sampled bitwise-constant within a
// cell are written as the canonical constant pattern instead.
void initialize(const Mesh& mesh, const BasisTables& bt, const InitialData& ic,
                const ScalarField& K, const ScalarField& A0, const ScalarField& pe,
                SolutionState* state, ParameterData* params);

// CSV export: cell averages (x_center, A_avg, Q_avg) and interface point
// values (x, A_point, u_point).
void write_cell_csv(const std::string& path, const Mesh& mesh, const SolutionState& s);
void write_point_csv(const std::string& path, const Mesh& mesh, const SolutionState& s);

}  // namespace bloodflow
