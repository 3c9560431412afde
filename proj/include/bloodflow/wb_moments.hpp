#pragma once

#include <vector>

#include "bloodflow/fe_basis.hpp"
#include "bloodflow/mesh_state.hpp"
#include "bloodflow/model.hpp"

// Well-balanced semi-discrete right-hand side. Cell moments follow the
// reformulated source (hat terms from a per-cell reference steady state);
// interface point values follow Jacobian-sign upwinding of one-sided
// equilibrium-variable derivatives (see point_update.hpp for the pieces).
//
// All differences against the reference are taken value-by-value after
// evaluating flux/source with identical code on both states, so a cell whose
// samples coincide bitwise with its reference produces an exactly zero
// right-hand side.

namespace bloodflow {

// digamma(A) = Q^2/(2A^2) + (K phi(A/A0) + pext)/rho - E and its A-derivative.
double digamma(const Model& md, double A, double Q, double E, double K, double A0, double pe);
double digamma_prime(const Model& md, double A, double Q, double K, double A0);

// Unique root A* of g(A) = (K/(rho A0)) A^3 phi'(A/A0) - Q^2 on [0, inf);
// digamma attains its minimum there. Closed form for the artery law, else a
// safeguarded bracketed Newton iteration.
double critical_area(const Model& md, double Q, double K, double A0);

// Root of digamma(.) = 0 with |digamma| <= 1e-13 max(1, |E|), on the same
// side of A* as the seed. Returns the seed unchanged when it already meets
// the tolerance. Sets *ok = false after 100 iterations without convergence.
double solve_reference_area(const Model& md, double Q, double E, double K, double A0,
                            double pe, double A_seed, bool* ok);

struct ReferenceSteadyState {
  double Q_hat = 0.0;
  double E_hat = 0.0;
  double A_hat[kMaxNodes] = {};
  bool exists = false;
};

// Per-cell Gauss-Lobatto samples of the state, parameters, parameter
// derivatives, and equilibrium variables.
struct CellSamples {
  int np = 0;
  double A[kMaxNodes], Q[kMaxNodes];
  double K[kMaxNodes], A0[kMaxNodes], pe[kMaxNodes];
  double dK[kMaxNodes], dA0[kMaxNodes], dpe[kMaxNodes];
  double Eq[kMaxNodes], Ee[kMaxNodes];
  bool positive = true;
  bool const_params = false;
};

// Per-cell polynomial degree during a step: 2, 3, or 4 for the high-order
// scheme (orders 3/4/5), 0 for the first-order fallback.
using DegreeMap = std::vector<int>;

struct RhsVector {
  std::vector<double> momA, momQ;  // n * nmom
  std::vector<double> ptA, ptU;    // n + 1
};

class SpatialScheme {
 public:
  SpatialScheme(const Mesh& mesh, const Model& model, const ParameterData& params,
                int degree, bool well_balanced);

  const Mesh& mesh() const { return mesh_; }
  const Model& model() const { return model_; }
  int degree() const { return degree_; }
  bool well_balanced() const { return wb_; }

  // Joint moment + point right-hand side honoring the degree map. Returns
  // false (and lists the offending cells) when any sampled or interface area
  // is nonpositive; rhs contents are then unspecified.
  bool compute_rhs(const SolutionState& s, const DegreeMap& deg, RhsVector* rhs,
                   std::vector<int>* troubled) const;

  double max_wave_speed(const SolutionState& s) const;

  // Building blocks, exposed for verification.
  bool sample_cell(const SolutionState& s, int j, int deg, CellSamples* out) const;
  void reference_for(const CellSamples& cs, ReferenceSteadyState* ref) const;
  // The reformulated flux+source bulk term for moment l (the hat boundary
  // term plus the two Gauss-Lobatto quadratures), physical scaling included.
  void wb_source(const CellSamples& cs, const ReferenceSteadyState& ref, int l,
                 double* outA, double* outQ) const;
  // Cell-representative (Q, E) used by the a-posteriori detector: the zeroth
  // moments with parameters interpolated at the cell center.
  void cell_indicators(const SolutionState& s, std::vector<double>* Qc,
                       std::vector<double>* Ec) const;
  // Cell impedance scale A/c (from the averages and center parameters); the
  // detector uses it to bound how far one variable can push the other within
  // a single step.
  double cell_wave_scale(const SolutionState& s, int j) const;
  // Equilibrium variables of interface i from its point value and face
  // parameters.
  EquilibriumVars interface_equilibrium(const SolutionState& s, int i) const;

 private:
  void moment_rhs_cell(const SolutionState& s, int j, int deg, RhsVector* rhs) const;
  void llf_cell_rhs(const SolutionState& s, int j, RhsVector* rhs) const;
  void point_rhs_all(const SolutionState& s, const DegreeMap& deg, RhsVector* rhs) const;
  void resample_E(const SolutionState& s, int j, int deg_cell, int deg_target,
                  double* Eq, double* Ee) const;
  void cell_average(const SolutionState& s, int j, double* A, double* Q) const;

  Mesh mesh_;
  Model model_;
  const ParameterData* params_;
  int degree_;
  bool wb_;
  std::vector<double> centerK_, centerA0_, centerPe_;  // parameter interpolants at xi = 0
  mutable std::vector<CellSamples> scratch_;
  mutable std::vector<Flux2> iflux_;
  friend class PointUpdateTestAccess;
};

}  // namespace bloodflow
