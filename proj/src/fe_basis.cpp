#include "bloodflow/fe_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace bloodflow {

double normalization_constant(int l, double dx) {
  double p = 1.0;
  for (int i = 0; i <= l; ++i) p *= dx;
  return (l + 1) * std::ldexp(1.0, l) / p;
}

namespace {

// Shape-function polynomial coefficients, ascending powers of xi. All values
// are dyadic rationals, so evaluation at dyadic xi (notably +-1/2) is exact;
// every shape function is exactly 0 or 1 at the faces.
struct Poly {
  std::array<double, kMaxNodes> c{};
  int deg = 0;
  double eval(double xi) const {
    double v = c[deg];
    for (int i = deg - 1; i >= 0; --i) v = v * xi + c[i];
    return v;
  }
  double deriv(double xi) const {
    double v = deg * c[deg];
    for (int i = deg - 1; i >= 1; --i) v = v * xi + i * c[i];
    return v;
  }
};

struct DegreeDef {
  std::array<Poly, kMaxDofs> shape;  // DoF order: left face, right face, moments
  std::array<double, kMaxNodes> node;
  std::array<double, kMaxNodes> weight;
  std::array<double, kMaxNodes> dplus;
};

DegreeDef make_def(int r) {
  DegreeDef d{};
  switch (r) {
    case 2: {
      d.shape[0] = {{-0.25, -1.0, 3.0}, 2};
      d.shape[1] = {{-0.25, 1.0, 3.0}, 2};
      d.shape[2] = {{1.5, 0.0, -6.0}, 2};
      d.node = {-0.5, 0.0, 0.5};
      d.weight = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
      d.dplus = {1.0, -4.0, 3.0};
      break;
    }
    case 3: {
      d.shape[0] = {{-0.25, 1.5, 3.0, -10.0}, 3};
      d.shape[1] = {{-0.25, -1.5, 3.0, 10.0}, 3};
      d.shape[2] = {{1.5, 0.0, -6.0, 0.0}, 3};
      d.shape[3] = {{0.0, 7.5, 0.0, -30.0}, 3};
      const double g = std::sqrt(1.0 / 20.0);
      d.node = {-0.5, -g, g, 0.5};
      const double w0 = 1.0 / 12.0;
      const double w1 = 5.0 / 12.0;
      d.weight = {w0, w1, w1, w0};
      const double s5 = std::sqrt(5.0);
      d.dplus = {-1.0, 5.0 * (s5 - 1.0) / 2.0, -5.0 * (s5 + 1.0) / 2.0, 6.0};
      break;
    }
    case 4: {
      d.shape[0] = {{3.0 / 16.0, 1.5, -7.5, -10.0, 35.0}, 4};
      d.shape[1] = {{3.0 / 16.0, -1.5, -7.5, 10.0, 35.0}, 4};
      d.shape[2] = {{45.0 / 16.0, 0.0, -37.5, 0.0, 105.0}, 4};
      d.shape[3] = {{0.0, 7.5, 0.0, -30.0, 0.0}, 4};
      d.shape[4] = {{-35.0 / 16.0, 0.0, 52.5, 0.0, -175.0}, 4};
      const double g = std::sqrt(3.0 / 28.0);
      d.node = {-0.5, -g, 0.0, g, 0.5};
      const double w0 = 1.0 / 20.0;
      const double w1 = 49.0 / 180.0;
      d.weight = {w0, w1, 1.0 - 2.0 * (w0 + w1), w1, w0};
      const double s21 = std::sqrt(21.0);
      d.dplus = {1.0, 7.0 * (s21 - 7.0) / 6.0, 16.0 / 3.0, -7.0 * (s21 + 7.0) / 6.0, 10.0};
      break;
    }
    default:
      throw std::invalid_argument("unsupported polynomial degree");
  }
  return d;
}

BasisTables build(int r) {
  const DegreeDef def = make_def(r);
  BasisTables bt;
  bt.r = r;
  bt.npts = r + 1;
  bt.ndofs = r + 1;
  bt.nmom = r - 1;
  bt.node = def.node;
  bt.weight = def.weight;
  bt.dplus = def.dplus;
  for (int k = 0; k < bt.npts; ++k) bt.dminus[k] = -def.dplus[bt.npts - 1 - k];

  for (int d = 0; d < bt.ndofs; ++d) {
    for (int k = 0; k < bt.npts; ++k) {
      bt.B[d][k] = def.shape[d].eval(def.node[k]);
      bt.dB[d][k] = def.shape[d].deriv(def.node[k]);
    }
  }
  for (int l = 0; l < bt.nmom; ++l) {
    const double c = (l + 1) * std::ldexp(1.0, l);  // (l+1) 2^l
    bt.face_plus[l] = l + 1;
    bt.face_minus[l] = (l % 2 == 0) ? (l + 1) : -(l + 1.0);
    for (int k = 0; k < bt.npts; ++k) {
      const double xi = def.node[k];
      double xil = 1.0;  // xi^l
      double xilm1 = 0.0;
      for (int i = 0; i < l; ++i) {
        xilm1 = xil;
        xil *= xi;
      }
      bt.srccoef[l][k] = c * def.weight[k] * xil;
      bt.fluxcoef[l][k] = c * l * def.weight[k] * xilm1;
    }
  }
  return bt;
}

const BasisTables& table(int r) {
  static const BasisTables t2 = build(2);
  static const BasisTables t3 = build(3);
  static const BasisTables t4 = build(4);
  switch (r) {
    case 2: return t2;
    case 3: return t3;
    case 4: return t4;
    default: throw std::invalid_argument("unsupported polynomial degree");
  }
}

}  // namespace

double BasisTables::shape(int d, double xi) const {
  return make_def(r).shape[d].eval(xi);
}

double BasisTables::shape_deriv(int d, double xi) const {
  return make_def(r).shape[d].deriv(xi);
}

double BasisTables::lagrange(int k, double xi) const {
  double v = 1.0;
  for (int j = 0; j < npts; ++j) {
    if (j == k) continue;
    v *= (xi - node[j]) / (node[k] - node[j]);
  }
  return v;
}

const BasisTables& BasisTables::get(int r) { return table(r); }

double interpolate_dofs(const BasisTables& bt, const double* dofs, double xi) {
  double v = dofs[0] * bt.shape(0, xi) + dofs[1] * bt.shape(1, xi);
  for (int l = 0; l < bt.nmom; ++l) v += dofs[2 + l] * bt.shape(2 + l, xi);
  return v;
}

void project_samples_to_dofs(const BasisTables& bt, const double* f, double* dofs) {
  dofs[0] = f[0];
  dofs[1] = f[bt.npts - 1];
  const int np = bt.npts;
  for (int l = 0; l < bt.nmom; ++l) {
    // Symmetric-pair summation: srccoef[l][mirror] = +-srccoef[l][k], so odd
    // moments of symmetric data cancel exactly.
    double m = 0.0;
    for (int k = 0; k < np / 2; ++k) {
      const int km = np - 1 - k;
      m += bt.srccoef[l][k] * f[k] + bt.srccoef[l][km] * f[km];
    }
    if (np % 2 == 1) m += bt.srccoef[l][np / 2] * f[np / 2];
    dofs[2 + l] = m;
  }
}

}  // namespace bloodflow
