#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "voss/grid.hpp"
#include "voss/report.hpp"

namespace voss {

struct FundamentalForms {
  GridSpec spec;
  ScalarField E, F, G, L, M, N;
  VectorField normal;
};

// Symmetric 2x2 form e du^2 + 2 f du dv + g dv^2 sampled on a grid.
struct SymForm {
  ScalarField e, f, g;
};

struct RotationCoefficients {
  ScalarField b, c;
};

// Corners (i0, j0) and (i1, j1) of an index rectangle.
struct NetLoop {
  int i0 = 0, j0 = 0, i1 = 0, j1 = 0;
};

struct NetDefects {
  double conjugate = 0, chebyshev_u = 0, chebyshev_v = 0, asymptotic = 0;
};

struct LineCurvatures {
  ScalarField u, v;
};

struct FrenetLines {
  ScalarField kappa_u, tau_u, kappa_v, tau_v;
};

struct RotationOperator {
  Field<Eigen::Matrix2d> A;
  double max_trace = 0;   // relative to |A|
  double max_normal_angle = 0;
};

// Uniform-grid derivative d^m/dx^m of samples f along one line; 5-point centred
// stencils inside, 6-point one-sided near the ends.
std::vector<double> differentiate(const std::vector<double>& f, double h, int m = 1);

// Position derivatives, analytic when the grid carries them.
struct SurfaceDerivatives {
  VectorField xu, xv, xuu, xuv, xvv;
};
SurfaceDerivatives surface_derivatives(const SurfaceGrid& s);

FundamentalForms fundamental_forms(const SurfaceGrid& s);
std::pair<ScalarField, ScalarField> curvatures(const FundamentalForms& f);
SymForm third_form(const FundamentalForms& f);
LineCurvatures geodesic_curvature_lines(const SurfaceGrid& s);
// Curvature and torsion of the coordinate lines.
FrenetLines frenet_lines(const SurfaceGrid& s);
NetDefects net_defects(const SurfaceGrid& s);
// Relative defect of the loop; the loop must lie strictly inside the grid.
double alignability_defect(const SurfaceGrid& s, const NetLoop& loop);

double mixed_determinant(const Eigen::Matrix2d& A, const Eigen::Matrix2d& B);

VerificationReport reciprocal_parallel_check(const SurfaceGrid& psi, const SurfaceGrid& eta, double tol = 1e-5);

// A with (eta_u, eta_v) = (psi_u, psi_v) A per sample.
RotationOperator rotation_operator(const SurfaceGrid& psi, const SurfaceGrid& eta, double parallel_tol = 1e-6);
RotationCoefficients rotation_coefficients(const RotationOperator& op);

// eta with eta_u = c psi_v, eta_v = b psi_u and eta = 0 at the first sample.
// Provenance records the row-first / column-first discrepancy.
SurfaceGrid rotation_quadrature(const SurfaceGrid& psi, const RotationCoefficients& coeffs, double path_tol = 1e-6);

// Compatibility of (b, c) with the angle omega; sign selects b_u = sign * c_v.
VerificationReport codazzi_residual(const RotationCoefficients& coeffs, const ScalarField& omega, const GridSpec& grid,
                                    int sign = +1, double tol = 1e-5);

// RMS distance after the best rigid motion taking a onto b.
double procrustes_rms(const VectorField& a, const VectorField& b, bool allow_reflection = false);

}  // namespace voss
