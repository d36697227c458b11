#pragma once

// Jacobi elliptic functions and Legendre integrals. The second argument is
// always the parameter m = k^2, never the modulus.

namespace voss {

struct JacobiTriple {
  double am = 0, sn = 0, cn = 1, dn = 1;
};

// m > 1 goes through the reciprocal-modulus transformation; am is then the
// continuous branch atan2(sn, cn), which stays in (-pi/2, pi/2).
JacobiTriple jacobi(double x, double m);

double ellint_K(double m);
double ellint_E(double m);
double ellint_Pi(double n, double m);

// Incomplete integrals, extended quasi-periodically outside [-pi/2, pi/2].
// For m > 1 only |phi| <= asin(1/sqrt(m)) is meaningful.
double ellint_F(double phi, double m);
double ellint_E(double phi, double m);
double ellint_Pi(double n, double phi, double m);

// Carlson symmetric forms.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
double carlson_rj(double x, double y, double z, double p);
double carlson_rc(double x, double y);

// Integral of dn^2(z|m) over [0, x]; equals E(am(x|m)|m) for m <= 1.
double integral_dn2(double x, double m);
// Integral of dn^-2(z|m) over [0, x]; equals Pi(m; am(x|m)|m) for m < 1.
double integral_inv_dn2(double x, double m);

}  // namespace voss
