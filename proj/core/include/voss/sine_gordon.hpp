#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <vector>

#include "voss/error.hpp"

namespace voss {

struct Interval {
  double lo = 0, hi = 0;
  bool contains(double x) const { return lo < x && x < hi; }
  double width() const { return hi - lo; }
};

// Open x-strip on which the revolution angle stays inside (0, pi).
// k < 1: (2iK, 2(i+1)K); k = 1: (0, inf) or (-inf, 0); k > 1: (2iK'/k, (2i+1)K'/k),
// with K = K(k^2), K' = K(1/k^2).
Interval domain_strip(double k, int strip_index);

// omega = arccos(2 k^2 sn^2(x|k^2) - 1). Throws SingularDomainError on the
// fold (sn = 0) and cusp (k sn = +-1) curves.
double omega_revolution(double x, double k);
// d omega / dx away from singular curves.
double omega_revolution_dx(double x, double k);

struct RevolutionAngle {
  double k = 1;
  int strip_index = 0;

  Interval strip() const { return domain_strip(k, strip_index); }
  // Strip shrunk by margin * width at each end (margin absolute for unbounded ends).
  Interval inset(double margin) const;
  double operator()(double x) const { return omega_revolution(x, k); }
  double dx(double x) const { return omega_revolution_dx(x, k); }
};

// Radial Painleve III solution omega'' + omega'/r = sin(omega), omega(0) = k.
class AmslerAngle {
public:
  struct Jet {
    double w = 0, w1 = 0, w2 = 0;
  };

  double k() const;
  double tol() const;
  double r_max() const;
  double step() const;
  // +inf when omega stays inside (0, pi) (or (-pi, 0)) up to r_max.
  double r_first_cusp() const;
  // Fold or cusp at r_first_cusp; meaningless when it is infinite.
  Singularity first_singularity() const;

  const std::vector<double>& r() const;
  const std::vector<double>& omega_samples() const;
  const std::vector<double>& domega_samples() const;

  // Interpolated omega(r), omega'(r), omega''(r) for 0 <= r <= r_max.
  double omega(double r) const;
  double domega(double r) const;
  double d2omega(double r) const;

  // W(z) = omega(2 sqrt z) and its first two z-derivatives; W_uv = sin W for z = uv.
  Jet similarity(double z) const;

  // Header "r,omega,domega", one row per sample.
  void write_csv(std::ostream& os) const;
  static AmslerAngle read_csv(std::istream& is, double tol = 1e-10);

  static AmslerAngle from_samples(std::vector<double> r, std::vector<double> omega,
                                  std::vector<double> domega, double tol);

  struct Impl;

private:
  std::shared_ptr<const Impl> impl_;
};

AmslerAngle solve_painleve3(double k, double r_max, double tol);

// omega at r = sqrt(4uv); u, v > 0 and r below the first cusp.
double amsler_omega(double u, double v, const AmslerAngle& sol);

// Power series of omega in z = r^2/4 about 0, coefficients a_0 .. a_n.
std::vector<double> painleve3_series(double k, int n);

}  // namespace voss
