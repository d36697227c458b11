#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "voss/grid.hpp"
#include "voss/sine_gordon.hpp"

namespace voss {

// f, g and their x-derivatives. f3/g3 are NaN when a profile cannot supply them.
struct ProfileJet {
  double f = 0, f1 = 0, f2 = 0, f3 = std::numeric_limits<double>::quiet_NaN();
  double g = 0, g1 = 0, g2 = 0, g3 = std::numeric_limits<double>::quiet_NaN();
};

// Meridian (f(x), 0, g(x)) of a surface of revolution swept by the angle rate()*y.
class ProfileCurve {
public:
  enum class Kind { knet_revolution, catenoid, vnet_positive, vnet_negative, tabulated };

  // f = dn/k, g = (int dn^2 - x)/k, angle k y: the K-net of revolution.
  static ProfileCurve knet_revolution(double k);
  // f = a cosh x, g = a x.
  static ProfileCurve catenoid(double a);
  // f = 1/(k dn), g = (int dn^-2 - x)/k, angle k y.
  static ProfileCurve vnet_positive(double k);
  // f = 1/(k^2 sn), g = ln(sn/(1 - cn))/k^2, angle k y.
  static ProfileCurve vnet_negative(double k);
  // Uniform samples starting at x0; quintic B-spline in between.
  static ProfileCurve tabulated(double x0, double dx, const std::vector<double>& f, const std::vector<double>& g);

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  double rate() const { return rate_; }
  ProfileJet eval(double x) const;
  // Closed-form antiderivative of g'/f^2 when one is known.
  std::optional<double> inv_f2_integral(double x) const;
  // Base point of the cumulative integrals for samples spanning [xlo, xhi].
  double anchor(double xlo, double xhi) const;
  // Raises SingularDomainError / DomainError if [xlo, xhi] leaves the profile's domain.
  void check_range(double xlo, double xhi) const;
  nlohmann::json describe() const;

private:
  struct Table;
  Kind kind_ = Kind::catenoid;
  double param_ = 1, rate_ = 1;
  std::shared_ptr<const Table> table_;
};

struct BourParams {
  double s = 1, t = 0;
};

struct FirstKindParams {
  int sign = +1;
  double k = 1;
  double lambda = 1;
};

// Two candidate wrapping parameters for the negative family.
enum class NegativeVariant { corollary, theorem };

const char* to_string(NegativeVariant v);

// Which strip of the revolution angle contains x; throws SingularDomainError
// when x sits on a singular curve or in the mirrored half-period for k > 1.
int strip_containing(double k, double x);

// Surface of revolution of a profile, with analytic first and second derivatives.
SurfaceGrid revolution_surface(const ProfileCurve& profile, const GridSpec& grid, Chart chart);

// psi_k(u, v) = (dn cos ky, dn sin ky, E(am x) - x)/k with x = u + v, y = u - v.
SurfaceGrid knet_revolution(double k, const GridSpec& grid);

// Bour family member (s, t) of the profile's surface of revolution. s scales the
// angular rate: (s, t) = (rate^2, 0) reproduces the surface itself, and the first
// fundamental form E dx^2 + G dy^2 is the same for every admissible (s, t).
SurfaceGrid bour_immersion(const ProfileCurve& profile, BourParams p, const GridSpec& grid,
                           Chart chart = Chart::direct);

// eta+ = (-cos(theta)/f, -sin(theta)/f, int g'/f^2) with theta = rate * y.
SurfaceGrid rotation_field_positive(const ProfileCurve& profile, const GridSpec& grid, Chart chart = Chart::direct);
// eta- = (f'/g' sin(theta), -f'/g' cos(theta), theta) with theta = rate * y.
SurfaceGrid rotation_field_negative(const ProfileCurve& profile, const GridSpec& grid, Chart chart = Chart::direct);

BourParams bour_params_first_kind(int sign, double k, double lambda,
                                  NegativeVariant variant = NegativeVariant::corollary);

// Alignable V-net of the first kind with I = csc^4 (resp. sec^4)(w/2)(du^2 +- 2cos w du dv + dv^2).
SurfaceGrid first_kind_vnet(const FirstKindParams& params, const GridSpec& grid,
                            NegativeVariant variant = NegativeVariant::corollary);

// (u, v) -> (lambda u, v / lambda) on the sample rectangle.
GridSpec squeeze_reparam(const GridSpec& grid, double lambda);
// Same points, new coordinates: derivatives rescaled accordingly.
SurfaceGrid squeeze_reparam(const SurfaceGrid& surface, double lambda);

// Square u, v in [lo/2, hi/2] after insetting x_range by margin * width, so that
// x = u + v stays inside the range.
GridSpec strip_grid(const Interval& x_range, int nu, int nv, double margin = 1e-3);

struct AngleJet {
  double w = 0, wu = 0, wv = 0;
};
using AngleFunction = std::function<AngleJet(double u, double v)>;

struct LaxOptions {
  int substeps = 4;
  double unitarity_tol = 1e-8;
  bool cross_path = true;
};

// Sym formula 2 lambda Phi^-1 Phi_lambda for the frame of the Lax pair (U, V).
SurfaceGrid integrate_lax_knet(const AngleFunction& omega, double lambda, const GridSpec& grid,
                               const LaxOptions& opt = {});
SurfaceGrid integrate_lax_knet(const RevolutionAngle& omega, double lambda, const GridSpec& grid,
                               const LaxOptions& opt = {});

}  // namespace voss
