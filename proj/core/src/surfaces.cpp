#include "voss/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "voss/elliptic.hpp"
#include <Eigen/Geometry>

#include "voss/error.hpp"
#include "voss/parallel.hpp"

namespace voss {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be finite and > 0");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Strip of x for the revolution angle with modulus k, checked on [xlo, xhi].
Interval checked_strip(double k, double xlo, double xhi, const char* who) {
  const int i = strip_containing(k, 0.5 * (xlo + xhi));
  const Interval s = domain_strip(k, i);
  if (!(xlo > s.lo))
    throw SingularDomainError(Singularity::fold, std::string(who) + ": x = " + fmt(xlo) +
                                                     " reaches the strip boundary " + fmt(s.lo));
  if (!(xhi < s.hi))
    throw SingularDomainError(k > 1 ? Singularity::cusp : Singularity::fold,
                              std::string(who) + ": x = " + fmt(xhi) + " reaches the strip boundary " + fmt(s.hi));
  return s;
}

}  // namespace

const char* to_string(NegativeVariant v) { return v == NegativeVariant::corollary ? "corollary" : "theorem"; }

int strip_containing(double k, double x) {
  require_positive(k, "modulus k");
  if (!std::isfinite(x)) throw DomainError("strip_containing: x must be finite");
  if (k == 1.0) {
    if (x == 0.0) throw SingularDomainError(Singularity::fold, "x = 0 lies on the fold curve");
    return x > 0 ? 0 : -1;
  }
  const double period = k < 1.0 ? 2.0 * ellint_K(k * k) : 2.0 * ellint_K(1.0 / (k * k)) / k;
  const double q = std::floor(x / period);
  const double rem = x - q * period;
  if (rem == 0.0) throw SingularDomainError(Singularity::fold, "x = " + fmt(x) + " lies on a fold curve");
  if (k > 1.0 && rem >= 0.5 * period)
    throw SingularDomainError(Singularity::cusp, "x = " + fmt(x) + " lies outside every strip (beyond a cusp curve)");
  return int(q);
}

// ---------------------------------------------------------------- profiles

struct ProfileCurve::Table {
  double x0, dx, x1;
  boost::math::interpolators::cardinal_quintic_b_spline<double> f, g;
};

ProfileCurve ProfileCurve::knet_revolution(double k) {
  require_positive(k, "modulus k");
  ProfileCurve p;
  p.kind_ = Kind::knet_revolution;
  p.param_ = k;
  p.rate_ = k;
  return p;
}

ProfileCurve ProfileCurve::catenoid(double a) {
  require_positive(a, "catenoid radius a");
  ProfileCurve p;
  p.kind_ = Kind::catenoid;
  p.param_ = a;
  p.rate_ = 1;
  return p;
}

ProfileCurve ProfileCurve::vnet_positive(double k) {
  ProfileCurve p = knet_revolution(k);
  p.kind_ = Kind::vnet_positive;
  return p;
}

ProfileCurve ProfileCurve::vnet_negative(double k) {
  ProfileCurve p = knet_revolution(k);
  p.kind_ = Kind::vnet_negative;
  return p;
}

ProfileCurve ProfileCurve::tabulated(double x0, double dx, const std::vector<double>& f, const std::vector<double>& g) {
  if (f.size() != g.size() || f.size() < 8) throw DomainError("tabulated profile: need >= 8 aligned samples");
  require_positive(dx, "tabulated profile spacing");
  for (double v : f)
    if (!(v > 0)) throw DomainError("tabulated profile: f must be > 0");
  ProfileCurve p;
  p.kind_ = Kind::tabulated;
  p.param_ = 0;
  p.rate_ = 1;
  using boost::math::interpolators::cardinal_quintic_b_spline;
  p.table_ = std::make_shared<const Table>(
      Table{x0, dx, x0 + dx * double(f.size() - 1), cardinal_quintic_b_spline<double>(f, x0, dx),
            cardinal_quintic_b_spline<double>(g, x0, dx)});
  return p;
}

ProfileJet ProfileCurve::eval(double x) const {
  const double k = param_;
  ProfileJet J;
  switch (kind_) {
    case Kind::catenoid: {
      const double c = std::cosh(x), s = std::sinh(x);
      J = {k * c, k * s, k * c, k * s, k * x, k, 0, 0};
      break;
    }
    case Kind::knet_revolution: {
      const JacobiTriple j = jacobi(x, k * k);
      const double sn = j.sn, cn = j.cn, dn = j.dn, k2 = k * k;
      J.f = dn / k;
      J.f1 = -k * sn * cn;
      J.f2 = -k * dn * (cn * cn - sn * sn);
      J.f3 = k * sn * cn * (k2 * (cn * cn - sn * sn) + 4 * dn * dn);
      J.g = (integral_dn2(x, k2) - x) / k;
      J.g1 = -k * sn * sn;
      J.g2 = -2 * k * sn * cn * dn;
      J.g3 = -2 * k * (cn * cn * dn * dn - sn * sn * dn * dn - k2 * sn * sn * cn * cn);
      break;
    }
    case Kind::vnet_positive: {
      const JacobiTriple j = jacobi(x, k * k);
      const double sn = j.sn, cn = j.cn, dn = j.dn, k2 = k * k;
      if (dn == 0.0) throw SingularDomainError(Singularity::cusp, "vnet_positive profile: dn = 0 at x = " + fmt(x));
      const double d2 = dn * dn, d3 = d2 * dn;
      J.f = 1 / (k * dn);
      J.f1 = k * sn * cn / d2;
      J.f2 = k * ((cn * cn - sn * sn) / dn + 2 * k2 * sn * sn * cn * cn / d3);
      J.g = (integral_inv_dn2(x, k2) - x) / k;
      J.g1 = k * sn * sn / d2;
      J.g2 = 2 * k * sn * cn / d3;
      break;
    }
    case Kind::vnet_negative: {
      const JacobiTriple j = jacobi(x, k * k);
      const double sn = j.sn, cn = j.cn, dn = j.dn, k2 = k * k;
      if (!(sn > 0))
        throw SingularDomainError(Singularity::fold, "vnet_negative profile: needs sn > 0, x = " + fmt(x));
      const double s2 = sn * sn, s3 = s2 * sn;
      J.f = 1 / (k2 * sn);
      J.f1 = -cn * dn / (k2 * s2);
      J.f2 = ((dn * dn + k2 * cn * cn) / sn + 2 * cn * cn * dn * dn / s3) / k2;
      J.g = std::log(sn / (1 - cn)) / k2;
      J.g1 = -dn / (k2 * sn);
      J.g2 = (k2 * cn + cn * dn * dn / s2) / k2;
      break;
    }
    case Kind::tabulated: {
      const Table& t = *table_;
      if (x < t.x0 - 1e-12 * t.dx || x > t.x1 + 1e-12 * t.dx)
        throw DomainError("tabulated profile: x = " + fmt(x) + " outside the sampled range");
      const double xc = std::clamp(x, t.x0, t.x1);
      J.f = t.f(xc);
      J.f1 = t.f.prime(xc);
      J.f2 = t.f.double_prime(xc);
      J.g = t.g(xc);
      J.g1 = t.g.prime(xc);
      J.g2 = t.g.double_prime(xc);
      break;
    }
  }
  return J;
}

std::optional<double> ProfileCurve::inv_f2_integral(double x) const {
  const double k = param_;
  switch (kind_) {
    case Kind::knet_revolution:
      // g'/f^2 = -k (dn^-2 - 1)
      return -k * (integral_inv_dn2(x, k * k) - x);
    case Kind::catenoid:
      return std::tanh(x) / k;
    default:
      return std::nullopt;
  }
}

double ProfileCurve::anchor(double xlo, double xhi) const {
  switch (kind_) {
    case Kind::catenoid:
      return 0.0;
    case Kind::tabulated:
      return table_->x0;
    case Kind::knet_revolution:
    case Kind::vnet_positive: {
      const Interval s = domain_strip(param_, strip_containing(param_, 0.5 * (xlo + xhi)));
      return std::isfinite(s.lo) ? s.lo : s.hi;
    }
    case Kind::vnet_negative: {
      const Interval s = domain_strip(param_, strip_containing(param_, 0.5 * (xlo + xhi)));
      if (std::isfinite(s.width())) return 0.5 * (s.lo + s.hi);
      return std::isfinite(s.lo) ? s.lo + 1.0 : s.hi - 1.0;
    }
  }
  return 0.0;
}

void ProfileCurve::check_range(double xlo, double xhi) const {
  switch (kind_) {
    case Kind::catenoid:
      return;
    case Kind::tabulated:
      if (xlo < table_->x0 - 1e-12 || xhi > table_->x1 + 1e-12)
        throw DomainError("tabulated profile: range [" + fmt(xlo) + ", " + fmt(xhi) + "] outside samples");
      return;
    case Kind::knet_revolution:
    case Kind::vnet_positive:
      checked_strip(param_, xlo, xhi, "profile");
      return;
    case Kind::vnet_negative:
      checked_strip(param_, xlo, xhi, "profile");
      if (!(jacobi(0.5 * (xlo + xhi), param_ * param_).sn > 0))
        throw DomainError("vnet_negative profile: strip with sn < 0 is not supported");
      return;
  }
}

nlohmann::json ProfileCurve::describe() const {
  static const char* names[] = {"knet-revolution", "catenoid", "vnet-positive", "vnet-negative", "tabulated"};
  nlohmann::json j = {{"profile", names[int(kind_)]}, {"rate", rate_}};
  if (kind_ == Kind::catenoid) j["a"] = param_;
  else if (kind_ != Kind::tabulated) j["k"] = param_;
  else j["samples"] = {table_->x0, table_->dx, table_->x1};
  return j;
}

// ---------------------------------------------------------------- axial builder

namespace {

// X = (R cos(phi + phase), R sin(phi + phase), Z + p phi), phi = alpha y + Theta(x).
struct Axial {
  double R = 0, R1 = 0, R2 = 0;
  double Th = 0, Th1 = 0, Th2 = 0;
  double Z = 0, Z1 = 0, Z2 = 0;
};

struct AxialShape {
  double alpha = 1, p = 0, phase = 0;
};

// Distinct x values of the grid under a chart, with the index map back.
struct XSet {
  std::vector<double> xs;
  std::vector<int> index;  // per grid sample
};

double chart_x(const GridSpec& g, Chart c, int i, int j) { return c == Chart::direct ? g.u(i) : g.u(i) + g.v(j); }
double chart_y(const GridSpec& g, Chart c, int i, int j) { return c == Chart::direct ? g.v(j) : g.u(i) - g.v(j); }

XSet distinct_x(const GridSpec& g, Chart c) {
  std::vector<double> all;
  all.reserve(std::size_t(g.nu) * g.nv);
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) all.push_back(chart_x(g, c, i, j));
  std::vector<double> xs = all;
  std::sort(xs.begin(), xs.end());
  const double scale = std::max(1.0, std::max(std::abs(xs.front()), std::abs(xs.back())));
  std::vector<double> uniq;
  for (double x : xs)
    if (uniq.empty() || x - uniq.back() > 1e-13 * scale) uniq.push_back(x);
  XSet out{uniq, std::vector<int>(all.size())};
  for (std::size_t n = 0; n < all.size(); ++n) {
    auto it = std::lower_bound(uniq.begin(), uniq.end(), all[n] - 1e-13 * scale);
    out.index[n] = int(it - uniq.begin());
  }
  return out;
}

// Prefix integrals of f from anchor over sorted nodes.
std::vector<double> cumulative(const std::function<double(double)>& f, double anchor, const std::vector<double>& xs) {
  std::vector<double> nodes;
  nodes.reserve(xs.size() + 1);
  const auto pos = std::lower_bound(xs.begin(), xs.end(), anchor);
  nodes.insert(nodes.end(), xs.begin(), pos);
  nodes.push_back(anchor);
  nodes.insert(nodes.end(), pos, xs.end());
  const std::size_t a = std::size_t(pos - xs.begin());
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const int m = int(nodes.size()) - 1;
  std::vector<double> seg(nodes.size(), 0.0), err(nodes.size(), 0.0), l1(nodes.size(), 0.0);
  parallel_for(m, [&](int n) {
    const double lo = nodes[n], hi = nodes[n + 1];
    if (hi == lo) return;
    seg[n + 1] = GK::integrate(f, lo, hi, 0, 0.0, &err[n + 1], &l1[n + 1]);
    if (!std::isfinite(seg[n + 1])) throw SolverError("quadrature failed on [" + fmt(lo) + ", " + fmt(hi) + "]");
  });
  // error judged against the mean |f| over the whole range, not the segment value
  double fscale = 0;
  for (int n = 0; n < m; ++n)
    if (nodes[n + 1] > nodes[n]) fscale = std::max(fscale, l1[n + 1] / (nodes[n + 1] - nodes[n]));
  parallel_for(m, [&](int n) {
    const double lo = nodes[n], hi = nodes[n + 1];
    const double bound = 1e-13 * (l1[n + 1] + (hi - lo) * fscale);
    if (hi == lo || err[n + 1] <= bound) return;
    const double rel = bound / std::max(std::abs(seg[n + 1]), 1e-300);
    double e = 0;
    seg[n + 1] = GK::integrate(f, lo, hi, 12, std::min(rel, 1e-2), &e);
    if (!std::isfinite(seg[n + 1])) throw SolverError("quadrature failed on [" + fmt(lo) + ", " + fmt(hi) + "]");
  });
  std::vector<double> acc(nodes.size(), 0.0);
  for (std::size_t n = a + 1; n < nodes.size(); ++n) acc[n] = acc[n - 1] + seg[n];
  for (std::size_t n = a; n-- > 0;) acc[n] = acc[n + 1] - seg[n + 1];
  std::vector<double> out(xs.size());
  for (std::size_t n = 0; n < xs.size(); ++n) out[n] = acc[n < a ? n : n + 1];
  return out;
}

SurfaceGrid assemble(const GridSpec& g, Chart chart, const AxialShape& sh, const XSet& xset,
                     const std::vector<Axial>& ax, bool second) {
  SurfaceGrid S(g);
  S.allocate_derivatives(second);
  parallel_for(g.nu, [&](int i) {
    for (int j = 0; j < g.nv; ++j) {
      const Axial& a = ax[xset.index[std::size_t(i) * g.nv + j]];
      const double y = chart_y(g, chart, i, j);
      const double phi = sh.alpha * y + a.Th;
      const double c = std::cos(phi + sh.phase), s = std::sin(phi + sh.phase);
      const Vec3 er(c, s, 0), ephi(-s, c, 0), ez(0, 0, 1);
      S.pos(i, j) = a.R * er + (a.Z + sh.p * phi) * ez;
      const Vec3 Xx = a.R1 * er + a.R * a.Th1 * ephi + (a.Z1 + sh.p * a.Th1) * ez;
      const Vec3 Xy = sh.alpha * (a.R * ephi + sh.p * ez);
      if (chart == Chart::direct) {
        (*S.xu)(i, j) = Xx;
        (*S.xv)(i, j) = Xy;
      } else {
        (*S.xu)(i, j) = Xx + Xy;
        (*S.xv)(i, j) = Xx - Xy;
      }
      if (!second) continue;
      const Vec3 Xxx = (a.R2 - a.R * a.Th1 * a.Th1) * er + (2 * a.R1 * a.Th1 + a.R * a.Th2) * ephi +
                       (a.Z2 + sh.p * a.Th2) * ez;
      const Vec3 Xxy = sh.alpha * (a.R1 * ephi - a.R * a.Th1 * er);
      const Vec3 Xyy = -a.R * sh.alpha * sh.alpha * er;
      if (chart == Chart::direct) {
        (*S.xuu)(i, j) = Xxx;
        (*S.xuv)(i, j) = Xxy;
        (*S.xvv)(i, j) = Xyy;
      } else {
        (*S.xuu)(i, j) = Xxx + 2 * Xxy + Xyy;
        (*S.xuv)(i, j) = Xxx - Xyy;
        (*S.xvv)(i, j) = Xxx - 2 * Xxy + Xyy;
      }
    }
  });
  return S;
}

std::pair<double, double> x_bounds(const XSet& xs) { return {xs.xs.front(), xs.xs.back()}; }

nlohmann::json chart_name(Chart c) { return c == Chart::direct ? "direct" : "diagonal"; }

}  // namespace

SurfaceGrid revolution_surface(const ProfileCurve& profile, const GridSpec& grid, Chart chart) {
  grid.validate();
  const XSet xset = distinct_x(grid, chart);
  const auto [xlo, xhi] = x_bounds(xset);
  profile.check_range(xlo, xhi);
  std::vector<Axial> ax(xset.xs.size());
  parallel_for(int(ax.size()), [&](int n) {
    const ProfileJet J = profile.eval(xset.xs[n]);
    ax[n] = {J.f, J.f1, J.f2, 0, 0, 0, J.g, J.g1, J.g2};
  });
  SurfaceGrid S = assemble(grid, chart, {profile.rate(), 0, 0}, xset, ax, true);
  S.provenance = {{"family", "revolution"}, {"profile", profile.describe()}, {"chart", chart_name(chart)},
                  {"grid", grid.to_json()}};
  return S;
}

SurfaceGrid knet_revolution(double k, const GridSpec& grid) {
  grid.validate();
  require_positive(k, "modulus k");
  const double xlo = grid.u0 + grid.v0, xhi = grid.u1 + grid.v1;
  checked_strip(k, xlo, xhi, "knet_revolution");
  SurfaceGrid S = revolution_surface(ProfileCurve::knet_revolution(k), grid, Chart::diagonal);
  S.provenance = {{"family", "knet-revolution"},
                  {"k", k},
                  {"strip_index", strip_containing(k, 0.5 * (xlo + xhi))},
                  {"grid", grid.to_json()}};
  return S;
}

SurfaceGrid bour_immersion(const ProfileCurve& profile, BourParams bp, const GridSpec& grid, Chart chart) {
  grid.validate();
  const double s = bp.s, t = bp.t;
  if (!(s > 0) || !std::isfinite(s) || !std::isfinite(t)) throw DomainError("bour_immersion: need s > 0 and finite t");
  const XSet xset = distinct_x(grid, chart);
  const auto [xlo, xhi] = x_bounds(xset);
  profile.check_range(xlo, xhi);
  const double a = profile.rate(), a2 = a * a;

  struct Local {
    double E, E1, G, G1, G2, sigma;
  };
  auto local = [&](double x) {
    const ProfileJet J = profile.eval(x);
    return Local{J.f1 * J.f1 + J.g1 * J.g1,
                 2 * (J.f1 * J.f2 + J.g1 * J.g2),
                 a2 * J.f * J.f,
                 2 * a2 * J.f * J.f1,
                 2 * a2 * (J.f1 * J.f1 + J.f * J.f2),
                 J.g1 < 0 ? -1.0 : 1.0};
  };
  // Z'^2 and its derivative
  auto q_of = [&](const Local& L, double x, double* dq) {
    const double w = s * L.G - t * t;
    if (!(w > 0))
      throw DomainError("bour_immersion: s f^2 - t^2 <= 0 at x = " + fmt(x) + " (s = " + fmt(s) + ", t = " + fmt(t) +
                        ")");
    const double N = 4 * w * L.E - L.G1 * L.G1;
    const double D = 4 * w * w / s;
    const double Q = N * L.G / D;
    const double scale = (4 * w * L.E + L.G1 * L.G1) * L.G / D;
    if (Q < -1e-10 * scale)
      throw DomainError("bour_immersion: negative radicand at x = " + fmt(x) + " (s = " + fmt(s) + ", t = " + fmt(t) +
                        ")");
    if (dq) {
      const double N1 = 4 * s * L.G1 * L.E + 4 * w * L.E1 - 2 * L.G1 * L.G2;
      const double D1 = 8 * w * L.G1;
      *dq = (N1 * L.G + N * L.G1) / D - N * L.G * D1 / (D * D);
    }
    return std::make_pair(std::max(Q, 0.0), scale);
  };
  auto zprime = [&](double x) {
    const Local L = local(x);
    return L.sigma * std::sqrt(q_of(L, x, nullptr).first);
  };
  auto thprime = [&](double x) {
    const Local L = local(x);
    return t * L.sigma * std::sqrt(q_of(L, x, nullptr).first) / L.G;
  };
  const double anchor = profile.anchor(xlo, xhi);
  // Z' = 0 throughout: a helicoid. Isometry forces R' = sqrt(E), so R is the
  // signed root and passes smoothly through the axis where s f^2 = t^2.
  bool helicoid = t != 0.0;
  for (std::size_t n = 0; helicoid && n < xset.xs.size(); ++n) {
    const Local L = local(xset.xs[n]);
    const double w = s * L.G - t * t;
    const double N = 4 * w * L.E - L.G1 * L.G1;
    helicoid = std::abs(N) <= 1e-9 * (4 * (std::abs(w) + t * t) * L.E + L.G1 * L.G1) && w > -1e-12 * t * t;
  }
  if (helicoid) {
    std::vector<Axial> ax(xset.xs.size());
    parallel_for(int(ax.size()), [&](int n) {
      const Local L = local(xset.xs[n]);
      const double w = std::max(s * L.G - t * t, 0.0);
      const double sg = L.G1 > 0 ? 1.0 : (L.G1 < 0 ? -1.0 : 0.0);
      Axial A;
      A.R = sg * std::sqrt(w) / s;
      A.R1 = std::sqrt(L.E);
      A.R2 = L.E1 / (2 * A.R1);
      ax[n] = A;
    });
    SurfaceGrid S = assemble(grid, chart, {std::sqrt(s), -t / s, 0}, xset, ax, true);
    S.provenance = {{"family", "bour"}, {"profile", profile.describe()}, {"s", s}, {"t", t},
                    {"chart", chart_name(chart)}, {"helicoid", true}, {"grid", grid.to_json()}};
    return S;
  }
  const std::vector<double> Z = cumulative(zprime, anchor, xset.xs);
  const std::vector<double> Th = t == 0.0 ? std::vector<double>(xset.xs.size(), 0.0)
                                          : cumulative(thprime, anchor, xset.xs);

  std::vector<Axial> ax(xset.xs.size());
  parallel_for(int(ax.size()), [&](int n) {
    const double x = xset.xs[n];
    const Local L = local(x);
    double dq = 0;
    const auto [Q, scale] = q_of(L, x, &dq);
    const double w = s * L.G - t * t;
    Axial A;
    A.R = std::sqrt(w) / s;
    A.R1 = L.G1 / (2 * s * A.R);
    A.R2 = (L.G2 / (2 * s) - A.R1 * A.R1) / A.R;
    A.Z = Z[n];
    A.Z1 = L.sigma * std::sqrt(Q);
    A.Z2 = Q > 1e-12 * scale ? L.sigma * dq / (2 * std::sqrt(Q)) : 0.0;
    A.Th = Th[n];
    A.Th1 = t * A.Z1 / L.G;
    A.Th2 = t * (A.Z2 / L.G - A.Z1 * L.G1 / (L.G * L.G));
    ax[n] = A;
  });
  SurfaceGrid S = assemble(grid, chart, {std::sqrt(s), -t / s, 0}, xset, ax, true);
  S.provenance = {{"family", "bour"},       {"profile", profile.describe()}, {"s", s},
                  {"t", t},                 {"chart", chart_name(chart)},     {"anchor", anchor},
                  {"grid", grid.to_json()}};
  return S;
}

SurfaceGrid rotation_field_positive(const ProfileCurve& profile, const GridSpec& grid, Chart chart) {
  grid.validate();
  const XSet xset = distinct_x(grid, chart);
  const auto [xlo, xhi] = x_bounds(xset);
  profile.check_range(xlo, xhi);
  std::vector<double> H(xset.xs.size());
  const bool closed = profile.inv_f2_integral(xset.xs.front()).has_value();
  const double anchor = profile.anchor(xlo, xhi);
  if (closed) {
    const double h0 = *profile.inv_f2_integral(anchor);
    for (std::size_t n = 0; n < H.size(); ++n) H[n] = *profile.inv_f2_integral(xset.xs[n]) - h0;
  } else {
    H = cumulative(
        [&](double x) {
          const ProfileJet J = profile.eval(x);
          return J.g1 / (J.f * J.f);
        },
        anchor, xset.xs);
  }
  std::vector<Axial> ax(xset.xs.size());
  parallel_for(int(ax.size()), [&](int n) {
    const ProfileJet J = profile.eval(xset.xs[n]);
    if (!(J.f > 0)) throw DomainError("rotation_field_positive: f <= 0 at x = " + fmt(xset.xs[n]));
    const double f2 = J.f * J.f, f3 = f2 * J.f;
    Axial A;
    A.R = -1 / J.f;
    A.R1 = J.f1 / f2;
    A.R2 = J.f2 / f2 - 2 * J.f1 * J.f1 / f3;
    A.Z = H[n];
    A.Z1 = J.g1 / f2;
    A.Z2 = J.g2 / f2 - 2 * J.g1 * J.f1 / f3;
    ax[n] = A;
  });
  SurfaceGrid S = assemble(grid, chart, {profile.rate(), 0, 0}, xset, ax, true);
  S.provenance = {{"family", "rotation-positive"},
                  {"profile", profile.describe()},
                  {"chart", chart_name(chart)},
                  {"quadrature", closed ? "closed-form" : "gauss-kronrod"},
                  {"grid", grid.to_json()}};
  return S;
}

SurfaceGrid rotation_field_negative(const ProfileCurve& profile, const GridSpec& grid, Chart chart) {
  grid.validate();
  const XSet xset = distinct_x(grid, chart);
  const auto [xlo, xhi] = x_bounds(xset);
  profile.check_range(xlo, xhi);
  std::vector<Axial> ax(xset.xs.size());
  bool second = true;
  for (std::size_t n = 0; n < ax.size(); ++n) {
    const ProfileJet J = profile.eval(xset.xs[n]);
    if (J.g1 == 0.0 || !std::isfinite(J.g1))
      throw DomainError("rotation_field_negative: g' = 0 at x = " + fmt(xset.xs[n]));
    if (n > 0 && (J.g1 > 0) != (profile.eval(xset.xs[0]).g1 > 0))
      throw DomainError("rotation_field_negative: g' changes sign on the range");
    const double g2 = J.g1 * J.g1;
    Axial A;
    A.R = J.f1 / J.g1;
    const double num = J.f2 * J.g1 - J.f1 * J.g2;
    A.R1 = num / g2;
    if (std::isnan(J.f3) || std::isnan(J.g3)) second = false;
    else A.R2 = (J.f3 * J.g1 - J.f1 * J.g3) / g2 - 2 * J.g2 * num / (g2 * J.g1);
    ax[n] = A;
  }
  SurfaceGrid S = assemble(grid, chart, {profile.rate(), 1.0, -0.5 * std::numbers::pi}, xset, ax, second);
  S.provenance = {{"family", "rotation-negative"},
                  {"profile", profile.describe()},
                  {"chart", chart_name(chart)},
                  {"grid", grid.to_json()}};
  return S;
}

BourParams bour_params_first_kind(int sign, double k, double lambda, NegativeVariant variant) {
  require_positive(k, "modulus k");
  require_positive(lambda, "lambda");
  if (sign > 0) {
    const double t = 0.5 * (lambda - 1 / lambda);
    return {t * t + k * k, t};
  }
  if (sign == 0) throw DomainError("sign must be +1 or -1");
  const double t = -0.5 * (lambda + 1 / lambda);
  if (variant == NegativeVariant::corollary) return {t * t + k * k - 1, t};
  return {(k * k + t * t - 1) / (k * k), t};
}

SurfaceGrid first_kind_vnet(const FirstKindParams& P, const GridSpec& grid, NegativeVariant variant) {
  grid.validate();
  require_positive(P.k, "modulus k");
  require_positive(P.lambda, "lambda");
  if (P.sign != 1 && P.sign != -1) throw DomainError("first_kind_vnet: sign must be +1 or -1");
  checked_strip(P.k, grid.u0 + grid.v0, grid.u1 + grid.v1, "first_kind_vnet");
  BourParams bp = bour_params_first_kind(P.sign, P.k, P.lambda, variant);
  // lambda and 1/lambda share t in the negative family; the mirror y -> -y
  // (t -> -t) picks the member with L : N = lambda : -1/lambda.
  if (P.sign < 0 && P.lambda < 1) bp.t = -bp.t;
  const ProfileCurve profile = P.sign > 0 ? ProfileCurve::vnet_positive(P.k) : ProfileCurve::vnet_negative(P.k);
  SurfaceGrid S = bour_immersion(profile, bp, grid, Chart::diagonal);
  // orientation with L > 0
  const int ic = grid.nu / 2, jc = grid.nv / 2;
  const bool reflect = (*S.xuu)(ic, jc).dot((*S.xu)(ic, jc).cross((*S.xv)(ic, jc))) < 0;
  if (reflect) {
    auto flip = [](VectorField& F) {
      for (Vec3& p : F.data) p.z() = -p.z();
    };
    flip(S.pos);
    flip(*S.xu);
    flip(*S.xv);
    flip(*S.xuu);
    flip(*S.xuv);
    flip(*S.xvv);
  }
  S.provenance = {{"family", P.sign > 0 ? "first-kind-positive" : "first-kind-negative"},
                  {"k", P.k},
                  {"lambda", P.lambda},
                  {"s", bp.s},
                  {"t", bp.t},
                  {"variant", P.sign > 0 ? "n/a" : to_string(variant)},
                  {"reflected", reflect},
                  {"grid", grid.to_json()}};
  return S;
}

GridSpec squeeze_reparam(const GridSpec& g, double lambda) {
  require_positive(lambda, "lambda");
  GridSpec out = g;
  out.u0 = g.u0 * lambda;
  out.u1 = g.u1 * lambda;
  out.v0 = g.v0 / lambda;
  out.v1 = g.v1 / lambda;
  if (out.u0 > out.u1) std::swap(out.u0, out.u1);
  if (out.v0 > out.v1) std::swap(out.v0, out.v1);
  return out;
}

SurfaceGrid squeeze_reparam(const SurfaceGrid& S, double lambda) {
  SurfaceGrid out = S;
  out.spec = squeeze_reparam(S.spec, lambda);
  auto scale = [](std::optional<VectorField>& F, double c) {
    if (F)
      for (Vec3& p : F->data) p *= c;
  };
  scale(out.xu, 1 / lambda);
  scale(out.xv, lambda);
  scale(out.xuu, 1 / (lambda * lambda));
  scale(out.xvv, lambda * lambda);
  out.provenance["squeeze"] = lambda;
  return out;
}

GridSpec strip_grid(const Interval& x, int nu, int nv, double margin) {
  if (!std::isfinite(x.lo) || !std::isfinite(x.hi) || !(x.hi > x.lo))
    throw DomainError("strip_grid: need a finite x range");
  const double w = x.width();
  GridSpec g;
  g.u0 = g.v0 = 0.5 * (x.lo + margin * w);
  g.u1 = g.v1 = 0.5 * (x.hi - margin * w);
  g.nu = nu;
  g.nv = nv;
  g.margin = margin;
  g.validate();
  return g;
}

}  // namespace voss
