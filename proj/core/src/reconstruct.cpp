#include "voss/reconstruct.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Dense>
#include <boost/math/differentiation/autodiff.hpp>

#include "voss/error.hpp"
#include "voss/parallel.hpp"
#include "voss/surfaces.hpp"

namespace voss {
namespace {

namespace ad = boost::math::differentiation;

template <class T>
using Coeffs = std::array<T, 6>;

// w(z) from its jet at the constant part of z; exact through second order.
template <class T>
T compose(const T& z, double g0, double g1, double g2) {
  const T dz = z - static_cast<double>(z);
  return g0 + g1 * dz + 0.5 * g2 * dz * dz;
}

// sin, cos and 1/x through second order, which is all the samplers read.
template <class T>
T sin2(const T& x) {
  const double x0 = static_cast<double>(x);
  return compose(x, std::sin(x0), std::cos(x0), -std::sin(x0));
}
template <class T>
T cos2(const T& x) {
  const double x0 = static_cast<double>(x);
  return compose(x, std::cos(x0), -std::sin(x0), -std::cos(x0));
}
template <class T>
T inv2(const T& x) {
  const double r = 1 / static_cast<double>(x);
  return compose(x, r, -r * r, 2 * r * r * r);
}

// Both variables as the same fvar type.
template <class Fn, class Tuple>
auto lift(const Fn& fn, const Tuple& vars) {
  using A = std::tuple_element_t<0, Tuple>;
  using B = std::tuple_element_t<1, Tuple>;
  using T = ad::promote<A, B>;
  return fn(T(std::get<0>(vars)), T(std::get<1>(vars)));
}

template <class Fn>
FormSpec::Sampler sampler(Fn fn, bool second) {
  if (!second)
    return [fn](double u, double v) {
      const auto vars = ad::make_ftuple<double, 1, 1>(u, v);
      const auto c = lift(fn, vars);
      FormSample s;
      for (int n = 0; n < 6; ++n) {
        s.c[n] = c[n][0][0];
        s.cu[n] = c[n][1][0];
        s.cv[n] = c[n][0][1];
      }
      return s;
    };
  return [fn](double u, double v) {
    const auto vars = ad::make_ftuple<double, 2, 2>(u, v);
    const auto c = lift(fn, vars);
    FormSample s;
    // Taylor coefficients times i! j!
    for (int n = 0; n < 6; ++n) {
      s.c[n] = c[n][0][0];
      s.cu[n] = c[n][1][0];
      s.cv[n] = c[n][0][1];
      s.cuu[n] = 2 * c[n][2][0];
      s.cuv[n] = c[n][1][1];
      s.cvv[n] = 2 * c[n][0][2];
    }
    return s;
  };
}

template <class Fn>
FormSpec make_spec(std::string name, nlohmann::json params, GridSpec grid, FormSpec::Domain dom, Fn fn) {
  return FormSpec(std::move(name), std::move(params), grid, std::move(dom), sampler(fn, false), sampler(fn, true));
}

// Shared shape of the V-net forms: I = a(du^2/p^2 + 2 s cos w du dv/(p q) + dv^2/q^2),
// II = (l du^2/p + n dv^2/q) where p, q are the coordinate weights.
template <class T>
Coeffs<T> vnet_coeffs(int sign, const T& w, double lambda, const T& p, const T& q) {
  const T h = 0.5 * w, ip = inv2(p), iq = inv2(q), cw = cos2(w);
  Coeffs<T> c;
  if (sign > 0) {
    const T s = inv2(sin2(h));
    const T a = s * s * s * s, ct = cos2(h) * s;
    c = {a * ip * ip, a * cw * ip * iq, a * iq * iq, 2 * lambda * ct * ip, T(0), 2 / lambda * ct * iq};
  } else {
    const T s = inv2(cos2(h));
    const T a = s * s * s * s, tn = sin2(h) * s;
    c = {a * ip * ip, -a * cw * ip * iq, a * iq * iq, 2 * lambda * tn * ip, T(0), -2 / lambda * tn * iq};
  }
  return c;
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw DomainError("forms: sign must be +1 or -1");
}

std::shared_ptr<const AmslerAngle> need(std::shared_ptr<const AmslerAngle> sol, double k) {
  if (!sol) throw DomainError("forms: missing Painleve III solution");
  if (std::abs(sol->k() - k) > 1e-12) throw DomainError("forms: solution was computed for another k");
  if (!(k > 0 && k < M_PI)) throw DomainError("forms: k must lie in (0, pi)");
  return sol;
}

double radius_limit(const AmslerAngle& s, double margin) {
  const double rc = s.r_first_cusp();
  return (1 - margin) * (std::isfinite(rc) ? rc : s.r_max());
}

struct Christoffel {
  double g111, g211, g112, g212, g122, g222;
};

Christoffel christoffel(const FormSample& s) {
  const double E = s.c[0], F = s.c[1], G = s.c[2];
  const double Eu = s.cu[0], Ev = s.cv[0], Fu = s.cu[1], Fv = s.cv[1], Gu = s.cu[2], Gv = s.cv[2];
  const double d = 2 * (E * G - F * F);
  return {(G * Eu - 2 * F * Fu + F * Ev) / d, (2 * E * Fu - E * Ev - F * Eu) / d,
          (G * Ev - F * Gu) / d,              (E * Gu - F * Ev) / d,
          (2 * G * Fv - G * Gu - F * Gv) / d, (E * Gv - 2 * F * Fv + F * Gu) / d};
}

// Frame columns: position, X_u, X_v, n.
using Frame = Eigen::Matrix<double, 3, 4>;

Frame frame_rhs(const FormSpec& spec, double u, double v, const Frame& f, int dir) {
  const FormSample s = spec.sample(u, v);
  const Christoffel g = christoffel(s);
  Eigen::Matrix2d I, II;
  I << s.c[0], s.c[1], s.c[1], s.c[2];
  II << s.c[3], s.c[4], s.c[4], s.c[5];
  const Eigen::Matrix2d S = I.inverse() * II;
  const Vec3 a = f.col(1), b = f.col(2), n = f.col(3);
  const Vec3 xuv = g.g112 * a + g.g212 * b + s.c[4] * n;
  Frame d;
  if (dir == 0) {
    d.col(0) = a;
    d.col(1) = g.g111 * a + g.g211 * b + s.c[3] * n;
    d.col(2) = xuv;
    d.col(3) = -(S(0, 0) * a + S(1, 0) * b);
  } else {
    d.col(0) = b;
    d.col(1) = xuv;
    d.col(2) = g.g122 * a + g.g222 * b + s.c[5] * n;
    d.col(3) = -(S(0, 1) * a + S(1, 1) * b);
  }
  return d;
}

struct GramTracker {
  int steps = 0, projections = 0;
  double worst = 0;
};

double gram_drift(const FormSpec& spec, double u, double v, const Frame& f) {
  const FormSample s = spec.sample(u, v);
  const Vec3 a = f.col(1), b = f.col(2), n = f.col(3);
  const double scale = std::sqrt(s.c[0] * s.c[2]);
  double d = std::abs(a.dot(a) - s.c[0]) / s.c[0];
  d = std::max(d, std::abs(b.dot(b) - s.c[2]) / s.c[2]);
  d = std::max(d, std::abs(a.dot(b) - s.c[1]) / scale);
  d = std::max(d, std::abs(n.dot(n) - 1));
  d = std::max(d, std::abs(n.dot(a)) / std::sqrt(s.c[0]));
  d = std::max(d, std::abs(n.dot(b)) / std::sqrt(s.c[2]));
  return d;
}

// Replace (X_u, X_v, n) by the nearest frame with the prescribed Gram matrix.
void project(const FormSpec& spec, double u, double v, Frame& f) {
  const FormSample s = spec.sample(u, v);
  Eigen::Matrix3d P;
  P << f.col(1), f.col(2), f.col(3);
  Eigen::Matrix3d T = Eigen::Matrix3d::Identity();
  T(0, 0) = s.c[0];
  T(0, 1) = T(1, 0) = s.c[1];
  T(1, 1) = s.c[2];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(P.transpose() * P), et(T);
  const Eigen::Matrix3d Q = P * es.operatorInverseSqrt() * et.operatorSqrt();
  f.col(1) = Q.col(0);
  f.col(2) = Q.col(1);
  f.col(3) = Q.col(2);
}

Frame march(const FormSpec& spec, Frame f, double u, double v, double h, int dir, int substeps,
            const GaussWeingartenOptions& opt, GramTracker& gt) {
  const double step = h / substeps;
  for (int k = 0; k < substeps; ++k) {
    const double du = dir == 0 ? step : 0, dv = dir == 1 ? step : 0;
    const Frame k1 = frame_rhs(spec, u, v, f, dir);
    const Frame k2 = frame_rhs(spec, u + du / 2, v + dv / 2, f + step / 2 * k1, dir);
    const Frame k3 = frame_rhs(spec, u + du / 2, v + dv / 2, f + step / 2 * k2, dir);
    const Frame k4 = frame_rhs(spec, u + du, v + dv, f + step * k3, dir);
    f += step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    u += du;
    v += dv;
    if (++gt.steps % opt.gram_check_every == 0) {
      const double d = gram_drift(spec, u, v, f);
      gt.worst = std::max(gt.worst, d);
      if (!(d <= opt.gram_fail))
        throw SolverError("integrate_gauss_weingarten: Gram drift " + std::to_string(d) + " beyond failure limit");
      if (d > opt.gram_project) {
        project(spec, u, v, f);
        ++gt.projections;
      }
    }
  }
  return f;
}

struct Sweep {
  VectorField pos;
  GramTracker gram;
};

Sweep sweep(const FormSpec& spec, const GridSpec& g, const Frame& seed, const GaussWeingartenOptions& opt,
            bool u_first) {
  Sweep out{VectorField(g.nu, g.nv, Vec3::Zero()), {}};
  const int d0 = u_first ? 0 : 1, d1 = 1 - d0;
  const int n0 = u_first ? g.nu : g.nv, n1 = u_first ? g.nv : g.nu;
  const double h0 = u_first ? g.du() : g.dv(), h1 = u_first ? g.dv() : g.du();
  auto uv = [&](int a, int b) {
    return u_first ? std::pair{g.u(a), g.v(b)} : std::pair{g.u(b), g.v(a)};
  };
  auto put = [&](int a, int b, const Frame& f) {
    if (u_first) out.pos(a, b) = f.col(0);
    else out.pos(b, a) = f.col(0);
  };
  std::vector<Frame> base(n0);
  base[0] = seed;
  for (int a = 1; a < n0; ++a) {
    const auto [u, v] = uv(a - 1, 0);
    base[a] = march(spec, base[a - 1], u, v, h0, d0, opt.substeps, opt, out.gram);
  }
  std::vector<GramTracker> trackers(n0);
  parallel_for(n0, [&](int a) {
    Frame f = base[a];
    put(a, 0, f);
    for (int b = 1; b < n1; ++b) {
      const auto [u, v] = uv(a, b - 1);
      f = march(spec, f, u, v, h1, d1, opt.substeps, opt, trackers[a]);
      put(a, b, f);
    }
  });
  for (const auto& t : trackers) {
    out.gram.worst = std::max(out.gram.worst, t.worst);
    out.gram.projections += t.projections;
    out.gram.steps += t.steps;
  }
  return out;
}

}  // namespace

FormSpec::FormSpec(std::string name, nlohmann::json params, GridSpec grid, Domain domain, Sampler first,
                   Sampler second)
    : name_(std::move(name)),
      params_(std::move(params)),
      grid_(grid),
      domain_(std::move(domain)),
      first_(std::move(first)),
      second_(std::move(second)) {}

void FormSpec::check_grid(const GridSpec& g) const {
  g.validate();
  for (double u : {g.u0, g.u1})
    for (double v : {g.v0, g.v1})
      if (!contains(u, v))
        throw SingularDomainError(Singularity::cusp, name_ + ": grid corner (" + std::to_string(u) + ", " +
                                                         std::to_string(v) + ") outside the form domain");
}

FormSample FormSpec::sample(double u, double v) const {
  if (!contains(u, v)) throw DomainError(name_ + ": sample outside the form domain");
  return first_(u, v);
}

FormSample FormSpec::sample2(double u, double v) const {
  if (!contains(u, v)) throw DomainError(name_ + ": sample outside the form domain");
  return second_(u, v);
}

FormSpec FormSpec::perturbed_n(double eps) const {
  auto scale = [eps](Sampler s) {
    return [s, eps](double u, double v) {
      FormSample x = s(u, v);
      for (auto* a : {&x.c, &x.cu, &x.cv, &x.cuu, &x.cuv, &x.cvv}) (*a)[FormSample::N] *= 1 + eps;
      return x;
    };
  };
  nlohmann::json p = params_;
  p["n_perturbation"] = eps;
  return FormSpec(name_ + "-perturbed", p, grid_, domain_, scale(first_), scale(second_));
}

FormSpec plane_forms() {
  GridSpec g{0, 1, 0, 1, 64, 64, 0};
  return make_spec("plane", nlohmann::json::object(), g, [](double, double) { return true; },
                   [](const auto& u, const auto&) {
                     using T = std::decay_t<decltype(u)>;
                     return Coeffs<T>{T(1), T(0), T(1), T(0), T(0), T(0)};
                   });
}

FormSpec sphere_forms() {
  GridSpec g{0.3, 2.8, 0, 2, 64, 64, 0};
  return make_spec("sphere", nlohmann::json::object(), g,
                   [](double u, double) { return u > 0 && u < M_PI; },
                   [](const auto& u, const auto&) {
                     using T = std::decay_t<decltype(u)>;
                     const T s2 = sin2(u) * sin2(u);
                     return Coeffs<T>{T(1), T(0), s2, T(1), T(0), s2};
                   });
}

FormSpec first_kind_forms(int sign, double k, double lambda, int strip_index) {
  check_sign(sign);
  if (!(k > 0) || !std::isfinite(k)) throw DomainError("first_kind_forms: k must be > 0");
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("first_kind_forms: lambda must be > 0");
  const RevolutionAngle om{k, strip_index};
  const Interval strip = om.strip();
  Interval x = om.inset(1e-3);
  if (!std::isfinite(x.lo)) x.lo = x.hi - 4;
  if (!std::isfinite(x.hi)) x.hi = x.lo + 4;
  const GridSpec g = strip_grid(x, 64, 64, 0);
  auto fn = [om, sign, lambda](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    const T z = u + v;
    const double x0 = static_cast<double>(z);
    const double w0 = om(x0);
    const T w = compose(z, w0, om.dx(x0), std::sin(w0));
    return vnet_coeffs(sign, w, lambda, T(1), T(1));
  };
  nlohmann::json p = {{"sign", sign}, {"k", k}, {"lambda", lambda}, {"strip_index", strip_index}};
  return make_spec("first-kind", p, g, [strip](double u, double v) { return strip.contains(u + v); }, fn);
}

FormSpec second_kind_forms(int sign, double k, double lambda, std::shared_ptr<const AmslerAngle> sol,
                           double margin) {
  check_sign(sign);
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("second_kind_forms: lambda must be > 0");
  sol = need(std::move(sol), k);
  const double rlim = radius_limit(*sol, margin);
  const double b = 0.45 * rlim;
  GridSpec g{0.2 * b, b, 0.2 * b, b, 64, 64, margin};
  auto fn = [sol, sign, lambda](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    const T z = u * v;
    const AmslerAngle::Jet j = sol->similarity(static_cast<double>(z));
    return vnet_coeffs(sign, compose(z, j.w, j.w1, j.w2), lambda, u, v);
  };
  nlohmann::json p = {{"sign", sign}, {"k", k}, {"lambda", lambda}, {"r_limit", rlim}};
  return make_spec("second-kind", p, g,
                   [rlim](double u, double v) { return u > 0 && v > 0 && 2 * std::sqrt(u * v) < rlim; }, fn);
}

FormSpec counterexample_forms(int sign, double k, std::shared_ptr<const AmslerAngle> sol, double margin) {
  check_sign(sign);
  sol = need(std::move(sol), k);
  const double rlim = radius_limit(*sol, margin);
  // r = u v / 2 in these coordinates
  const double b = std::min(2.0, std::sqrt(2 * rlim) * 0.95);
  GridSpec g{0.5 * b, b, 0.5 * b, b, 64, 64, margin};
  auto fn = [sol, sign](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    const T z = u * u * v * v / 16.0;
    const AmslerAngle::Jet j = sol->similarity(static_cast<double>(z));
    const T w = compose(z, j.w, j.w1, j.w2), h = 0.5 * w, iu = inv2(u), iv = inv2(v), cw = cos2(w);
    if (sign > 0) {
      const T s = inv2(sin2(h)), a = 4 * s * s * s * s, l = 2 * cos2(h) * s;
      return Coeffs<T>{a * iu * iu, a * cw * iu * iv, a * iv * iv, l, T(0), l};
    }
    const T s = inv2(cos2(h)), a = 4 * s * s * s * s, l = 2 * sin2(h) * s;
    return Coeffs<T>{a * iu * iu, -a * cw * iu * iv, a * iv * iv, l, T(0), -l};
  };
  nlohmann::json p = {{"sign", sign}, {"k", k}, {"r_limit", rlim}};
  return make_spec("counterexample", p, g,
                   [rlim](double u, double v) { return u > 0 && v > 0 && u * v / 2 < rlim; }, fn);
}

FundamentalForms evaluate_forms(const FormSpec& spec, const GridSpec& g) {
  spec.check_grid(g);
  FundamentalForms f{g, {g.nu, g.nv}, {g.nu, g.nv}, {g.nu, g.nv}, {g.nu, g.nv},
                     {g.nu, g.nv}, {g.nu, g.nv}, {g.nu, g.nv, Vec3::Zero()}};
  ScalarField* out[6] = {&f.E, &f.F, &f.G, &f.L, &f.M, &f.N};
  parallel_for(g.nu, [&](int i) {
    for (int j = 0; j < g.nv; ++j) {
      const FormSample s = spec.sample(g.u(i), g.v(j));
      for (int n = 0; n < 6; ++n) (*out[n])(i, j) = s.c[n];
    }
  });
  return f;
}

double form_mismatch(const FundamentalForms& a, const FundamentalForms& b) {
  if (a.E.nu != b.E.nu || a.E.nv != b.E.nv) throw DomainError("form_mismatch: grid mismatch");
  auto nrm = [](double e, double f, double g) { return std::sqrt(e * e + 2 * f * f + g * g); };
  double worst = 0;
  for (std::size_t n = 0; n < a.E.data.size(); ++n) {
    const double i_ref = nrm(b.E.data[n], b.F.data[n], b.G.data[n]);
    const double ii_ref = nrm(b.L.data[n], b.M.data[n], b.N.data[n]);
    const double di = nrm(a.E.data[n] - b.E.data[n], a.F.data[n] - b.F.data[n], a.G.data[n] - b.G.data[n]);
    const double dii = nrm(a.L.data[n] - b.L.data[n], a.M.data[n] - b.M.data[n], a.N.data[n] - b.N.data[n]);
    worst = std::max({worst, di / (i_ref + 1e-12), dii / (ii_ref + 1e-12)});
    if (!std::isfinite(di) || !std::isfinite(dii)) return std::numeric_limits<double>::infinity();
  }
  return worst;
}

VerificationReport gauss_codazzi_residual(const FormSpec& spec, const GridSpec& g, double tol) {
  spec.check_grid(g);
  const std::size_t count = std::size_t(g.nu) * g.nv;
  std::vector<double> gauss(count), c1(count), c2(count), sg(count), s1(count), s2(count);
  parallel_for(g.nu, [&](int i) {
    for (int j = 0; j < g.nv; ++j) {
      const std::size_t n = std::size_t(i) * g.nv + j;
      const FormSample s = spec.sample2(g.u(i), g.v(j));
      const double E = s.c[0], F = s.c[1], G = s.c[2], L = s.c[3], M = s.c[4], N = s.c[5];
      const double det = E * G - F * F;
      if (!(det > 0)) throw DegenerateError("gauss_codazzi_residual: degenerate first form");
      Eigen::Matrix3d A, B;
      A << -0.5 * s.cvv[0] + s.cuv[1] - 0.5 * s.cuu[2], 0.5 * s.cu[0], s.cu[1] - 0.5 * s.cv[0],
          s.cv[1] - 0.5 * s.cu[2], E, F, 0.5 * s.cv[2], F, G;
      B << 0, 0.5 * s.cv[0], 0.5 * s.cu[2], 0.5 * s.cv[0], E, F, 0.5 * s.cu[2], F, G;
      const double kb = (A.determinant() - B.determinant()) / (det * det);
      const double kii = (L * N - M * M) / det;
      gauss[n] = kb - kii;
      sg[n] = std::abs(kb) + std::abs(kii);
      const Christoffel c = christoffel(s);
      const double l1 = s.cv[3] - s.cu[4];
      const double r1 = L * c.g112 + M * (c.g212 - c.g111) - N * c.g211;
      const double l2 = s.cv[4] - s.cu[5];
      const double r2 = L * c.g122 + M * (c.g222 - c.g112) - N * c.g212;
      c1[n] = l1 - r1;
      c2[n] = l2 - r2;
      s1[n] = std::abs(s.cv[3]) + std::abs(s.cu[4]) + std::abs(r1);
      s2[n] = std::abs(s.cv[4]) + std::abs(s.cu[5]) + std::abs(r2);
    }
  });
  auto normalize = [](std::vector<double>& r, const std::vector<double>& s) {
    double m = 0;
    for (double x : s) m = std::max(m, x);
    for (double& x : r) x /= m + 1e-300;
  };
  normalize(gauss, sg);
  normalize(c1, s1);
  normalize(c2, s2);
  VerificationReport r;
  r.add_samples("gauss", gauss, tol);
  r.add_samples("codazzi_1", c1, tol);
  r.add_samples("codazzi_2", c2, tol);
  r.provenance["forms"] = {{"name", spec.name()}, {"params", spec.params()}, {"grid", g.to_json()}};
  return r;
}

FrameState default_seed(const FormSpec& spec, double u, double v) {
  const FormSample s = spec.sample(u, v);
  const double E = s.c[0], F = s.c[1], G = s.c[2];
  if (!(E > 0) || !(E * G - F * F > 0)) throw DegenerateError("default_seed: degenerate first form");
  FrameState f;
  f.tangent_u = Vec3(std::sqrt(E), 0, 0);
  f.tangent_v = Vec3(F / std::sqrt(E), std::sqrt(G - F * F / E), 0);
  f.normal = Vec3::UnitZ();
  return f;
}

SurfaceGrid integrate_gauss_weingarten(const FormSpec& spec, const GridSpec& g, const GaussWeingartenOptions& opt) {
  spec.check_grid(g);
  return integrate_gauss_weingarten(spec, g, default_seed(spec, g.u0, g.v0), opt);
}

SurfaceGrid integrate_gauss_weingarten(const FormSpec& spec, const GridSpec& g, const FrameState& seed,
                                       const GaussWeingartenOptions& opt) {
  spec.check_grid(g);
  if (opt.substeps < 1 || opt.gram_check_every < 1) throw DomainError("integrate_gauss_weingarten: bad options");
  Frame f0;
  f0 << seed.position, seed.tangent_u, seed.tangent_v, seed.normal;
  const double d0 = gram_drift(spec, g.u0, g.v0, f0);
  if (d0 > 1e-8 || seed.tangent_u.cross(seed.tangent_v).dot(seed.normal) <= 0)
    throw DomainError("integrate_gauss_weingarten: seed frame inconsistent with the first form");
  const Sweep a = sweep(spec, g, f0, opt, true);
  double closure = 0;
  if (opt.cross_path) {
    const Sweep b = sweep(spec, g, f0, opt, false);
    Vec3 lo = a.pos.data[0], hi = lo;
    for (std::size_t n = 0; n < a.pos.data.size(); ++n) {
      closure = std::max(closure, (a.pos.data[n] - b.pos.data[n]).norm());
      lo = lo.cwiseMin(a.pos.data[n]);
      hi = hi.cwiseMax(a.pos.data[n]);
    }
    closure /= std::max((hi - lo).norm(), 1e-300);
  }
  SurfaceGrid out(g);
  out.pos = a.pos;
  out.provenance = {{"family", "gauss-weingarten"},
                    {"forms", spec.name()},
                    {"params", spec.params()},
                    {"grid", g.to_json()},
                    {"substeps", opt.substeps},
                    {"gram_max_drift", a.gram.worst},
                    {"reorthonormalizations", a.gram.projections},
                    {"closure_residual", closure}};
  return out;
}

}  // namespace voss
