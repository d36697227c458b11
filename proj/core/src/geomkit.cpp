#include "voss/geomkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "voss/error.hpp"
#include "voss/parallel.hpp"

namespace voss {
namespace {

constexpr double kEps = 1e-12;

// Fornberg weights for the m-th derivative at z from nodes x.
std::vector<double> fornberg(double z, const std::vector<double>& x, int m) {
  const int n = int(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1, c4 = x[0] - z;
  c[0][0] = 1;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

struct Stencil {
  int start;
  std::vector<double> w;
};

// Stencils for every index of a line of n samples, unit spacing.
std::vector<Stencil> stencils(int n, int m) {
  const int central = 7, edge = m <= 2 ? 8 : 9;
  if (n < std::min(central, edge) || n < m + 1)
    throw DomainError("differentiate: need at least " + std::to_string(edge) + " samples per line");
  std::vector<Stencil> out(n);
  for (int i = 0; i < n; ++i) {
    const int half = central / 2;
    int width = central, start = i - half;
    if (start < 0 || start + central > n) {
      width = std::min(edge, n);
      start = std::clamp(i - width / 2, 0, n - width);
    }
    std::vector<double> x(width);
    for (int k = 0; k < width; ++k) x[k] = start + k;
    out[i] = {start, fornberg(double(i), x, m)};
  }
  return out;
}

template <class T>
T zero_like([[maybe_unused]] const T& v) {
  if constexpr (std::is_arithmetic_v<T>) return T(0);
  else return T::Zero();
}

template <class T>
Field<T> diff_field(const Field<T>& f, double h, int dir, int m) {
  const int n = dir == 0 ? f.nu : f.nv;
  const auto st = stencils(n, m);
  const double scale = 1.0 / std::pow(h, m);
  Field<T> out(f.nu, f.nv, zero_like(f.data[0]));
  parallel_for(f.nu, [&](int i) {
    for (int j = 0; j < f.nv; ++j) {
      const Stencil& s = st[dir == 0 ? i : j];
      T acc = zero_like(f.data[0]);
      for (std::size_t k = 0; k < s.w.size(); ++k)
        acc += s.w[k] * (dir == 0 ? f(s.start + int(k), j) : f(i, s.start + int(k)));
      out(i, j) = acc * scale;
    }
  });
  return out;
}

double frob(double e, double f, double g) { return std::sqrt(e * e + 2 * f * f + g * g); }

Eigen::Matrix2d mat(const ScalarField& e, const ScalarField& f, const ScalarField& g, int i, int j) {
  Eigen::Matrix2d a;
  a << e(i, j), f(i, j), f(i, j), g(i, j);
  return a;
}

std::vector<double> line(int n, const std::function<double(int)>& at) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = at(k);
  return v;
}

// Integral over samples [a, b] of a full line: each interval uses the
// 6-point interpolant through its neighbours, so thin loops keep full order.
double line_integral(const std::vector<double>& y, int a, int b, double h) {
  static const std::array<Eigen::Matrix<double, 6, 1>, 5> W = [] {
    std::array<Eigen::Matrix<double, 6, 1>, 5> out;
    Eigen::Matrix<double, 6, 6> V;
    for (int p = 0; p < 6; ++p)
      for (int i = 0; i < 6; ++i) V(p, i) = std::pow(double(i), p);
    for (int t = 0; t < 5; ++t) {
      Eigen::Matrix<double, 6, 1> m;
      for (int p = 0; p < 6; ++p) m(p) = (std::pow(t + 1.0, p + 1) - std::pow(double(t), p + 1)) / (p + 1);
      out[t] = V.colPivHouseholderQr().solve(m);
    }
    return out;
  }();
  const int n = int(y.size());
  if (n < 6) {
    double s = 0;
    for (int k = a; k < b; ++k) s += h * (y[k] + y[k + 1]) / 2;
    return s;
  }
  double s = 0;
  for (int k = a; k < b; ++k) {
    const int start = std::clamp(k - 2, 0, n - 6);
    const auto& w = W[k - start];
    for (int i = 0; i < 6; ++i) s += w(i) * y[start + i];
  }
  return h * s;
}

// Cumulative integral of samples f with fourth-order local weights.
template <class T>
std::vector<T> cumulative(const std::vector<T>& f, double h) {
  const int n = int(f.size());
  std::vector<T> out(n, zero_like(f[0]));
  for (int k = 0; k + 1 < n; ++k) {
    T step;
    if (n < 4) step = (f[k] + f[k + 1]) * (h / 2);
    else if (k == 0) step = (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]) * (h / 24);
    else if (k == n - 2) step = (9 * f[n - 1] + 19 * f[n - 2] - 5 * f[n - 3] + f[n - 4]) * (h / 24);
    else step = (-1 * f[k - 1] + 13 * f[k] + 13 * f[k + 1] - f[k + 2]) * (h / 24);
    out[k + 1] = out[k] + step;
  }
  return out;
}

double bbox_diag(const VectorField& p) {
  Vec3 lo = p.data[0], hi = p.data[0];
  for (const Vec3& x : p.data) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  return (hi - lo).norm();
}

}  // namespace

std::vector<double> differentiate(const std::vector<double>& f, double h, int m) {
  Field<double> g(int(f.size()), 1);
  g.data = f;
  return diff_field(g, h, 0, m).data;
}

SurfaceDerivatives surface_derivatives(const SurfaceGrid& s) {
  s.spec.validate();
  const double du = s.spec.du(), dv = s.spec.dv();
  SurfaceDerivatives d;
  if (s.has_d1()) {
    d.xu = *s.xu;
    d.xv = *s.xv;
  } else {
    d.xu = diff_field(s.pos, du, 0, 1);
    d.xv = diff_field(s.pos, dv, 1, 1);
  }
  if (s.has_d2()) {
    d.xuu = *s.xuu;
    d.xuv = *s.xuv;
    d.xvv = *s.xvv;
  } else if (s.has_d1()) {
    d.xuu = diff_field(d.xu, du, 0, 1);
    d.xvv = diff_field(d.xv, dv, 1, 1);
    d.xuv = diff_field(d.xu, dv, 1, 1);
    const VectorField alt = diff_field(d.xv, du, 0, 1);
    for (std::size_t n = 0; n < alt.data.size(); ++n) d.xuv.data[n] = 0.5 * (d.xuv.data[n] + alt.data[n]);
  } else {
    d.xuu = diff_field(s.pos, du, 0, 2);
    d.xvv = diff_field(s.pos, dv, 1, 2);
    d.xuv = diff_field(d.xu, dv, 1, 1);
  }
  return d;
}

FundamentalForms fundamental_forms(const SurfaceGrid& s) {
  const SurfaceDerivatives d = surface_derivatives(s);
  const int nu = s.spec.nu, nv = s.spec.nv;
  FundamentalForms f{s.spec, {nu, nv}, {nu, nv}, {nu, nv}, {nu, nv}, {nu, nv}, {nu, nv}, {nu, nv}};
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const Vec3 &xu = d.xu(i, j), &xv = d.xv(i, j);
      const double E = xu.dot(xu), F = xu.dot(xv), G = xv.dot(xv);
      const double det = E * G - F * F;
      if (!(det > 0))
        throw DegenerateError("fundamental_forms: EG - F^2 <= 0 at sample (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      const Vec3 n = xu.cross(xv).normalized();
      f.E(i, j) = E;
      f.F(i, j) = F;
      f.G(i, j) = G;
      f.L(i, j) = d.xuu(i, j).dot(n);
      f.M(i, j) = d.xuv(i, j).dot(n);
      f.N(i, j) = d.xvv(i, j).dot(n);
      f.normal(i, j) = n;
    }
  return f;
}

std::pair<ScalarField, ScalarField> curvatures(const FundamentalForms& f) {
  ScalarField K(f.E.nu, f.E.nv), H(f.E.nu, f.E.nv);
  for (std::size_t n = 0; n < K.data.size(); ++n) {
    const double E = f.E.data[n], F = f.F.data[n], G = f.G.data[n];
    const double L = f.L.data[n], M = f.M.data[n], N = f.N.data[n];
    const double det = E * G - F * F;
    if (!(det > 0)) throw DegenerateError("curvatures: degenerate first form at sample " + std::to_string(n));
    K.data[n] = (L * N - M * M) / det;
    H.data[n] = (E * N - 2 * F * M + G * L) / (2 * det);
  }
  return {K, H};
}

SymForm third_form(const FundamentalForms& f) {
  const auto [K, H] = curvatures(f);
  SymForm t{{f.E.nu, f.E.nv}, {f.E.nu, f.E.nv}, {f.E.nu, f.E.nv}};
  for (std::size_t n = 0; n < K.data.size(); ++n) {
    t.e.data[n] = 2 * H.data[n] * f.L.data[n] - K.data[n] * f.E.data[n];
    t.f.data[n] = 2 * H.data[n] * f.M.data[n] - K.data[n] * f.F.data[n];
    t.g.data[n] = 2 * H.data[n] * f.N.data[n] - K.data[n] * f.G.data[n];
  }
  return t;
}

LineCurvatures geodesic_curvature_lines(const SurfaceGrid& s) {
  const SurfaceDerivatives d = surface_derivatives(s);
  const int nu = s.spec.nu, nv = s.spec.nv;
  LineCurvatures k{{nu, nv}, {nu, nv}};
  for (std::size_t n = 0; n < k.u.data.size(); ++n) {
    const Vec3 &xu = d.xu.data[n], &xv = d.xv.data[n];
    const double su = xu.norm(), sv = xv.norm();
    if (!(su > 0) || !(sv > 0)) throw DegenerateError("geodesic_curvature_lines: zero speed at sample " + std::to_string(n));
    const Vec3 nrm = xu.cross(xv).normalized();
    k.u.data[n] = d.xuu.data[n].dot(nrm.cross(xu)) / (su * su * su);
    k.v.data[n] = d.xvv.data[n].dot(nrm.cross(xv)) / (sv * sv * sv);
  }
  return k;
}

FrenetLines frenet_lines(const SurfaceGrid& s) {
  const SurfaceDerivatives d = surface_derivatives(s);
  const int nu = s.spec.nu, nv = s.spec.nv;
  const VectorField xuuu = diff_field(d.xuu, s.spec.du(), 0, 1);
  const VectorField xvvv = diff_field(d.xvv, s.spec.dv(), 1, 1);
  FrenetLines out{{nu, nv}, {nu, nv}, {nu, nv}, {nu, nv}};
  auto kt = [](const Vec3& c1, const Vec3& c2, const Vec3& c3, double& kappa, double& tau) {
    const Vec3 b = c1.cross(c2);
    const double sp = c1.norm(), bn = b.squaredNorm();
    if (!(sp > 0)) throw DegenerateError("frenet_lines: zero speed");
    kappa = std::sqrt(bn) / (sp * sp * sp);
    tau = bn > 0 ? b.dot(c3) / bn : 0.0;
  };
  for (std::size_t n = 0; n < out.kappa_u.data.size(); ++n) {
    kt(d.xu.data[n], d.xuu.data[n], xuuu.data[n], out.kappa_u.data[n], out.tau_u.data[n]);
    kt(d.xv.data[n], d.xvv.data[n], xvvv.data[n], out.kappa_v.data[n], out.tau_v.data[n]);
  }
  return out;
}

NetDefects net_defects(const SurfaceGrid& s) {
  const FundamentalForms f = fundamental_forms(s);
  NetDefects out;
  ScalarField su(f.E.nu, f.E.nv), sv(f.E.nu, f.E.nv);
  double mean_u = 0, mean_v = 0;
  for (std::size_t n = 0; n < su.data.size(); ++n) {
    const double L = std::abs(f.L.data[n]), M = std::abs(f.M.data[n]), N = std::abs(f.N.data[n]);
    out.conjugate = std::max(out.conjugate, M / (L + N + kEps));
    out.asymptotic = std::max(out.asymptotic, std::max(L, N) / (M + kEps));
    su.data[n] = std::sqrt(f.E.data[n]);
    sv.data[n] = std::sqrt(f.G.data[n]);
    mean_u += su.data[n];
    mean_v += sv.data[n];
  }
  mean_u /= double(su.data.size());
  mean_v /= double(sv.data.size());
  const ScalarField dsu = diff_field(su, s.spec.dv(), 1, 1);
  const ScalarField dsv = diff_field(sv, s.spec.du(), 0, 1);
  for (std::size_t n = 0; n < su.data.size(); ++n) {
    out.chebyshev_u = std::max(out.chebyshev_u, std::abs(dsu.data[n]) / (mean_u + kEps));
    out.chebyshev_v = std::max(out.chebyshev_v, std::abs(dsv.data[n]) / (mean_v + kEps));
  }
  return out;
}

double alignability_defect(const SurfaceGrid& s, const NetLoop& lp) {
  const GridSpec& g = s.spec;
  if (!(lp.i0 < lp.i1 && lp.j0 < lp.j1)) throw DomainError("alignability_defect: degenerate loop");
  if (lp.i0 <= 0 || lp.j0 <= 0 || lp.i1 >= g.nu - 1 || lp.j1 >= g.nv - 1)
    throw DomainError("alignability_defect: loop must lie strictly inside the grid");
  const SurfaceDerivatives d = surface_derivatives(s);
  auto u_len = [&](int j) {
    return line_integral(line(g.nu, [&](int i) { return d.xu(i, j).norm(); }), lp.i0, lp.i1, g.du());
  };
  auto v_len = [&](int i) {
    return line_integral(line(g.nv, [&](int j) { return d.xv(i, j).norm(); }), lp.j0, lp.j1, g.dv());
  };
  const double ab = u_len(lp.j0), dc = u_len(lp.j1), ad = v_len(lp.i0), bc = v_len(lp.i1);
  return std::abs(ab + bc - ad - dc) / (ab + bc + ad + dc);
}

double mixed_determinant(const Eigen::Matrix2d& A, const Eigen::Matrix2d& B) {
  return 0.5 * ((A + B).determinant() - A.determinant() - B.determinant());
}

VerificationReport reciprocal_parallel_check(const SurfaceGrid& psi, const SurfaceGrid& eta, double tol) {
  if (!(psi.spec == eta.spec)) throw DomainError("reciprocal_parallel_check: grid mismatch");
  const FundamentalForms fp = fundamental_forms(psi), fe = fundamental_forms(eta);
  const SymForm tp = third_form(fp), te = third_form(fe);
  std::vector<double> dres(fp.E.data.size()), tres(fp.E.data.size());
  for (int i = 0; i < fp.E.nu; ++i)
    for (int j = 0; j < fp.E.nv; ++j) {
      const std::size_t n = std::size_t(i) * fp.E.nv + j;
      const Eigen::Matrix2d a = mat(fp.L, fp.M, fp.N, i, j), b = mat(fe.L, fe.M, fe.N, i, j);
      dres[n] = mixed_determinant(a, b) / (a.norm() * b.norm() + kEps);
      const double ref = frob(tp.e(i, j), tp.f(i, j), tp.g(i, j));
      tres[n] = frob(tp.e(i, j) - te.e(i, j), tp.f(i, j) - te.f(i, j), tp.g(i, j) - te.g(i, j)) / (ref + kEps);
    }
  VerificationReport r;
  r.add_samples("mixed_determinant", dres, tol);
  r.add_samples("third_form", tres, tol);
  r.provenance["reciprocal_parallel"] = {{"psi", psi.provenance}, {"eta", eta.provenance}};
  return r;
}

RotationOperator rotation_operator(const SurfaceGrid& psi, const SurfaceGrid& eta, double parallel_tol) {
  if (!(psi.spec == eta.spec)) throw DomainError("rotation_operator: grid mismatch");
  const SurfaceDerivatives dp = surface_derivatives(psi), de = surface_derivatives(eta);
  RotationOperator op;
  op.A = Field<Eigen::Matrix2d>(psi.spec.nu, psi.spec.nv, Eigen::Matrix2d::Zero());
  for (std::size_t n = 0; n < op.A.data.size(); ++n) {
    Eigen::Matrix<double, 3, 2> J, Je;
    J << dp.xu.data[n], dp.xv.data[n];
    Je << de.xu.data[n], de.xv.data[n];
    const Vec3 np = dp.xu.data[n].cross(dp.xv.data[n]).normalized();
    const Vec3 ne = de.xu.data[n].cross(de.xv.data[n]).normalized();
    const double ang = std::asin(std::min(1.0, np.cross(ne).norm()));
    op.max_normal_angle = std::max(op.max_normal_angle, ang);
    const Eigen::Matrix2d A = (J.transpose() * J).ldlt().solve(J.transpose() * Je);
    op.A.data[n] = A;
    op.max_trace = std::max(op.max_trace, std::abs(A.trace()) / (A.norm() + kEps));
  }
  if (!(op.max_normal_angle <= parallel_tol))
    throw DomainError("rotation_operator: tangent planes not parallel (angle " + std::to_string(op.max_normal_angle) +
                      ")");
  return op;
}

RotationCoefficients rotation_coefficients(const RotationOperator& op) {
  RotationCoefficients c{{op.A.nu, op.A.nv}, {op.A.nu, op.A.nv}};
  for (std::size_t n = 0; n < op.A.data.size(); ++n) {
    c.b.data[n] = op.A.data[n](0, 1);
    c.c.data[n] = op.A.data[n](1, 0);
  }
  return c;
}

SurfaceGrid rotation_quadrature(const SurfaceGrid& psi, const RotationCoefficients& co, double path_tol) {
  const GridSpec& g = psi.spec;
  if (co.b.nu != g.nu || co.b.nv != g.nv || co.c.nu != g.nu || co.c.nv != g.nv)
    throw DomainError("rotation_quadrature: coefficient grid mismatch");
  const SurfaceDerivatives d = surface_derivatives(psi);
  // eta_u = c psi_v, eta_v = b psi_u
  auto fu = [&](int i, int j) -> Vec3 { return co.c(i, j) * d.xv(i, j); };
  auto fv = [&](int i, int j) -> Vec3 { return co.b(i, j) * d.xu(i, j); };
  auto run = [&](bool rows_first) {
    VectorField out(g.nu, g.nv, Vec3::Zero());
    if (rows_first) {
      std::vector<Vec3> f(g.nu);
      for (int i = 0; i < g.nu; ++i) f[i] = fu(i, 0);
      const auto base = cumulative(f, g.du());
      parallel_for(g.nu, [&](int i) {
        std::vector<Vec3> h(g.nv);
        for (int j = 0; j < g.nv; ++j) h[j] = fv(i, j);
        const auto col = cumulative(h, g.dv());
        for (int j = 0; j < g.nv; ++j) out(i, j) = base[i] + col[j];
      });
    } else {
      std::vector<Vec3> f(g.nv);
      for (int j = 0; j < g.nv; ++j) f[j] = fv(0, j);
      const auto base = cumulative(f, g.dv());
      parallel_for(g.nv, [&](int j) {
        std::vector<Vec3> h(g.nu);
        for (int i = 0; i < g.nu; ++i) h[i] = fu(i, j);
        const auto row = cumulative(h, g.du());
        for (int i = 0; i < g.nu; ++i) out(i, j) = base[j] + row[i];
      });
    }
    return out;
  };
  const VectorField a = run(true), b = run(false);
  double worst = 0;
  for (std::size_t n = 0; n < a.data.size(); ++n) worst = std::max(worst, (a.data[n] - b.data[n]).norm());
  const double scale = std::max(bbox_diag(a), 1e-300);
  const double residual = worst / scale;
  if (!(residual <= path_tol))
    throw SolverError("rotation_quadrature: path residual " + std::to_string(residual) + " exceeds tolerance");
  SurfaceGrid out(g);
  out.pos = a;
  out.provenance = {{"family", "rotation-quadrature"}, {"path_residual", residual}, {"grid", g.to_json()}};
  return out;
}

VerificationReport codazzi_residual(const RotationCoefficients& co, const ScalarField& omega, const GridSpec& g,
                                    int sign, double tol) {
  g.validate();
  if (omega.nu != g.nu || omega.nv != g.nv || co.b.nu != g.nu || co.b.nv != g.nv)
    throw DomainError("codazzi_residual: field/grid mismatch");
  const ScalarField wu = diff_field(omega, g.du(), 0, 1), wv = diff_field(omega, g.dv(), 1, 1);
  const ScalarField bu = diff_field(co.b, g.du(), 0, 1), cv = diff_field(co.c, g.dv(), 1, 1);
  const std::size_t n = omega.data.size();
  std::vector<double> r1(n), r2(n), r3(n);
  double s1 = 0, s2 = 0, s3 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = omega.data[k], b = co.b.data[k], c = co.c.data[k];
    const double csc = 1 / std::sin(w), cot = std::cos(w) / std::sin(w);
    const double t1[3] = {-bu.data[k], -c * csc * wv.data[k], -b * cot * wu.data[k]};
    const double t2[3] = {-cv.data[k], -c * cot * wv.data[k], -b * csc * wu.data[k]};
    r1[k] = t1[0] + t1[1] + t1[2];
    r2[k] = t2[0] + t2[1] + t2[2];
    r3[k] = bu.data[k] - sign * cv.data[k];
    s1 = std::max(s1, std::abs(t1[0]) + std::abs(t1[1]) + std::abs(t1[2]));
    s2 = std::max(s2, std::abs(t2[0]) + std::abs(t2[1]) + std::abs(t2[2]));
    s3 = std::max(s3, std::abs(bu.data[k]) + std::abs(cv.data[k]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    r1[k] /= s1 + kEps;
    r2[k] /= s2 + kEps;
    r3[k] /= s3 + kEps;
  }
  VerificationReport r;
  r.add_samples("codazzi_u", r1, tol);
  r.add_samples("codazzi_v", r2, tol);
  r.add_samples("alignability_identity", r3, tol);
  r.provenance["codazzi_residual"] = {{"grid", g.to_json()}, {"sign", sign}};
  return r;
}

double procrustes_rms(const VectorField& a, const VectorField& b, bool allow_reflection) {
  if (a.data.size() != b.data.size() || a.data.empty()) throw DomainError("procrustes_rms: size mismatch");
  Vec3 ca = Vec3::Zero(), cb = Vec3::Zero();
  for (std::size_t n = 0; n < a.data.size(); ++n) {
    ca += a.data[n];
    cb += b.data[n];
  }
  ca /= double(a.data.size());
  cb /= double(b.data.size());
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  for (std::size_t n = 0; n < a.data.size(); ++n) H += (a.data[n] - ca) * (b.data[n] - cb).transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
  if (!allow_reflection && (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) D(2, 2) = -1;
  const Eigen::Matrix3d R = svd.matrixV() * D * svd.matrixU().transpose();
  double s = 0;
  for (std::size_t n = 0; n < a.data.size(); ++n) s += (R * (a.data[n] - ca) - (b.data[n] - cb)).squaredNorm();
  return std::sqrt(s / double(a.data.size()));
}

}  // namespace voss
