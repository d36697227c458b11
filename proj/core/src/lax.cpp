#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "voss/error.hpp"
#include "voss/parallel.hpp"
#include "voss/surfaces.hpp"

namespace voss {
namespace {

using cd = std::complex<double>;
using M2 = Eigen::Matrix2cd;
constexpr cd I1(0.0, 1.0);

struct Frame {
  M2 phi = M2::Identity();
  M2 dphi = M2::Zero();  // d/dlambda
};

struct LaxMats {
  M2 U, V, Ul, Vl;
};

LaxMats lax_mats(const AngleJet& a, double lam) {
  const cd em = std::exp(-0.5 * I1 * a.w), ep = std::exp(0.5 * I1 * a.w);
  LaxMats m;
  m.U << I1 * a.wu / 4.0, -0.5 * I1 * lam * em, -0.5 * I1 * lam * ep, -I1 * a.wu / 4.0;
  m.V << -I1 * a.wv / 4.0, 0.5 * I1 / lam * ep, 0.5 * I1 / lam * em, I1 * a.wv / 4.0;
  m.Ul << 0.0, -0.5 * I1 * em, -0.5 * I1 * ep, 0.0;
  m.Vl << 0.0, -0.5 * I1 / (lam * lam) * ep, -0.5 * I1 / (lam * lam) * em, 0.0;
  return m;
}

// Derivative of Ul (e = -1) or Vl (e = +1) given d omega; entry (0,1) carries exp(e i omega/2).
M2 d_offdiag(const M2& A, double dw, double e) {
  M2 D = A;
  D(0, 1) *= 0.5 * e * I1 * dw;
  D(1, 0) *= -0.5 * e * I1 * dw;
  return D;
}

// one RK4 step along u (dir = 0) or v (dir = 1)
Frame rk4(const AngleFunction& om, double lam, const Frame& f, double u, double v, double h, int dir) {
  auto rhs = [&](double uu, double vv, const Frame& s) {
    const LaxMats m = lax_mats(om(uu, vv), lam);
    const M2& A = dir == 0 ? m.U : m.V;
    const M2& Al = dir == 0 ? m.Ul : m.Vl;
    return Frame{A * s.phi, Al * s.phi + A * s.dphi};
  };
  auto add = [](const Frame& a, const Frame& b, double c) { return Frame{a.phi + c * b.phi, a.dphi + c * b.dphi}; };
  const double du = dir == 0 ? h : 0, dv = dir == 1 ? h : 0;
  const Frame k1 = rhs(u, v, f);
  const Frame k2 = rhs(u + du / 2, v + dv / 2, add(f, k1, h / 2));
  const Frame k3 = rhs(u + du / 2, v + dv / 2, add(f, k2, h / 2));
  const Frame k4 = rhs(u + du, v + dv, add(f, k3, h));
  Frame out{f.phi + h / 6 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi),
            f.dphi + h / 6 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi)};
  const cd c = std::sqrt(out.phi.determinant());
  out.phi /= c;
  out.dphi /= c;
  return out;
}

double unitarity_error(const M2& phi) { return (phi.adjoint() * phi - M2::Identity()).cwiseAbs().maxCoeff(); }

Vec3 to_vec(const M2& X) { return {X(0, 1).real(), X(0, 1).imag(), X(0, 0).imag()}; }

struct LaxGrid {
  std::vector<Frame> frames;  // nu * nv
  double unitarity = 0;
};

LaxGrid integrate(const AngleFunction& om, double lam, const GridSpec& g, const LaxOptions& opt, bool u_first) {
  LaxGrid out;
  out.frames.resize(std::size_t(g.nu) * g.nv);
  const int n_outer = u_first ? g.nu : g.nv;
  const int n_inner = u_first ? g.nv : g.nu;
  auto at = [&](int o, int in) -> Frame& {
    return u_first ? out.frames[std::size_t(o) * g.nv + in] : out.frames[std::size_t(in) * g.nv + o];
  };
  auto coord = [&](int o, int in, double& u, double& v) {
    u = u_first ? g.u(o) : g.u(in);
    v = u_first ? g.v(in) : g.v(o);
  };
  const int d_outer = u_first ? 0 : 1, d_inner = 1 - d_outer;
  const double h_outer = (u_first ? g.du() : g.dv()) / opt.substeps;
  const double h_inner = (u_first ? g.dv() : g.du()) / opt.substeps;
  std::vector<double> worst(n_outer, 0.0);
  // seed line
  Frame f;
  at(0, 0) = f;
  for (int o = 1; o < n_outer; ++o) {
    double u, v;
    coord(o - 1, 0, u, v);
    for (int s = 0; s < opt.substeps; ++s) {
      f = rk4(om, lam, f, u, v, h_outer, d_outer);
      (d_outer == 0 ? u : v) += h_outer;
    }
    at(o, 0) = f;
    worst[0] = std::max(worst[0], unitarity_error(f.phi));
  }
  parallel_for(n_outer, [&](int o) {
    Frame fr = at(o, 0);
    for (int in = 1; in < n_inner; ++in) {
      double u, v;
      coord(o, in - 1, u, v);
      for (int s = 0; s < opt.substeps; ++s) {
        fr = rk4(om, lam, fr, u, v, h_inner, d_inner);
        (d_inner == 0 ? u : v) += h_inner;
      }
      at(o, in) = fr;
      worst[o] = std::max(worst[o], unitarity_error(fr.phi));
    }
  });
  for (double w : worst) out.unitarity = std::max(out.unitarity, w);
  return out;
}

}  // namespace

SurfaceGrid integrate_lax_knet(const AngleFunction& om, double lambda, const GridSpec& g, const LaxOptions& opt) {
  g.validate();
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("integrate_lax_knet: lambda must be > 0");
  if (opt.substeps < 1) throw DomainError("integrate_lax_knet: substeps must be >= 1");
  const LaxGrid L = integrate(om, lambda, g, opt, true);
  if (L.unitarity > opt.unitarity_tol)
    throw SolverError("integrate_lax_knet: frame lost unitarity (" + std::to_string(L.unitarity) + ")");
  SurfaceGrid S(g);
  S.allocate_derivatives(true);
  parallel_for(g.nu, [&](int i) {
    for (int j = 0; j < g.nv; ++j) {
      const Frame& f = L.frames[std::size_t(i) * g.nv + j];
      const M2 inv = f.phi.inverse();
      const AngleJet a = om(g.u(i), g.v(j));
      const LaxMats m = lax_mats(a, lambda);
      const double c = 2 * lambda;
      auto conj = [&](const M2& A) { return to_vec(c * inv * A * f.phi); };
      S.pos(i, j) = to_vec(c * inv * f.dphi);
      (*S.xu)(i, j) = conj(m.Ul);
      (*S.xv)(i, j) = conj(m.Vl);
      (*S.xuu)(i, j) = conj(d_offdiag(m.Ul, a.wu, -1) + m.Ul * m.U - m.U * m.Ul);
      (*S.xuv)(i, j) = conj(d_offdiag(m.Ul, a.wv, -1) + m.Ul * m.V - m.V * m.Ul);
      (*S.xvv)(i, j) = conj(d_offdiag(m.Vl, a.wv, 1) + m.Vl * m.V - m.V * m.Vl);
    }
  });
  double cross = 0;
  if (opt.cross_path) {
    const LaxGrid C = integrate(om, lambda, g, opt, false);
    for (std::size_t n = 0; n < C.frames.size(); ++n) {
      const Frame& f = C.frames[n];
      const Vec3 p = to_vec(2 * lambda * f.phi.inverse() * f.dphi);
      cross = std::max(cross, (p - S.pos.data[n]).norm());
    }
  }
  S.provenance = {{"family", "lax-knet"},
                  {"lambda", lambda},
                  {"substeps", opt.substeps},
                  {"unitarity_max", L.unitarity},
                  {"cross_path_residual", cross},
                  {"grid", g.to_json()}};
  return S;
}

SurfaceGrid integrate_lax_knet(const RevolutionAngle& omega, double lambda, const GridSpec& g, const LaxOptions& opt) {
  g.validate();
  const Interval s = omega.strip();
  const double xlo = g.u0 + g.v0, xhi = g.u1 + g.v1;
  if (!(xlo > s.lo && xhi < s.hi))
    throw SingularDomainError(xlo <= s.lo || omega.k <= 1 ? Singularity::fold : Singularity::cusp,
                              "integrate_lax_knet: grid leaves the selected strip");
  const double k = omega.k;
  AngleFunction f = [k](double u, double v) {
    const double x = u + v;
    const double w = omega_revolution(x, k), wx = omega_revolution_dx(x, k);
    return AngleJet{w, wx, wx};
  };
  SurfaceGrid S = integrate_lax_knet(f, lambda, g, opt);
  S.provenance["k"] = k;
  S.provenance["strip_index"] = omega.strip_index;
  return S;
}

}  // namespace voss
