#include <cmath>

#include <gtest/gtest.h>

#include "voss/error.hpp"
#include "voss/geomkit.hpp"
#include "voss/reconstruct.hpp"
#include "voss/surfaces.hpp"

using namespace voss;

namespace {

// the k = 1 strip is a half-line; keep a window of width 4
GridSpec strip(double k, int n, double margin = 0.05) {
  Interval x = RevolutionAngle{k, 0}.inset(margin);
  if (!std::isfinite(x.hi)) x.hi = x.lo + 4;
  return strip_grid(x, n, n, 0);
}

double max_first_form_diff(const FundamentalForms& a, const FundamentalForms& b) {
  double d = 0;
  for (std::size_t n = 0; n < a.E.data.size(); ++n) {
    const double s = std::abs(a.E.data[n]) + std::abs(a.G.data[n]);
    d = std::max({d, std::abs(a.E.data[n] - b.E.data[n]) / s, std::abs(a.F.data[n] - b.F.data[n]) / s,
                  std::abs(a.G.data[n] - b.G.data[n]) / s});
  }
  return d;
}

}  // namespace

TEST(KNet, PointMatchesReference) {
  // mpmath: (dn cos ky, dn sin ky, E(am x) - x) / k at x = 0.7, y = 0.1
  const SurfaceGrid S = knet_revolution(0.8, GridSpec{0.4, 0.5, 0.3, 0.4, 2, 2});
  EXPECT_NEAR(S.pos(0, 0).x(), 1.0826392907748975, 1e-13);
  EXPECT_NEAR(S.pos(0, 0).y(), 0.086796387941787721, 1e-13);
  EXPECT_NEAR(S.pos(0, 0).z(), -0.078774409838300643, 1e-13);
}

TEST(KNet, ChebyshevAndCurvature) {
  for (double k : {0.4, 1.0, 2.0}) {
    const GridSpec g = strip(k, 60);
    const SurfaceGrid S = knet_revolution(k, g);
    const NetDefects d = net_defects(S);
    EXPECT_LT(d.chebyshev_u, 1e-10);
    EXPECT_LT(d.chebyshev_v, 1e-10);
    const auto [K, H] = curvatures(fundamental_forms(S));
    for (double v : K.data) EXPECT_NEAR(v, -1, 1e-9);
  }
}

TEST(KNet, RejectsSingularStrip) {
  const GridSpec g{-0.5, 0.5, -0.5, 0.5, 10, 10};
  EXPECT_THROW(knet_revolution(0.8, g), SingularDomainError);
}

TEST(Bour, IsometricFamily) {
  const GridSpec g{-1, 1, 0, 3, 40, 40};
  const ProfileCurve cat = ProfileCurve::catenoid(1.0);
  const FundamentalForms base = fundamental_forms(revolution_surface(cat, g, Chart::direct));
  for (BourParams p : {BourParams{1, 0}, BourParams{2, 0.5}, BourParams{0.8, 0.1}, BourParams{3, -1}}) {
    const SurfaceGrid S = bour_immersion(cat, p, g);
    EXPECT_LT(max_first_form_diff(base, fundamental_forms(S)), 1e-12) << p.s << " " << p.t;
  }
  // (s, t) = (rate^2, 0) is the surface of revolution itself
  const SurfaceGrid same = bour_immersion(cat, {1, 0}, g);
  EXPECT_LT(procrustes_rms(same.pos, revolution_surface(cat, g, Chart::direct).pos), 1e-12);
}

TEST(Bour, HelicoidMember) {
  const GridSpec g{-1, 1, 0, 3, 20, 20};
  const SurfaceGrid S = bour_immersion(ProfileCurve::catenoid(1.0), {1, 1}, g);
  EXPECT_TRUE(S.provenance.value("helicoid", false));
  const auto [K, H] = curvatures(fundamental_forms(S));
  for (double h : H.data) EXPECT_LT(std::abs(h), 1e-10);
}

TEST(Bour, RejectsInadmissibleParameters) {
  const GridSpec g{0.05, 1, 0, 3, 20, 20};
  EXPECT_THROW(bour_immersion(ProfileCurve::knet_revolution(0.8), {0.3, 0.7}, g), DomainError);
}

TEST(FirstKind, FormsMatchClosedForm) {
  for (int sign : {1, -1})
    for (double lam : {0.5, 1.0, 2.0}) {
      const GridSpec g = strip(0.7, 50);
      const SurfaceGrid S = first_kind_vnet({sign, 0.7, lam}, g);
      const double m = form_mismatch(evaluate_forms(first_kind_forms(sign, 0.7, lam), g), fundamental_forms(S));
      EXPECT_LT(m, 1e-8) << sign << " " << lam;
    }
}

TEST(FirstKind, VariantsShareTheMetric) {
  const GridSpec g = strip(0.5, 30);
  for (auto var : {NegativeVariant::corollary, NegativeVariant::theorem}) {
    const FundamentalForms a = fundamental_forms(first_kind_vnet({-1, 0.5, 0.8}, g, var));
    const FundamentalForms b = fundamental_forms(first_kind_vnet({-1, 0.5, 1.25}, g, var));
    EXPECT_LT(max_first_form_diff(a, b), 1e-10);
  }
  EXPECT_STREQ(to_string(NegativeVariant::theorem), "theorem");
}

TEST(Squeeze, Reparametrization) {
  const GridSpec g{1, 2, 3, 5, 5, 7};
  const GridSpec s = squeeze_reparam(g, 2.0);
  EXPECT_DOUBLE_EQ(s.u0, 2);
  EXPECT_DOUBLE_EQ(s.u1, 4);
  EXPECT_DOUBLE_EQ(s.v0, 1.5);
  EXPECT_DOUBLE_EQ(s.v1, 2.5);
  const SurfaceGrid S = knet_revolution(0.8, strip(0.8, 20));
  const SurfaceGrid T = squeeze_reparam(S, 2.0);
  EXPECT_EQ(T.pos.data, S.pos.data);
  EXPECT_NEAR((*T.xu)(3, 4).norm(), 0.5, 1e-12);
  EXPECT_NEAR((*T.xv)(3, 4).norm(), 2.0, 1e-12);
}

TEST(Lax, ReproducesKNet) {
  const RevolutionAngle om{0.8, 0};
  const GridSpec g = strip_grid(om.inset(0.05), 64, 64, 0);
  const SurfaceGrid A = integrate_lax_knet(om, 1.0, g);
  EXPECT_LT(procrustes_rms(A.pos, knet_revolution(0.8, g).pos), 1e-6);
}

TEST(RotationFields, AntiDiagonalOperator) {
  const double k = 0.6;
  const GridSpec g = strip(k, 80);
  const SurfaceGrid psi = knet_revolution(k, g);
  const ProfileCurve p = ProfileCurve::knet_revolution(k);
  const RotationCoefficients plus = rotation_coefficients(rotation_operator(psi, rotation_field_positive(p, g, Chart::diagonal)));
  const RotationCoefficients minus = rotation_coefficients(rotation_operator(psi, rotation_field_negative(p, g, Chart::diagonal)));
  for (int i = 0; i < g.nu; i += 7)
    for (int j = 0; j < g.nv; j += 7) {
      const double w = omega_revolution(g.u(i) + g.v(j), k);
      const double cs = k * k / std::pow(std::sin(w / 2), 2), sc = k * k / std::pow(std::cos(w / 2), 2);
      EXPECT_NEAR(plus.b(i, j) / cs, 1, 1e-9);
      EXPECT_NEAR(plus.c(i, j) / cs, 1, 1e-9);
      EXPECT_NEAR(minus.b(i, j) / sc, 1, 1e-9);
      EXPECT_NEAR(minus.c(i, j) / sc, -1, 1e-9);
    }
}
