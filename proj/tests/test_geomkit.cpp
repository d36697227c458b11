#include <cmath>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "voss/error.hpp"
#include "voss/geomkit.hpp"

using namespace voss;

namespace {

SurfaceGrid sampled(const GridSpec& g, const std::function<Vec3(double, double)>& f) {
  SurfaceGrid S(g);
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) S.pos(i, j) = f(g.u(i), g.v(j));
  return S;
}

SurfaceGrid sphere(const GridSpec& g) {
  return sampled(g, [](double u, double v) {
    return Vec3(std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), std::cos(u));
  });
}

}  // namespace

TEST(Differentiate, ExactOnPolynomials) {
  std::vector<double> f(12);
  const double h = 0.1;
  for (int i = 0; i < 12; ++i) {
    const double x = i * h;
    f[i] = 1 + 2 * x - x * x * x + 0.5 * std::pow(x, 5);
  }
  const auto d1 = differentiate(f, h, 1), d2 = differentiate(f, h, 2);
  for (int i = 0; i < 12; ++i) {
    const double x = i * h;
    EXPECT_NEAR(d1[i], 2 - 3 * x * x + 2.5 * std::pow(x, 4), 1e-10);
    EXPECT_NEAR(d2[i], -6 * x + 10 * std::pow(x, 3), 1e-8);
  }
  EXPECT_THROW(differentiate(std::vector<double>(3, 1.0), h, 1), DomainError);
}

TEST(Forms, SphereFromSamplesOnly) {
  const GridSpec g{0.5, 2.5, 0, 2, 80, 80};
  const SurfaceGrid S = sphere(g);
  const FundamentalForms f = fundamental_forms(S);
  const auto [K, H] = curvatures(f);
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) {
      EXPECT_NEAR(f.E(i, j), 1, 1e-7);
      EXPECT_NEAR(f.G(i, j), std::pow(std::sin(g.u(i)), 2), 1e-7);
      EXPECT_NEAR(K(i, j), 1, 1e-6);
      EXPECT_NEAR(std::abs(H(i, j)), 1, 1e-6);
    }
  const SymForm III = third_form(f);
  EXPECT_NEAR(III.e(10, 10), f.E(10, 10), 1e-6);
}

TEST(Forms, DegenerateChartThrows) {
  const GridSpec g{0, 1, 0, 1, 10, 10};
  const SurfaceGrid S = sampled(g, [](double u, double) { return Vec3(u, 0, 0); });
  EXPECT_THROW(fundamental_forms(S), DegenerateError);
}

TEST(NetDefects, PlaneAndSphere) {
  const GridSpec g{0, 1, 0, 1, 20, 20};
  const NetDefects p = net_defects(sampled(g, [](double u, double v) { return Vec3(u, v, 0); }));
  EXPECT_LT(p.chebyshev_u, 1e-12);
  EXPECT_LT(p.conjugate, 1e-12);
  const NetDefects s = net_defects(sphere(GridSpec{0.5, 2.5, 0, 2, 60, 60}));
  EXPECT_LT(s.conjugate, 1e-6);
  EXPECT_GT(s.chebyshev_v, 0.1);
}

TEST(Alignability, PlaneIsAlignableSphereIsNot) {
  const GridSpec g{0, 1, 0, 1, 30, 30};
  const SurfaceGrid plane = sampled(g, [](double u, double v) { return Vec3(u, v * (1 + u), 0); });
  const SurfaceGrid flat = sampled(g, [](double u, double v) { return Vec3(u, v, 0); });
  EXPECT_LT(alignability_defect(flat, {2, 3, 20, 25}), 1e-14);
  EXPECT_GT(alignability_defect(plane, {2, 3, 20, 25}), 1e-3);
  EXPECT_THROW(alignability_defect(flat, {0, 3, 20, 25}), DomainError);
  EXPECT_THROW(alignability_defect(flat, {5, 3, 5, 25}), DomainError);
}

TEST(Geodesic, GreatCircleMeridians) {
  const LineCurvatures kg = geodesic_curvature_lines(sphere(GridSpec{0.5, 2.5, 0, 2, 60, 60}));
  for (int i = 5; i < 55; ++i) EXPECT_LT(std::abs(kg.u(i, 30)), 1e-6);
  EXPECT_GT(std::abs(kg.v(10, 30)), 0.1);
}

TEST(Frenet, Helix) {
  // u-lines are helices of radius 1 and pitch 1/(2 pi): kappa = 1/(1+c^2), tau = c/(1+c^2)
  const double c = 0.5;
  const GridSpec g{0, 3, 0, 1, 80, 20};
  const SurfaceGrid S = sampled(g, [c](double u, double v) { return Vec3(std::cos(u), std::sin(u), c * u + v); });
  const FrenetLines fl = frenet_lines(S);
  for (int i = 5; i < 75; ++i) {
    EXPECT_NEAR(fl.kappa_u(i, 10), 1 / (1 + c * c), 1e-7);
    EXPECT_NEAR(std::abs(fl.tau_u(i, 10)), c / (1 + c * c), 1e-6);
  }
}

TEST(Procrustes, RigidMotionAndReflection) {
  const GridSpec g{0.5, 2.5, 0, 2, 20, 20};
  const SurfaceGrid S = sphere(g);
  VectorField moved = S.pos, mirrored = S.pos;
  const Eigen::Matrix3d R = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  for (std::size_t n = 0; n < moved.data.size(); ++n) {
    moved.data[n] = R * S.pos.data[n] + Vec3(1, -2, 0.5);
    mirrored.data[n] = Vec3(-moved.data[n].x(), moved.data[n].y(), moved.data[n].z());
  }
  EXPECT_LT(procrustes_rms(S.pos, moved), 1e-13);
  EXPECT_GT(procrustes_rms(S.pos, mirrored), 1e-2);
  EXPECT_LT(procrustes_rms(S.pos, mirrored, true), 1e-13);
}

TEST(MixedDeterminant, Polarization) {
  Eigen::Matrix2d A, B;
  A << 1, 2, 2, 5;
  B << 0, 1, 1, 0;
  EXPECT_DOUBLE_EQ(mixed_determinant(A, A), A.determinant());
  EXPECT_DOUBLE_EQ(mixed_determinant(A, B), -2);
}

TEST(Rotation, RejectsNonParallelPair) {
  const GridSpec g{0.5, 2.5, 0, 2, 20, 20};
  const SurfaceGrid a = sphere(g);
  const SurfaceGrid b = sampled(g, [](double u, double v) { return Vec3(u, v, u * v); });
  EXPECT_THROW(rotation_operator(a, b), DomainError);
}
