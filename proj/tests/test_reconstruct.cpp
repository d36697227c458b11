#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "voss/error.hpp"
#include "voss/geomkit.hpp"
#include "voss/reconstruct.hpp"

using namespace voss;

namespace {

std::shared_ptr<const AmslerAngle> amsler(double k) {
  return std::make_shared<const AmslerAngle>(solve_painleve3(k, 12, 1e-10));
}

}  // namespace

TEST(FormSpec, SamplerDerivativesAgreeWithDifferences) {
  const FormSpec f = second_kind_forms(1, M_PI / 4, 2.0, amsler(M_PI / 4));
  const double u = 0.5, v = 0.6, h = 1e-4;
  const FormSample s = f.sample2(u, v);
  const FormSample pu = f.sample(u + h, v), mu = f.sample(u - h, v);
  const FormSample pv = f.sample(u, v + h), mv = f.sample(u, v - h);
  for (int n = 0; n < 6; ++n) {
    const double sc = 1 + std::abs(s.c[n]);
    EXPECT_NEAR(s.cu[n], (pu.c[n] - mu.c[n]) / (2 * h), 1e-6 * sc) << n;
    EXPECT_NEAR(s.cv[n], (pv.c[n] - mv.c[n]) / (2 * h), 1e-6 * sc) << n;
    EXPECT_NEAR(s.cuu[n], (pu.cu[n] - mu.cu[n]) / (2 * h), 1e-5 * sc) << n;
    EXPECT_NEAR(s.cuv[n], (pv.cu[n] - mv.cu[n]) / (2 * h), 1e-5 * sc) << n;
    EXPECT_NEAR(s.cvv[n], (pv.cv[n] - mv.cv[n]) / (2 * h), 1e-5 * sc) << n;
  }
}

TEST(FormSpec, DomainChecks) {
  const FormSpec f = second_kind_forms(1, M_PI / 2, 1.0, amsler(M_PI / 2));
  EXPECT_THROW(f.sample(-0.1, 0.5), DomainError);
  EXPECT_THROW(f.check_grid(GridSpec{0.5, 3, 0.5, 3, 10, 10}), SingularDomainError);
  EXPECT_NO_THROW(f.check_grid(f.default_grid()));
  EXPECT_THROW(second_kind_forms(1, M_PI / 4, 1.0, amsler(M_PI / 2)), DomainError);
}

TEST(Compatibility, ClosedFormSpecsPass) {
  for (const FormSpec& f : {sphere_forms(), plane_forms(), first_kind_forms(-1, 0.7, 2.0)}) {
    const VerificationReport r = gauss_codazzi_residual(f, f.default_grid());
    EXPECT_TRUE(r.pass()) << f.name() << "\n" << r.summary_table();
  }
  const FormSpec bad = sphere_forms().perturbed_n(0.01);
  EXPECT_FALSE(gauss_codazzi_residual(bad, bad.default_grid()).pass());
}

TEST(Reconstruction, Sphere) {
  const FormSpec f = sphere_forms();
  const SurfaceGrid S = integrate_gauss_weingarten(f, f.default_grid());
  const auto [K, H] = curvatures(fundamental_forms(S));
  for (double k : K.data) EXPECT_NEAR(k, 1, 1e-5);
  EXPECT_LT(form_mismatch(evaluate_forms(f, f.default_grid()), fundamental_forms(S)), 1e-5);
  EXPECT_LT(S.provenance.at("closure_residual").get<double>(), 1e-9);
}

TEST(Reconstruction, SecondKindRoundTrip) {
  const FormSpec f = second_kind_forms(-1, M_PI / 2, 2.0, amsler(M_PI / 2));
  GridSpec g = f.default_grid();
  g.nu = g.nv = 100;
  const SurfaceGrid S = integrate_gauss_weingarten(f, g);
  EXPECT_LT(form_mismatch(evaluate_forms(f, g), fundamental_forms(S)), 1e-5);
  EXPECT_EQ(S.provenance.at("reorthonormalizations").get<int>(), 0);
}

TEST(Counterexample, BalancedSecondForm) {
  const auto sol = amsler(M_PI / 4);
  const FormSpec f = counterexample_forms(1, M_PI / 4, sol);
  for (double u : {1.0, 1.4, 2.0})
    for (double v : {1.0, 1.7}) {
      const FormSample s = f.sample(u, v);
      EXPECT_DOUBLE_EQ(s.c[FormSample::L], s.c[FormSample::N]);
      EXPECT_EQ(s.c[FormSample::M], 0);
    }
  const FormSample s = counterexample_forms(-1, M_PI / 4, sol).sample(1.5, 1.5);
  EXPECT_DOUBLE_EQ(s.c[FormSample::L], -s.c[FormSample::N]);
}

TEST(Counterexample, DefaultGridIsUnitBox) {
  const FormSpec f = counterexample_forms(1, M_PI / 4, amsler(M_PI / 4));
  EXPECT_DOUBLE_EQ(f.default_grid().u0, 1);
  EXPECT_DOUBLE_EQ(f.default_grid().u1, 2);
}
