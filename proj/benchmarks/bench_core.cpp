#include <cmath>
#include <memory>

#include <benchmark/benchmark.h>

#include "voss/elliptic.hpp"
#include "voss/geomkit.hpp"
#include "voss/reconstruct.hpp"
#include "voss/sine_gordon.hpp"
#include "voss/surfaces.hpp"

using namespace voss;

namespace {

GridSpec strip(double k, int n) { return strip_grid(RevolutionAngle{k, 0}.inset(0.05), n, n, 0); }

void BM_Jacobi(benchmark::State& st) {
  double x = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(jacobi(x, 0.64));
    x += 1e-3;
  }
}
BENCHMARK(BM_Jacobi);

void BM_EllintPi(benchmark::State& st) {
  double phi = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(ellint_Pi(0.36, phi, 0.36));
    phi = phi > 1.5 ? 0.1 : phi + 1e-3;
  }
}
BENCHMARK(BM_EllintPi);

void BM_KNetRevolution(benchmark::State& st) {
  const GridSpec g = strip(0.8, int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(knet_revolution(0.8, g));
}
BENCHMARK(BM_KNetRevolution)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_FirstKindForms(benchmark::State& st) {
  const SurfaceGrid S = first_kind_vnet({-1, 0.7, 2.0}, strip(0.7, int(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(fundamental_forms(S));
}
BENCHMARK(BM_FirstKindForms)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Painleve(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(solve_painleve3(M_PI / 2, 12, 1e-10));
}
BENCHMARK(BM_Painleve)->Unit(benchmark::kMillisecond);

void BM_SecondKindReconstruction(benchmark::State& st) {
  auto sol = std::make_shared<const AmslerAngle>(solve_painleve3(M_PI / 4, 12, 1e-10));
  const FormSpec spec = second_kind_forms(+1, M_PI / 4, 1.0, sol);
  GridSpec g = spec.default_grid();
  g.nu = g.nv = int(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(integrate_gauss_weingarten(spec, g));
}
BENCHMARK(BM_SecondKindReconstruction)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_RotationQuadrature(benchmark::State& st) {
  const double k = 0.8;
  const GridSpec g = strip(k, 200);
  const SurfaceGrid psi = knet_revolution(k, g);
  const SurfaceGrid eta = rotation_field_positive(ProfileCurve::knet_revolution(k), g, Chart::diagonal);
  const RotationCoefficients co = rotation_coefficients(rotation_operator(psi, eta));
  for (auto _ : st) benchmark::DoNotOptimize(rotation_quadrature(psi, co));
}
BENCHMARK(BM_RotationQuadrature)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
