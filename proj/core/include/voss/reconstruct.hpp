#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "voss/geomkit.hpp"
#include "voss/grid.hpp"
#include "voss/report.hpp"
#include "voss/sine_gordon.hpp"

namespace voss {

// Coefficients (E, F, G, L, M, N) and their partials at one point.
struct FormSample {
  enum { E, F, G, L, M, N };
  std::array<double, 6> c{}, cu{}, cv{}, cuu{}, cuv{}, cvv{};
};

// Fundamental forms given by closed-form coefficient functions.
class FormSpec {
public:
  using Sampler = std::function<FormSample(double u, double v)>;
  using Domain = std::function<bool(double u, double v)>;

  FormSpec(std::string name, nlohmann::json params, GridSpec default_grid, Domain domain, Sampler first,
           Sampler second);

  const std::string& name() const { return name_; }
  const nlohmann::json& params() const { return params_; }
  // A sample rectangle inside the domain, with a default resolution.
  const GridSpec& default_grid() const { return grid_; }
  bool contains(double u, double v) const { return domain_(u, v); }
  void check_grid(const GridSpec& g) const;
  // Values and first partials.
  FormSample sample(double u, double v) const;
  // Also second partials.
  FormSample sample2(double u, double v) const;
  // Same coefficients with N scaled by (1 + eps).
  FormSpec perturbed_n(double eps) const;

private:
  std::string name_;
  nlohmann::json params_;
  GridSpec grid_;
  Domain domain_;
  Sampler first_, second_;
};

FormSpec plane_forms();
// Unit sphere in colatitude / longitude: I = du^2 + sin^2 u dv^2, II = I.
FormSpec sphere_forms();
// First-kind V-net forms with omega the revolution angle of strip strip_index.
FormSpec first_kind_forms(int sign, double k, double lambda, int strip_index = 0);
// Second-kind forms on the first quadrant below the first cusp hyperbola.
FormSpec second_kind_forms(int sign, double k, double lambda, std::shared_ptr<const AmslerAngle> sol,
                           double margin = 1e-3);
// The second-kind forms at lambda = 1 in coordinates (2 sqrt u, 2 sqrt v).
FormSpec counterexample_forms(int sign, double k, std::shared_ptr<const AmslerAngle> sol, double margin = 1e-3);

// Coefficients sampled on a grid; the normal field is left zero.
FundamentalForms evaluate_forms(const FormSpec& spec, const GridSpec& grid);
// Worst per-sample relative mismatch of I and II between two sampled forms.
double form_mismatch(const FundamentalForms& a, const FundamentalForms& b);

// Brioschi Gauss residual and both Codazzi-Mainardi residuals, scale-normalized.
VerificationReport gauss_codazzi_residual(const FormSpec& spec, const GridSpec& grid, double tol = 1e-5);

struct FrameState {
  Vec3 position = Vec3::Zero();
  Vec3 tangent_u = Vec3::UnitX(), tangent_v = Vec3::UnitY();
  Vec3 normal = Vec3::UnitZ();
};

// Seed at (u, v): tangent_u along e_x, normal e_z.
FrameState default_seed(const FormSpec& spec, double u, double v);

struct GaussWeingartenOptions {
  int substeps = 4;
  int gram_check_every = 16;
  double gram_project = 1e-6;
  double gram_fail = 1e-3;
  bool cross_path = true;
};

// Integrates the frame along the first u-line, then along every v-line.
SurfaceGrid integrate_gauss_weingarten(const FormSpec& spec, const GridSpec& grid, const FrameState& seed,
                                       const GaussWeingartenOptions& opt = {});
SurfaceGrid integrate_gauss_weingarten(const FormSpec& spec, const GridSpec& grid,
                                       const GaussWeingartenOptions& opt = {});

}  // namespace voss
