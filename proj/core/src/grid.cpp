#include "voss/grid.hpp"

#include <cmath>

#include "voss/error.hpp"

namespace voss {

void GridSpec::validate() const {
  if (nu < 2 || nv < 2) throw DomainError("grid: need at least 2 samples per direction");
  if (!(u1 > u0) || !(v1 > v0) || !std::isfinite(u0) || !std::isfinite(u1) || !std::isfinite(v0) ||
      !std::isfinite(v1))
    throw DomainError("grid: ranges must be finite with u0 < u1 and v0 < v1");
  if (!(margin >= 0) || margin >= 0.5) throw DomainError("grid: margin must lie in [0, 0.5)");
}

nlohmann::json GridSpec::to_json() const {
  return {{"u", {u0, u1}}, {"v", {v0, v1}}, {"nu", nu}, {"nv", nv}, {"margin", margin}};
}

GridSpec GridSpec::from_json(const nlohmann::json& j) {
  GridSpec g;
  g.u0 = j.at("u").at(0).get<double>();
  g.u1 = j.at("u").at(1).get<double>();
  g.v0 = j.at("v").at(0).get<double>();
  g.v1 = j.at("v").at(1).get<double>();
  g.nu = j.at("nu").get<int>();
  g.nv = j.at("nv").get<int>();
  g.margin = j.value("margin", 1e-3);
  return g;
}

SurfaceGrid::SurfaceGrid(const GridSpec& g) : spec(g), pos(g.nu, g.nv, Vec3::Zero()) {}

void SurfaceGrid::allocate_derivatives(bool second) {
  xu.emplace(spec.nu, spec.nv, Vec3::Zero());
  xv.emplace(spec.nu, spec.nv, Vec3::Zero());
  if (second) {
    xuu.emplace(spec.nu, spec.nv, Vec3::Zero());
    xuv.emplace(spec.nu, spec.nv, Vec3::Zero());
    xvv.emplace(spec.nu, spec.nv, Vec3::Zero());
  }
}

void SurfaceGrid::drop_derivatives() {
  xu.reset();
  xv.reset();
  xuu.reset();
  xuv.reset();
  xvv.reset();
}

double rms(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s / double(v.size()));
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace voss
