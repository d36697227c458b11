#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <nlohmann/json.hpp>

namespace voss {

using Vec3 = Eigen::Vector3d;

// Closed sample rectangle [u0,u1] x [v0,v1]; margin is the relative inset a
// generator applies when it clamps a default domain off singular curves.
struct GridSpec {
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
  int nu = 2, nv = 2;
  double margin = 1e-3;

  double du() const { return (u1 - u0) / (nu - 1); }
  double dv() const { return (v1 - v0) / (nv - 1); }
  double u(int i) const { return i == nu - 1 ? u1 : u0 + i * du(); }
  double v(int j) const { return j == nv - 1 ? v1 : v0 + j * dv(); }
  void validate() const;
  nlohmann::json to_json() const;
  static GridSpec from_json(const nlohmann::json& j);
  bool operator==(const GridSpec&) const = default;
};

// (x, y) coordinates fed to a profile-based immersion: either (u, v) itself
// or the asymptotic-line chart x = u + v, y = u - v.
enum class Chart { direct, diagonal };

template <class T>
struct Field {
  int nu = 0, nv = 0;
  std::vector<T> data;

  Field() = default;
  Field(int nu_, int nv_, const T& init = T()) : nu(nu_), nv(nv_), data(std::size_t(nu_) * nv_, init) {}
  T& operator()(int i, int j) { return data[std::size_t(i) * nv + j]; }
  const T& operator()(int i, int j) const { return data[std::size_t(i) * nv + j]; }
};

using ScalarField = Field<double>;
using VectorField = Field<Vec3>;

struct SurfaceGrid {
  GridSpec spec;
  VectorField pos;
  std::optional<VectorField> xu, xv;
  std::optional<VectorField> xuu, xuv, xvv;
  nlohmann::json provenance = nlohmann::json::object();

  explicit SurfaceGrid(const GridSpec& g = GridSpec());
  bool has_d1() const { return xu.has_value() && xv.has_value(); }
  bool has_d2() const { return xuu.has_value() && xuv.has_value() && xvv.has_value(); }
  void allocate_derivatives(bool second);
  void drop_derivatives();
};

// Reductions over sampled residuals.
double rms(const std::vector<double>& v);
double max_abs(const std::vector<double>& v);

}  // namespace voss
