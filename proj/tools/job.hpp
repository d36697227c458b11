#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "voss/grid.hpp"
#include "voss/reconstruct.hpp"
#include "voss/report.hpp"
#include "voss/sine_gordon.hpp"

namespace forge {

// Bad flags, bad config keys, unknown family or check: exit status 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string family;
  std::optional<double> k, lambda, s, t, a;
  std::optional<int> strip_index, sign;
  std::optional<std::string> profile, variant;
  std::optional<std::array<double, 3>> axes;
  // unset: the family default
  std::optional<int> nu, nv;
  std::optional<std::array<double, 2>> u_range, v_range;
  std::optional<double> margin;
  double painleve_tol = 1e-10;
  std::vector<std::string> checks;
  std::string out, format, report;

  // Strict: unknown keys raise UsageError.
  static JobConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// "200x150" -> (200, 150)
std::pair<int, int> parse_grid(const std::string& s);

const std::vector<std::string>& family_names();
const std::vector<std::string>& check_names();

// A validated job: the family's parameters, grid and generators.
class Job {
public:
  explicit Job(JobConfig cfg);

  const JobConfig& config() const { return cfg_; }
  const std::string& family() const { return cfg_.family; }
  const voss::GridSpec& grid() const { return grid_; }
  double k() const { return cfg_.k.value_or(1.0); }
  double lambda() const { return cfg_.lambda.value_or(1.0); }
  double margin() const { return margin_; }
  int sign() const { return sign_; }

  // Sampled immersion of the family on grid().
  voss::SurfaceGrid surface() const;
  // Same family at another lambda (families that carry one).
  voss::SurfaceGrid surface_at(double lambda, const voss::GridSpec& g) const;
  // Closed-form forms for the families defined through them.
  bool has_forms() const;
  voss::FormSpec forms() const;
  voss::FormSpec forms_at(double lambda) const;
  // Net angle at (u, v) when the family has one.
  bool has_angle() const;
  double angle(double u, double v) const;
  std::shared_ptr<const voss::AmslerAngle> amsler() const { return amsler_; }
  nlohmann::json provenance() const;

private:
  JobConfig cfg_;
  voss::GridSpec grid_;
  int sign_ = 1;
  double margin_ = 1e-3;
  std::shared_ptr<const voss::AmslerAngle> amsler_;
};

voss::VerificationReport run_checks(const Job& job, const std::vector<std::string>& checks);

void write_mesh(const voss::SurfaceGrid& s, const std::string& path, const std::string& format);
std::string infer_format(const std::string& path);

}  // namespace forge
