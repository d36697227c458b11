#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace voss {

struct CheckResult {
  double max = 0, rms = 0, tol = 0;
  bool pass = false;
};

// Named residuals; a check passes iff max <= tol. Lower-bound checks are
// stored inverted (threshold / observed) so the same rule applies.
class VerificationReport {
public:
  std::map<std::string, CheckResult> checks;
  nlohmann::json provenance = nlohmann::json::object();

  void add(const std::string& name, double max, double rms, double tol);
  void add_samples(const std::string& name, const std::vector<double>& residuals, double tol);
  // Pass iff observed >= threshold.
  void add_lower_bound(const std::string& name, double observed, double threshold);
  bool pass() const;
  const CheckResult& at(const std::string& name) const { return checks.at(name); }

  // Worst residual per check; throws DomainError when provenance blocks
  // disagree on a shared key.
  void merge(const VerificationReport& other);

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
  std::string summary_table() const;
};

}  // namespace voss
