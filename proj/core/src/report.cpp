#include "voss/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "voss/error.hpp"
#include "voss/grid.hpp"

namespace voss {

void VerificationReport::add(const std::string& name, double max, double rms, double tol) {
  checks[name] = {max, rms, tol, std::isfinite(max) && max <= tol};
}

void VerificationReport::add_samples(const std::string& name, const std::vector<double>& r, double tol) {
  double m = 0;
  bool finite = true;
  for (double x : r) {
    if (!std::isfinite(x)) finite = false;
    m = std::max(m, std::abs(x));
  }
  add(name, finite ? m : std::numeric_limits<double>::infinity(), rms(r), tol);
}

void VerificationReport::add_lower_bound(const std::string& name, double observed, double threshold) {
  const double v = observed > 0 ? threshold / observed : std::numeric_limits<double>::infinity();
  add(name, v, v, 1.0);
}

bool VerificationReport::pass() const {
  for (const auto& [name, c] : checks)
    if (!c.pass) return false;
  return true;
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& [key, value] : other.provenance.items()) {
    if (provenance.contains(key) && provenance[key] != value)
      throw DomainError("report merge: conflicting provenance for '" + key + "'");
    provenance[key] = value;
  }
  for (const auto& [name, c] : other.checks) {
    auto it = checks.find(name);
    if (it == checks.end()) {
      checks[name] = c;
      continue;
    }
    CheckResult& m = it->second;
    const bool worse = !(c.max <= m.max);
    m.rms = std::max(m.rms, c.rms);
    if (worse) {
      m.max = c.max;
      m.tol = c.tol;
    }
    m.pass = m.pass && c.pass;
  }
}

namespace {
nlohmann::json num(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}
double from_num(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw DomainError("report: bad number '" + s + "'");
}
}  // namespace

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [name, r] : checks)
    c[name] = {{"max", num(r.max)}, {"rms", num(r.rms)}, {"tol", num(r.tol)}, {"pass", r.pass}};
  return {{"checks", c}, {"provenance", provenance}, {"pass", pass()}};
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  VerificationReport r;
  try {
    if (!j.is_object() || !j.contains("checks") || !j.at("checks").is_object())
      throw DomainError("report: missing 'checks' object");
    for (const auto& [name, c] : j.at("checks").items()) {
      const std::set<std::string> keys{"max", "rms", "tol", "pass"};
      for (const auto& [k, v] : c.items())
        if (!keys.count(k)) throw DomainError("report: unknown field '" + k + "' in check '" + name + "'");
      r.checks[name] = {from_num(c.at("max")), from_num(c.at("rms")), from_num(c.at("tol")), c.at("pass").get<bool>()};
    }
    if (j.contains("provenance")) {
      if (!j.at("provenance").is_object()) throw DomainError("report: 'provenance' must be an object");
      r.provenance = j.at("provenance");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("report: malformed JSON: ") + e.what());
  }
  return r;
}

std::string VerificationReport::summary_table() const {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-36s %12s %12s %12s  %s\n", "check", "max", "rms", "tol", "verdict");
  out += buf;
  for (const auto& [name, c] : checks) {
    std::snprintf(buf, sizeof buf, "%-36s %12.4e %12.4e %12.4e  %s\n", name.c_str(), c.max, c.rms, c.tol,
                  c.pass ? "pass" : "FAIL");
    out += buf;
  }
  out += pass() ? "overall: pass\n" : "overall: FAIL\n";
  return out;
}

}  // namespace voss
