#include "job.hpp"

#include <cmath>
#include <map>
#include <set>

#include "voss/error.hpp"
#include "voss/surfaces.hpp"

namespace forge {

using namespace voss;

namespace {

struct FamilyInfo {
  std::set<std::string> required, optional;
};

const std::map<std::string, FamilyInfo>& families() {
  static const std::map<std::string, FamilyInfo> m = {
      {"knet-revolution", {{"k"}, {"strip_index"}}},
      {"bour", {{"s", "t", "profile"}, {"k", "a", "strip_index"}}},
      {"rotation-positive", {{"k"}, {"strip_index"}}},
      {"rotation-negative", {{"k"}, {"strip_index"}}},
      {"first-kind-positive", {{"k"}, {"lambda", "strip_index"}}},
      {"first-kind-negative", {{"k"}, {"lambda", "strip_index", "variant"}}},
      {"second-kind-positive", {{"k"}, {"lambda", "painleve_tol"}}},
      {"second-kind-negative", {{"k"}, {"lambda", "painleve_tol"}}},
      {"counterexample", {{"k"}, {"sign", "painleve_tol"}}},
      {"lax-knet", {{"k"}, {"lambda", "strip_index"}}},
      {"ellipsoid", {{}, {"axes"}}},
  };
  return m;
}


bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

std::array<double, 2> range_of(const nlohmann::json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw UsageError(std::string("config: '") + key + "' must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

Interval capped(const RevolutionAngle& om, double margin) {
  Interval x = om.inset(margin);
  if (!std::isfinite(x.lo)) x.lo = x.hi - 4;
  if (!std::isfinite(x.hi)) x.hi = x.lo + 4;
  return x;
}

SurfaceGrid ellipsoid(std::array<double, 3> ax, const GridSpec& g) {
  const auto [a, b, c] = ax;
  SurfaceGrid S(g);
  S.allocate_derivatives(true);
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) {
      const double su = std::sin(g.u(i)), cu = std::cos(g.u(i)), sv = std::sin(g.v(j)), cv = std::cos(g.v(j));
      S.pos(i, j) = {a * su * cv, b * su * sv, c * cu};
      (*S.xu)(i, j) = {a * cu * cv, b * cu * sv, -c * su};
      (*S.xv)(i, j) = {-a * su * sv, b * su * cv, 0};
      (*S.xuu)(i, j) = {-a * su * cv, -b * su * sv, -c * cu};
      (*S.xuv)(i, j) = {-a * cu * sv, b * cu * cv, 0};
      (*S.xvv)(i, j) = {-a * su * cv, -b * su * sv, 0};
    }
  S.provenance = {{"family", "ellipsoid"}, {"axes", {a, b, c}}, {"grid", g.to_json()}};
  return S;
}

}  // namespace

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument("");
    std::size_t p1 = 0, p2 = 0;
    const int nu = std::stoi(s.substr(0, x), &p1), nv = std::stoi(s.substr(x + 1), &p2);
    if (p1 != x || p2 != s.size() - x - 1) throw std::invalid_argument("");
    if (nu < 2 || nv < 2) throw UsageError("grid: need at least 2x2 samples");
    return {nu, nv};
  } catch (const std::logic_error&) {
    throw UsageError("grid: expected NxM, got '" + s + "'");
  }
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> out;
    for (const auto& [name, info] : families()) out.push_back(name);
    return out;
  }();
  return v;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> v = {"chebyshev", "gauss-curvature", "conjugate",    "geodesic",
                                             "alignability", "kappa-tau", "reciprocal-parallel", "codazzi",
                                             "gauss-codazzi", "lambda-isometry", "roundtrip", "counterexample"};
  return v;
}

JobConfig JobConfig::from_json(const nlohmann::json& j) {
  require(j.is_object(), "config: top level must be an object");
  JobConfig c;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "family") c.family = val.get<std::string>();
      else if (key == "k") c.k = val.get<double>();
      else if (key == "lambda") c.lambda = val.get<double>();
      else if (key == "s") c.s = val.get<double>();
      else if (key == "t") c.t = val.get<double>();
      else if (key == "a") c.a = val.get<double>();
      else if (key == "strip_index") c.strip_index = val.get<int>();
      else if (key == "sign") c.sign = val.get<int>();
      else if (key == "profile") c.profile = val.get<std::string>();
      else if (key == "variant") c.variant = val.get<std::string>();
      else if (key == "axes") {
        require(val.is_array() && val.size() == 3, "config: 'axes' must be [a, b, c]");
        c.axes = std::array<double, 3>{val[0].get<double>(), val[1].get<double>(), val[2].get<double>()};
      } else if (key == "grid") {
        if (val.is_string()) {
          const auto [a, b] = parse_grid(val.get<std::string>());
          c.nu = a;
          c.nv = b;
        } else {
          require(val.is_array() && val.size() == 2, "config: 'grid' must be \"NxM\" or [N, M]");
          c.nu = val[0].get<int>();
          c.nv = val[1].get<int>();
        }
      } else if (key == "u") c.u_range = range_of(val, "u");
      else if (key == "v") c.v_range = range_of(val, "v");
      else if (key == "margin") c.margin = val.get<double>();
      else if (key == "painleve_tol") c.painleve_tol = val.get<double>();
      else if (key == "checks") c.checks = val.get<std::vector<std::string>>();
      else if (key == "out") c.out = val.get<std::string>();
      else if (key == "format") c.format = val.get<std::string>();
      else if (key == "report") c.report = val.get<std::string>();
      else throw UsageError("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

nlohmann::json JobConfig::to_json() const {
  nlohmann::json j = {{"family", family}};
  if (nu) j["grid"] = {*nu, *nv};
  auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("k", k);
  put("lambda", lambda);
  put("s", s);
  put("t", t);
  put("a", a);
  put("strip_index", strip_index);
  put("sign", sign);
  put("profile", profile);
  put("variant", variant);
  put("axes", axes);
  put("u", u_range);
  put("v", v_range);
  put("margin", margin);
  if (family == "second-kind-positive" || family == "second-kind-negative" || family == "counterexample")
    j["painleve_tol"] = painleve_tol;
  return j;
}

Job::Job(JobConfig cfg) : cfg_(std::move(cfg)) {
  const auto it = families().find(cfg_.family);
  if (it == families().end()) throw UsageError("unknown family '" + cfg_.family + "'");
  const FamilyInfo& info = it->second;
  const std::map<std::string, bool> present = {
      {"k", cfg_.k.has_value()},           {"lambda", cfg_.lambda.has_value()},
      {"s", cfg_.s.has_value()},           {"t", cfg_.t.has_value()},
      {"a", cfg_.a.has_value()},           {"strip_index", cfg_.strip_index.has_value()},
      {"sign", cfg_.sign.has_value()},     {"profile", cfg_.profile.has_value()},
      {"variant", cfg_.variant.has_value()}, {"axes", cfg_.axes.has_value()}};
  for (const auto& [name, has] : present) {
    if (has && !info.required.count(name) && !info.optional.count(name))
      throw UsageError("parameter '" + name + "' does not apply to family " + cfg_.family);
  }
  for (const auto& name : info.required)
    if (!present.at(name)) throw UsageError("family " + cfg_.family + " needs parameter '" + name + "'");

  const bool second = starts_with(cfg_.family, "second-kind") || cfg_.family == "counterexample";
  if (cfg_.k) {
    require(std::isfinite(*cfg_.k) && *cfg_.k > 0, "k must be a positive number");
    if (second) require(*cfg_.k < M_PI, "k must lie in (0, pi) for this family");
  }
  if (cfg_.lambda) require(std::isfinite(*cfg_.lambda) && *cfg_.lambda > 0, "lambda must be a positive number");
  if (cfg_.s) require(std::isfinite(*cfg_.s) && *cfg_.s > 0, "s must be a positive number");
  if (cfg_.t) require(std::isfinite(*cfg_.t), "t must be finite");
  if (cfg_.a) require(std::isfinite(*cfg_.a) && *cfg_.a > 0, "a must be a positive number");
  if (cfg_.sign) require(*cfg_.sign == 1 || *cfg_.sign == -1, "sign must be 1 or -1");
  if (cfg_.profile) require(*cfg_.profile == "knet" || *cfg_.profile == "catenoid", "profile must be knet or catenoid");
  if (cfg_.profile && *cfg_.profile == "knet") require(cfg_.k.has_value(), "profile knet needs parameter 'k'");
  if (cfg_.profile && *cfg_.profile == "catenoid") require(!cfg_.k, "profile catenoid takes 'a', not 'k'");
  if (cfg_.variant) require(*cfg_.variant == "corollary" || *cfg_.variant == "theorem", "variant must be corollary or theorem");
  if (cfg_.axes)
    for (double x : *cfg_.axes) require(std::isfinite(x) && x > 0, "axes must be positive");
  require(cfg_.nu.has_value() == cfg_.nv.has_value(), "grid: give both sizes");
  if (cfg_.nu) require(*cfg_.nu >= 2 && *cfg_.nv >= 2, "grid: need at least 2x2 samples");
  if (cfg_.margin) require(std::isfinite(*cfg_.margin) && *cfg_.margin >= 0 && *cfg_.margin < 0.5, "margin must lie in [0, 0.5)");
  require(std::isfinite(cfg_.painleve_tol) && cfg_.painleve_tol > 0, "painleve_tol must be positive");
  for (const auto& c : cfg_.checks) {
    bool known = false;
    for (const auto& n : check_names()) known = known || n == c;
    if (!known) throw UsageError("unknown check '" + c + "'");
  }

  if (cfg_.family.find("negative") != std::string::npos) sign_ = -1;
  if (cfg_.family == "counterexample") sign_ = cfg_.sign.value_or(1);

  if (second) amsler_ = std::make_shared<const AmslerAngle>(solve_painleve3(*cfg_.k, 12.0, cfg_.painleve_tol));

  // default sample rectangle
  const int strip = cfg_.strip_index.value_or(0);
  const std::string& f = cfg_.family;
  const bool on_strip = f == "knet-revolution" || starts_with(f, "rotation") || starts_with(f, "first-kind") ||
                        f == "lax-knet" || (f == "bour" && *cfg_.profile == "knet");
  margin_ = cfg_.margin.value_or(on_strip ? 0.05 : 1e-3);
  const int dn = starts_with(f, "rotation") ? 200 : 100;
  const int nu = cfg_.nu.value_or(dn), nv = cfg_.nv.value_or(dn);
  if (f == "knet-revolution" || starts_with(f, "rotation") || starts_with(f, "first-kind") || f == "lax-knet") {
    grid_ = strip_grid(capped(RevolutionAngle{*cfg_.k, strip}, margin_), nu, nv, 0);
  } else if (f == "bour") {
    if (*cfg_.profile == "knet") {
      const Interval x = capped(RevolutionAngle{*cfg_.k, strip}, margin_);
      grid_ = GridSpec{x.lo, x.hi, 0, M_PI, nu, nv};
    } else {
      grid_ = GridSpec{-1, 1, 0, M_PI, nu, nv};
    }
  } else if (second) {
    grid_ = forms().default_grid();
    grid_.nu = nu;
    grid_.nv = nv;
  } else {
    grid_ = GridSpec{0.3, 2.8, 0, 2, nu, nv};
  }
  if (cfg_.u_range) std::tie(grid_.u0, grid_.u1) = std::pair{(*cfg_.u_range)[0], (*cfg_.u_range)[1]};
  if (cfg_.v_range) std::tie(grid_.v0, grid_.v1) = std::pair{(*cfg_.v_range)[0], (*cfg_.v_range)[1]};
  grid_.margin = margin_;
  try {
    grid_.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

nlohmann::json Job::provenance() const {
  return {{"tool", "voss-forge"}, {"version", "0.3.0"}, {"job", cfg_.to_json()}, {"grid", grid_.to_json()}};
}

bool Job::has_forms() const {
  return starts_with(cfg_.family, "first-kind") || starts_with(cfg_.family, "second-kind") ||
         cfg_.family == "counterexample";
}

FormSpec Job::forms() const { return forms_at(lambda()); }

FormSpec Job::forms_at(double lam) const {
  const std::string& f = cfg_.family;
  if (starts_with(f, "first-kind")) return first_kind_forms(sign_, k(), lam, cfg_.strip_index.value_or(0));
  if (starts_with(f, "second-kind")) return second_kind_forms(sign_, k(), lam, amsler_, margin_);
  if (f == "counterexample") return counterexample_forms(sign_, k(), amsler_, margin_);
  throw UsageError("family " + f + " is not defined through fundamental forms");
}

bool Job::has_angle() const { return cfg_.family != "bour" && cfg_.family != "ellipsoid"; }

double Job::angle(double u, double v) const {
  const std::string& f = cfg_.family;
  if (starts_with(f, "second-kind")) return amsler_->similarity(u * v).w;
  if (f == "counterexample") return amsler_->similarity(u * u * v * v / 16).w;
  if (!has_angle()) throw UsageError("family " + f + " has no net angle");
  return omega_revolution(u + v, k());
}

SurfaceGrid Job::surface() const { return surface_at(lambda(), grid_); }

SurfaceGrid Job::surface_at(double lam, const GridSpec& g) const {
  const std::string& f = cfg_.family;
  const int strip = cfg_.strip_index.value_or(0);
  SurfaceGrid S;
  if (f == "knet-revolution") S = knet_revolution(k(), g);
  else if (f == "bour") {
    const ProfileCurve p = *cfg_.profile == "knet" ? ProfileCurve::knet_revolution(k())
                                                   : ProfileCurve::catenoid(cfg_.a.value_or(1.0));
    S = bour_immersion(p, {*cfg_.s, *cfg_.t}, g);
  } else if (f == "rotation-positive") S = rotation_field_positive(ProfileCurve::knet_revolution(k()), g, Chart::diagonal);
  else if (f == "rotation-negative") S = rotation_field_negative(ProfileCurve::knet_revolution(k()), g, Chart::diagonal);
  else if (starts_with(f, "first-kind")) {
    const NegativeVariant var =
        cfg_.variant.value_or("corollary") == "theorem" ? NegativeVariant::theorem : NegativeVariant::corollary;
    S = first_kind_vnet({sign_, k(), lam}, g, var);
  } else if (f == "lax-knet") S = integrate_lax_knet(RevolutionAngle{k(), strip}, lam, g);
  else if (f == "ellipsoid") S = ellipsoid(cfg_.axes.value_or(std::array<double, 3>{1.0, 0.8, 0.6}), g);
  else S = integrate_gauss_weingarten(forms_at(lam), g);
  return S;
}

}  // namespace forge
