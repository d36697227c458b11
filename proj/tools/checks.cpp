#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "job.hpp"
#include "voss/error.hpp"
#include "voss/geomkit.hpp"
#include "voss/surfaces.hpp"

namespace forge {

using namespace voss;

namespace {

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

bool is_first_kind(const Job& j) { return starts_with(j.family(), "first-kind"); }
bool is_second_kind(const Job& j) { return starts_with(j.family(), "second-kind"); }
bool is_rotation(const Job& j) { return starts_with(j.family(), "rotation"); }
bool reconstructed(const Job& j) { return is_second_kind(j) || j.family() == "counterexample"; }
bool is_vnet(const Job& j) { return is_first_kind(j) || reconstructed(j); }

[[noreturn]] void not_applicable(const std::string& check, const Job& j) {
  throw UsageError("check '" + check + "' does not apply to family " + j.family());
}

ScalarField angle_field(const Job& job, const GridSpec& g) {
  ScalarField w(g.nu, g.nv);
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) w(i, j) = job.angle(g.u(i), g.v(j));
  return w;
}

double frob(double a, double b, double c) { return std::sqrt(a * a + 2 * b * b + c * c); }

// Per-sample relative difference of the first forms of two sampled surfaces.
std::vector<double> first_form_diff(const FundamentalForms& a, const FundamentalForms& b) {
  std::vector<double> r(a.E.data.size());
  for (std::size_t n = 0; n < r.size(); ++n)
    r[n] = frob(a.E.data[n] - b.E.data[n], a.F.data[n] - b.F.data[n], a.G.data[n] - b.G.data[n]) /
           frob(a.E.data[n], a.F.data[n], a.G.data[n]);
  return r;
}

// Second form of b against (L, M, N) of a scaled by (su, 1, sv).
std::vector<double> second_form_diff(const FundamentalForms& a, const FundamentalForms& b, double su, double sv) {
  std::vector<double> r(a.L.data.size());
  for (std::size_t n = 0; n < r.size(); ++n) {
    const double L = su * a.L.data[n], M = a.M.data[n], N = sv * a.N.data[n];
    r[n] = frob(b.L.data[n] - L, b.M.data[n] - M, b.N.data[n] - N) / frob(L, M, N);
  }
  return r;
}

class Runner {
public:
  explicit Runner(const Job& job) : job_(job) {}

  const SurfaceGrid& surface() {
    if (!surf_) surf_ = job_.surface();
    return *surf_;
  }
  const FundamentalForms& forms() {
    if (!ff_) ff_ = fundamental_forms(surface());
    return *ff_;
  }
  const GridSpec& grid() const { return job_.grid(); }

  void run(const std::string& name, VerificationReport& r) {
    if (name == "chebyshev") chebyshev(r);
    else if (name == "gauss-curvature") gauss_curvature(r);
    else if (name == "conjugate") r.add("conjugate", net_defects(surface()).conjugate, 0, 1e-5);
    else if (name == "geodesic") geodesic(r);
    else if (name == "alignability") alignability(r);
    else if (name == "kappa-tau") kappa_tau(r);
    else if (name == "reciprocal-parallel") reciprocal_parallel(r);
    else if (name == "codazzi") codazzi(r);
    else if (name == "gauss-codazzi") gauss_codazzi(r);
    else if (name == "lambda-isometry") lambda_isometry(r);
    else if (name == "roundtrip") roundtrip(r);
    else if (name == "counterexample") counterexample(r);
    else throw UsageError("unknown check '" + name + "'");
  }

private:
  void chebyshev(VerificationReport& r) {
    const NetDefects d = net_defects(surface());
    r.add("chebyshev_u", d.chebyshev_u, 0, 1e-8);
    r.add("chebyshev_v", d.chebyshev_v, 0, 1e-8);
  }

  void gauss_curvature(VerificationReport& r) {
    const auto [K, H] = curvatures(forms());
    const GridSpec& g = grid();
    const std::string& f = job_.family();
    const double k = job_.k(), lam = job_.lambda();
    const int sg = job_.sign();
    std::vector<double> dK, dH, dangle, dvangle;
    std::optional<FundamentalForms> base;
    if (f == "bour") {
      const auto& c = job_.config();
      const ProfileCurve p = *c.profile == "knet" ? ProfileCurve::knet_revolution(k)
                                                  : ProfileCurve::catenoid(c.a.value_or(1.0));
      base = fundamental_forms(revolution_surface(p, g, Chart::direct));
    }
    std::optional<std::pair<ScalarField, ScalarField>> baseK;
    if (base) baseK = curvatures(*base);
    const auto& S = surface();
    for (int i = 0; i < g.nu; ++i)
      for (int j = 0; j < g.nv; ++j) {
        const double u = g.u(i), v = g.v(j), Kij = K(i, j), Hij = H(i, j);
        double Kx = 0;
        std::optional<double> Hx;
        if (f == "knet-revolution" || f == "lax-knet") {
          Kx = -1;
          const auto& fm = forms();
          const double c = fm.F(i, j) / std::sqrt(fm.E(i, j) * fm.G(i, j));
          dangle.push_back(std::abs(std::acos(std::clamp(c, -1.0, 1.0)) - job_.angle(u, v)));
        } else if (is_rotation(job_)) {
          const double w = job_.angle(u, v);
          Kx = sg > 0 ? std::pow(std::sin(w / 2), 4) / std::pow(k, 4) : -std::pow(std::cos(w / 2), 4) / std::pow(k, 4);
        } else if (is_first_kind(job_)) {
          const double w = job_.angle(u, v);
          if (sg > 0) {
            Kx = std::pow(std::sin(w / 2), 4);
            Hx = 0.25 * (lam + 1 / lam) * std::tan(w / 2);
          } else {
            Kx = -std::pow(std::cos(w / 2), 4);
            Hx = 0.25 * (lam - 1 / lam) / std::tan(w / 2);
          }
        } else if (reconstructed(job_)) {
          const double w = job_.angle(u, v);
          const double z = is_second_kind(job_) ? u * v : u * u * v * v / 16;
          Kx = sg > 0 ? z * std::pow(std::sin(w / 2), 4) : -z * std::pow(std::cos(w / 2), 4);
        } else if (f == "bour") {
          Kx = baseK->first(i, j);
        } else {
          const auto [a, b, c] = job_.config().axes.value_or(std::array<double, 3>{1.0, 0.8, 0.6});
          const Vec3 p = S.pos(i, j);
          const double q = p.x() * p.x() / std::pow(a, 4) + p.y() * p.y() / std::pow(b, 4) + p.z() * p.z() / std::pow(c, 4);
          Kx = 1 / (a * a * b * b * c * c * q * q);
        }
        if (is_first_kind(job_) || reconstructed(job_)) {
          // coordinate angle of the V-net: w on the positive family, pi - w on the negative one
          const auto& fm = forms();
          const double phi = std::atan2(std::sqrt(fm.E(i, j) * fm.G(i, j) - fm.F(i, j) * fm.F(i, j)), fm.F(i, j));
          const double w = job_.angle(u, v);
          dvangle.push_back(phi - (sg > 0 ? w : std::numbers::pi - w));
        }
        dK.push_back((Kij - Kx) / std::max(1.0, std::abs(Kx)));
        // H is defined up to the orientation of the normal
        if (Hx) dH.push_back((std::abs(Hij) - std::abs(*Hx)) / std::max(1.0, std::abs(*Hx)));
      }
    const double tol = reconstructed(job_) ? 1e-3 : 1e-4;
    r.add_samples("gauss_curvature", dK, tol);
    if (!dH.empty()) r.add_samples("mean_curvature", dH, tol);
    if (!dangle.empty()) r.add_samples("net_angle", dangle, f == "lax-knet" ? 1e-6 : 1e-8);
    if (!dvangle.empty()) r.add_samples("vnet_angle", dvangle, tol == 1e-3 ? 1e-4 : 1e-6);
  }

  void geodesic(VerificationReport& r) {
    const LineCurvatures kg = geodesic_curvature_lines(surface());
    const FrenetLines fl = frenet_lines(surface());
    std::vector<double> a(kg.u.data.size()), b(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
      a[n] = std::abs(kg.u.data[n]) / std::max(std::abs(fl.kappa_u.data[n]), 1e-300);
      b[n] = std::abs(kg.v.data[n]) / std::max(std::abs(fl.kappa_v.data[n]), 1e-300);
    }
    r.add_samples("geodesic_u", a, 1e-5);
    r.add_samples("geodesic_v", b, 1e-5);
  }

  void alignability(VerificationReport& r) {
    const GridSpec& g = grid();
    if (g.nu < 5 || g.nv < 5) throw DomainError("alignability: grid too small for interior loops");
    std::mt19937_64 rng(20240601);
    auto pick = [&](int n) {
      std::uniform_int_distribution<int> d(1, n - 2);
      int a = d(rng), b = d(rng);
      while (a == b) b = d(rng);
      return std::pair{std::min(a, b), std::max(a, b)};
    };
    std::vector<double> res;
    for (int n = 0; n < 50; ++n) {
      const auto [i0, i1] = pick(g.nu);
      const auto [j0, j1] = pick(g.nv);
      res.push_back(alignability_defect(surface(), {i0, j0, i1, j1}));
    }
    r.add_samples("alignability", res, reconstructed(job_) ? 1e-5 : 1e-6);
  }

  void kappa_tau(VerificationReport& r) {
    if (!is_vnet(job_)) not_applicable("kappa-tau", job_);
    const FrenetLines fl = frenet_lines(surface());
    const GridSpec& g = grid();
    const int skip = 3;
    if (g.nu <= 2 * skip || g.nv <= 2 * skip) throw DomainError("kappa-tau: grid too small");
    const double su = job_.sign() > 0 ? -1 : 1;
    std::vector<double> a, b;
    for (int i = skip; i < g.nu - skip; ++i)
      for (int j = skip; j < g.nv - skip; ++j) {
        const double cot = 1 / std::tan(job_.angle(g.u(i), g.v(j)));
        a.push_back((fl.tau_u(i, j) / fl.kappa_u(i, j) - su * cot) / (1 + std::abs(cot)));
        b.push_back((fl.tau_v(i, j) / fl.kappa_v(i, j) - cot) / (1 + std::abs(cot)));
      }
    r.add_samples("kappa_tau_u", a, 1e-4);
    r.add_samples("kappa_tau_v", b, 1e-4);
  }

  static void add_prefixed(VerificationReport& r, const VerificationReport& s, const std::string& prefix) {
    for (const auto& [name, c] : s.checks) r.add(prefix + name, c.max, c.rms, c.tol);
  }

  void reciprocal_parallel(VerificationReport& r) {
    const GridSpec& g = grid();
    const double k = job_.k();
    if (job_.family() == "knet-revolution") {
      const ProfileCurve p = ProfileCurve::knet_revolution(k);
      const SurfaceGrid ep = rotation_field_positive(p, g, Chart::diagonal);
      const SurfaceGrid em = rotation_field_negative(p, g, Chart::diagonal);
      add_prefixed(r, reciprocal_parallel_check(surface(), ep), "psi_eta+/");
      add_prefixed(r, reciprocal_parallel_check(surface(), em), "psi_eta-/");
      add_prefixed(r, reciprocal_parallel_check(ep, em), "eta+_eta-/");
      return;
    }
    if (!is_rotation(job_)) not_applicable("reciprocal-parallel", job_);
    const SurfaceGrid psi = knet_revolution(k, g);
    add_prefixed(r, reciprocal_parallel_check(psi, surface()), "");
    const RotationOperator op = rotation_operator(psi, surface(), std::numeric_limits<double>::infinity());
    r.add("rotation_trace", op.max_trace, 0, 1e-5);
    const RotationCoefficients co = rotation_coefficients(op);
    std::vector<double> db, dc, diag;
    for (int i = 0; i < g.nu; ++i)
      for (int j = 0; j < g.nv; ++j) {
        const double w = job_.angle(g.u(i), g.v(j));
        double b, c;
        if (job_.sign() > 0) {
          b = c = k * k / std::pow(std::sin(w / 2), 2);
        } else {
          b = k * k / std::pow(std::cos(w / 2), 2);
          c = -b;
        }
        db.push_back((co.b(i, j) - b) / std::abs(b));
        dc.push_back((co.c(i, j) - c) / std::abs(c));
        const auto& A = op.A(i, j);
        diag.push_back((std::abs(A(0, 0)) + std::abs(A(1, 1))) / A.norm());
      }
    r.add_samples("rotation_b", db, 1e-5);
    r.add_samples("rotation_c", dc, 1e-5);
    r.add_samples("rotation_diagonal", diag, 1e-5);
  }

  void codazzi(VerificationReport& r) {
    if (!is_rotation(job_)) not_applicable("codazzi", job_);
    const GridSpec& g = grid();
    const SurfaceGrid psi = knet_revolution(job_.k(), g);
    const RotationCoefficients co = rotation_coefficients(rotation_operator(psi, surface()));
    r.merge(codazzi_residual(co, angle_field(job_, g), g, job_.sign()));
    const SurfaceGrid eq = rotation_quadrature(psi, co, std::numeric_limits<double>::infinity());
    r.add("path_residual", eq.provenance.at("path_residual").get<double>(), 0, 1e-6);
    r.add("quadrature_procrustes", procrustes_rms(eq.pos, surface().pos), 0, 1e-4);
  }

  void gauss_codazzi(VerificationReport& r) {
    if (!job_.has_forms()) not_applicable("gauss-codazzi", job_);
    r.merge(gauss_codazzi_residual(job_.forms(), grid()));
    if (is_second_kind(job_)) r.provenance["axis_traces"] = axis_traces();
  }

  // One-sided traces toward the coordinate axes: omega and the rescaled coefficients
  // (u^2 E, uv F, v^2 G, u L, v N). Reported only.
  nlohmann::json axis_traces() const {
    const FormSpec spec = job_.forms();
    const GridSpec& g = grid();
    nlohmann::json out = nlohmann::json::array();
    for (const bool toward_v_axis : {true, false})
      for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double u = toward_v_axis ? eps : 0.5 * (g.u0 + g.u1), v = toward_v_axis ? 0.5 * (g.v0 + g.v1) : eps;
        nlohmann::json e = {{"u", u}, {"v", v}};
        try {
          const auto c = spec.sample(u, v).c;
          e["omega"] = job_.angle(u, v);
          e["scaled_forms"] = {u * u * c[FormSample::E], u * v * c[FormSample::F], v * v * c[FormSample::G],
                               u * c[FormSample::L], v * c[FormSample::N]};
        } catch (const voss::DomainError& err) {
          e["error"] = err.what();
        }
        out.push_back(e);
      }
    return out;
  }

  void lambda_isometry(VerificationReport& r) {
    const std::string& f = job_.family();
    const GridSpec& g = grid();
    const double lam = job_.lambda();
    if (f == "bour") {
      const auto& c = job_.config();
      const ProfileCurve p = *c.profile == "knet" ? ProfileCurve::knet_revolution(job_.k())
                                                  : ProfileCurve::catenoid(c.a.value_or(1.0));
      r.add_samples("first_form", first_form_diff(fundamental_forms(revolution_surface(p, g, Chart::direct)), forms()),
                    1e-8);
      return;
    }
    if (f == "lax-knet") {
      const auto& S = surface();
      const SurfaceDerivatives d = surface_derivatives(S);
      std::vector<double> su, sv;
      for (std::size_t n = 0; n < d.xu.data.size(); ++n) {
        su.push_back(d.xu.data[n].norm() - lam);
        sv.push_back(d.xv.data[n].norm() - 1 / lam);
      }
      r.add_samples("speed_u", su, 1e-6);
      r.add_samples("speed_v", sv, 1e-6);
      r.add_samples("second_form", second_form_diff(fundamental_forms(job_.surface_at(1.0, g)), forms(), 1, 1), 1e-5);
      return;
    }
    if (!is_first_kind(job_) && !is_second_kind(job_)) not_applicable("lambda-isometry", job_);
    const FundamentalForms one = fundamental_forms(job_.surface_at(1.0, g));
    const bool rec = is_second_kind(job_);
    r.add_samples("first_form", first_form_diff(one, forms()), rec ? 1e-4 : 1e-6);
    r.add_samples("second_form_scaling", second_form_diff(one, forms(), lam, 1 / lam), rec ? 1e-4 : 1e-5);
  }

  void roundtrip(VerificationReport& r) {
    if (!job_.has_forms()) not_applicable("roundtrip", job_);
    const double m = form_mismatch(evaluate_forms(job_.forms(), grid()), forms());
    r.add("roundtrip", m, m, grid().nu >= 200 && grid().nv >= 200 ? 1e-4 : 1e-3);
    if (surface().provenance.contains("closure_residual"))
      r.provenance["closure_residual"] = surface().provenance["closure_residual"];
  }

  void counterexample(VerificationReport& r) {
    if (job_.family() != "counterexample") not_applicable("counterexample", job_);
    const FormSpec spec = job_.forms();
    const GridSpec box{1, 2, 1, 2, 101, 101};
    spec.check_grid(box);
    std::vector<double> ln;
    double hmax = 0;
    for (int i = 0; i < box.nu; ++i)
      for (int j = 0; j < box.nv; ++j) {
        const auto c = spec.sample(box.u(i), box.v(j)).c;
        const double E = c[FormSample::E], F = c[FormSample::F], G = c[FormSample::G];
        const double L = c[FormSample::L], M = c[FormSample::M], N = c[FormSample::N];
        ln.push_back((L - job_.sign() * N) / std::max({std::abs(L), std::abs(N), 1.0}));
        hmax = std::max(hmax, std::abs((E * N - 2 * F * M + G * L) / (2 * (E * G - F * F))));
      }
    // L = N for the positive sign, L = -N for the negative one
    r.add_samples(job_.sign() > 0 ? "isothermal_conjugate" : "isothermal_conjugate_neg", ln, 1e-8);
    r.add_lower_bound("mean_curvature_nonzero", hmax, 0.01);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i <= 100; ++i) {
      const double u = 1 + i / 100.0, w = job_.angle(u, 3 - u);
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
    r.add_lower_bound("angle_spread", hi - lo, 0.01);
    r.provenance["counterexample"] = {{"max_mean_curvature", hmax}, {"angle_spread", hi - lo}};
  }

  const Job& job_;
  std::optional<SurfaceGrid> surf_;
  std::optional<FundamentalForms> ff_;
};

}  // namespace

VerificationReport run_checks(const Job& job, const std::vector<std::string>& checks) {
  if (checks.empty()) throw UsageError("verify: name at least one check");
  for (const auto& c : checks)
    if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
      throw UsageError("unknown check '" + c + "'");
  VerificationReport r;
  Runner run(job);
  for (const auto& c : checks) run.run(c, r);
  r.provenance["source"] = job.provenance();
  return r;
}

}  // namespace forge
