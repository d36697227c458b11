// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "job.hpp"
#include "voss/elliptic.hpp"
#include "voss/geomkit.hpp"
#include "voss/sine_gordon.hpp"
#include "voss/surfaces.hpp"

using namespace voss;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  // residual must stay below tol
  void below(const std::string& what, double value, double tol) {
    const bool ok = value < tol;
    pass = pass && ok;
    if (!ok || detail.size() < 400) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s%s %.2e%s", detail.empty() ? "" : "; ", what.c_str(), value, ok ? "" : " (!)");
      detail += buf;
    }
  }
  void above(const std::string& what, double value, double bound) {
    const bool ok = value > bound;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %.3g%s", detail.empty() ? "" : "; ", what.c_str(), value, ok ? "" : " (!)");
    detail += buf;
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int n, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.note(std::string("exception: ") + e.what());
  }
  std::printf("criterion %d %s (%.2f s) %s\n", n, v.pass ? "PASS" : "FAIL", seconds_since(t0), v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

forge::Job job(nlohmann::json j) { return forge::Job(forge::JobConfig::from_json(j)); }

// worst value of a named residual over several reports
struct Worst {
  std::map<std::string, double> v;
  void take(const VerificationReport& r, const std::string& name) {
    const double x = r.at(name).max;
    v[name] = std::max(v.count(name) ? v[name] : 0.0, x);
  }
};

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", x);
  return b;
}

void knet_revolution_criterion(Verdict& out) {
  for (double k : {0.4, 0.8, 1.0, 2.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = forge::run_checks(job({{"family", "knet-revolution"}, {"k", k}, {"grid", "200x200"}}),
                                     {"chebyshev", "gauss-curvature"});
    const double dt = seconds_since(t0);
    const std::string tag = "k=" + fmt(k) + " ";
    out.below(tag + "|K+1|", r.at("gauss_curvature").max, 1e-4);
    out.below(tag + "chebyshev", std::max(r.at("chebyshev_u").max, r.at("chebyshev_v").max), 1e-10);
    out.below(tag + "angle", r.at("net_angle").max, 1e-8);
    out.below(tag + "seconds", dt, 2.0);
  }
}

void bour_criterion(Verdict& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Interval strip = domain_strip(0.8, 0);
  const double w = strip.width();
  const struct {
    ProfileCurve p;
    GridSpec g;
    std::vector<BourParams> pairs;
  } cases[] = {
      {ProfileCurve::catenoid(1.0), GridSpec{-1, 1, 0, M_PI, 200, 200}, {{1, 0}, {1, 0.2}, {1.5, 0.3}, {2, -0.4}, {0.8, 0.1}}},
      {ProfileCurve::knet_revolution(0.8), GridSpec{strip.lo + 0.05 * w, strip.hi - 0.05 * w, 0, M_PI, 200, 200},
       {{0.64, 0}, {1, 0.2}, {1.5, 0.3}, {2, -0.4}, {0.8, 0.1}}},
  };
  for (const auto& c : cases) {
    const std::string tag = c.p.kind() == ProfileCurve::Kind::catenoid ? "catenoid " : "knet(0.8) ";
    const double rate = c.p.rate();
    double di = 0, dii = 0;
    std::optional<FundamentalForms> first;
    for (const BourParams& bp : c.pairs) {
      SurfaceGrid S = bour_immersion(c.p, bp, c.g);
      const FundamentalForms fa = fundamental_forms(S);
      if (!first) first = fa;
      for (std::size_t n = 0; n < fa.E.data.size(); ++n) {
        const double scale = std::max(first->E.data[n], first->G.data[n]);
        di = std::max({di, std::abs(fa.E.data[n] - first->E.data[n]) / scale,
                       std::abs(fa.F.data[n] - first->F.data[n]) / scale,
                       std::abs(fa.G.data[n] - first->G.data[n]) / scale});
      }
      // second form by finite differences, in the orthonormal coframe (d rho, sqrt(G) dy)
      S.drop_derivatives();
      const FundamentalForms fd = fundamental_forms(S);
      const GridSpec& g = c.g;
      double orient = 0;
      for (int i = 3; i < g.nu - 3; ++i)
        for (int j = 3; j < g.nv - 3; ++j) {
          const ProfileJet J = c.p.eval(g.u(i));
          const double E = J.f1 * J.f1 + J.g1 * J.g1, G = rate * rate * J.f * J.f;
          const double Ex = 2 * (J.f1 * J.f2 + J.g1 * J.g2);
          const double Gx = 2 * rate * rate * J.f * J.f1, Gxx = 2 * rate * rate * (J.f1 * J.f1 + J.f * J.f2);
          const double G1 = Gx / std::sqrt(E), G11 = (Gxx - Gx * Ex / (2 * E)) / E;
          const double rad = 4 * bp.s * G - 4 * bp.t * bp.t - G1 * G1;
          const double N = std::sqrt(rad) / (2 * G);
          const double L = (G1 * G1 + 4 * bp.t * bp.t - 2 * G * G11) / (2 * G * std::sqrt(rad));
          // E_1 along increasing height
          const double M = (J.g1 > 0 ? 1 : -1) * bp.t / G;
          const double Nn = fd.N(i, j) / G;
          if (orient == 0) orient = Nn > 0 ? 1 : -1;
          const double Ln = orient * fd.L(i, j) / E, Mn = orient * fd.M(i, j) / std::sqrt(E * G);
          const double sc = std::max({std::abs(L), std::abs(M), std::abs(N)});
          dii = std::max({dii, std::abs(Ln - L) / sc, std::abs(Mn - M) / sc, std::abs(orient * Nn - N) / sc});
        }
    }
    out.below(tag + "I deviation", di, 1e-8);
    out.below(tag + "II vs closed form", dii, 1e-6);
  }
  out.below("seconds", seconds_since(t0), 5.0);
}

void first_kind_criterion(Verdict& out) {
  const auto t0 = std::chrono::steady_clock::now();
  Worst w;
  for (const char* fam : {"first-kind-positive", "first-kind-negative"})
    for (double k : {0.5, 0.9})
      for (double lam : {0.5, 1.0, 2.0}) {
        const auto r = forge::run_checks(job({{"family", fam}, {"k", k}, {"lambda", lam}}),
                                         {"gauss-curvature", "alignability", "conjugate", "geodesic", "lambda-isometry"});
        for (const char* n : {"gauss_curvature", "mean_curvature", "alignability", "conjugate", "geodesic_u",
                              "geodesic_v", "first_form", "second_form_scaling"})
          w.take(r, n);
      }
  out.below("K", w.v["gauss_curvature"], 1e-4);
  out.below("H", w.v["mean_curvature"], 1e-4);
  out.below("alignability", w.v["alignability"], 1e-6);
  out.below("conjugate", w.v["conjugate"], 1e-5);
  out.below("geodesic", std::max(w.v["geodesic_u"], w.v["geodesic_v"]), 1e-5);
  out.below("I(lambda)", w.v["first_form"], 1e-6);
  out.below("II scaling", w.v["second_form_scaling"], 1e-5);
  out.below("seconds", seconds_since(t0), 20.0);
}

void reciprocal_parallel_criterion(Verdict& out) {
  for (double k : {0.4, 0.8}) {
    const std::string tag = "k=" + fmt(k) + " ";
    const auto pairs = forge::run_checks(job({{"family", "knet-revolution"}, {"k", k}, {"grid", "200x200"}}),
                                         {"reciprocal-parallel"});
    double worst = 0;
    for (const auto& [name, c] : pairs.checks) worst = std::max(worst, c.max);
    out.below(tag + "pairs", worst, 1e-5);
    for (const char* fam : {"rotation-positive", "rotation-negative"}) {
      const std::string t2 = tag + (fam[9] == 'p' ? "eta+ " : "eta- ");
      const auto r = forge::run_checks(job({{"family", fam}, {"k", k}, {"grid", "200x200"}}),
                                       {"reciprocal-parallel", "codazzi"});
      out.below(t2 + "b,c", std::max({r.at("rotation_b").max, r.at("rotation_c").max}), 1e-5);
      out.below(t2 + "diagonal", r.at("rotation_diagonal").max, 1e-5);
      out.below(t2 + "path", r.at("path_residual").max, 1e-6);
      out.below(t2 + "procrustes", r.at("quadrature_procrustes").max, 1e-4);
    }
  }
}

void lax_criterion(Verdict& out) {
  const double k = 0.8;
  const forge::Job j1 = job({{"family", "lax-knet"}, {"k", k}, {"lambda", 1.0}, {"grid", "128x128"}});
  out.below("lambda=1 rms vs knet", procrustes_rms(j1.surface().pos, knet_revolution(k, j1.grid()).pos), 1e-5);
  const auto r = forge::run_checks(job({{"family", "lax-knet"}, {"k", k}, {"lambda", 2.0}, {"grid", "128x128"}}),
                                   {"lambda-isometry"});
  out.below("|psi_u|-2", r.at("speed_u").max, 1e-6);
  out.below("|psi_v|-0.5", r.at("speed_v").max, 1e-6);
  out.below("II vs lambda=1", r.at("second_form").max, 1e-5);
}

void painleve_criterion(Verdict& out) {
  for (double k : {M_PI / 4, M_PI / 2}) {
    const std::string tag = "k=" + fmt(k) + " ";
    const AmslerAngle sol = solve_painleve3(k, 12, 1e-10);
    const std::vector<double> a = painleve3_series(k, 12);
    double ds = 0;
    for (int i = 0; i <= 100; ++i) {
      const double r = 0.01 * i / 100, z = r * r / 4;
      double s = 0;
      for (std::size_t n = a.size(); n-- > 0;) s = s * z + a[n];
      ds = std::max(ds, std::abs(s - sol.omega(r)));
    }
    out.below(tag + "series", ds, 1e-8);

    const AmslerAngle neg = solve_painleve3(-k, 12, 1e-10);
    const double rc = std::min(sol.r_first_cusp(), sol.r_max());
    double dsym = 0, dode = 0;
    for (int i = 0; i <= 1000; ++i) {
      const double r = rc * i / 1000.0;
      dsym = std::max(dsym, std::abs(neg.omega(r) + sol.omega(r)));
      if (i > 0 && i < 1000)
        dode = std::max(dode, std::abs(sol.d2omega(r) + sol.domega(r) / r - std::sin(sol.omega(r))));
    }
    out.below(tag + "odd in k", dsym, 1e-10);
    out.below(tag + "ODE residual", dode, 1e-8);
    const AmslerAngle half = solve_painleve3(k, 12, 0.5e-10);
    out.below(tag + "cusp shift", std::abs(half.r_first_cusp() - sol.r_first_cusp()), 1e-6);
    out.note(tag + "cusp r=" + fmt(sol.r_first_cusp()));
  }
}

void second_kind_criterion(Verdict& out) {
  const auto t0 = std::chrono::steady_clock::now();
  Worst w;
  for (const char* fam : {"second-kind-positive", "second-kind-negative"})
    for (double k : {M_PI / 4, M_PI / 2})
      for (double lam : {1.0, 2.0}) {
        const auto r = forge::run_checks(
            job({{"family", fam}, {"k", k}, {"lambda", lam}, {"grid", "200x200"}}),
            {"gauss-codazzi", "roundtrip", "alignability", "gauss-curvature", "lambda-isometry"});
        for (const auto& [name, c] : r.checks)
          if (name.rfind("gauss_", 0) == 0 || name.rfind("codazzi", 0) == 0) w.take(r, name);
        for (const char* n : {"roundtrip", "alignability", "first_form", "second_form_scaling"}) w.take(r, n);
      }
  double gc = 0;
  for (const auto& [name, v] : w.v)
    if (name != "gauss_curvature" && (name.rfind("gauss_", 0) == 0 || name.rfind("codazzi", 0) == 0))
      gc = std::max(gc, v);
  out.below("gauss-codazzi", gc, 1e-5);
  out.below("roundtrip", w.v["roundtrip"], 1e-4);
  out.below("alignability", w.v["alignability"], 1e-5);
  out.below("K", w.v["gauss_curvature"], 1e-3);
  out.below("squeeze isometry",
            std::max(w.v["first_form"], w.v["second_form_scaling"]), 1e-4);
  out.below("seconds", seconds_since(t0), 60.0);
}

void counterexample_criterion(Verdict& out) {
  for (int sign : {1, -1})
    for (double k : {M_PI / 4, M_PI / 2}) {
      const std::string tag = std::string(sign > 0 ? "+" : "-") + "k=" + fmt(k) + " ";
      const forge::Job cj = job({{"family", "counterexample"}, {"k", k}, {"sign", sign}});
      const auto r = forge::run_checks(cj, {"counterexample"});
      // same relation on the reconstructed surface, second form by finite differences
      const forge::Job box = job({{"family", "counterexample"}, {"k", k}, {"sign", sign}, {"grid", "101x101"},
                                  {"u", {1, 2}}, {"v", {1, 2}}});
      SurfaceGrid S = box.surface();
      S.drop_derivatives();
      const FundamentalForms f = fundamental_forms(S);
      double rel = 0;
      for (std::size_t n = 0; n < f.L.data.size(); ++n)
        rel = std::max(rel, std::abs(f.L.data[n] - sign * f.N.data[n]) / std::abs(f.N.data[n]));
      out.below(tag + "reconstructed (fd)", rel, 1e-6);
      out.below(tag + (sign > 0 ? "L-N" : "L+N"),
                r.at(sign > 0 ? "isothermal_conjugate" : "isothermal_conjugate_neg").max, 1e-8);
      const auto& p = r.provenance.at("counterexample");
      out.above(tag + "max|H|", p.at("max_mean_curvature").get<double>(), 0.01);
      out.above(tag + "spread", p.at("angle_spread").get<double>(), 0.01);
    }
}

// Two candidate wrapping parameters for the negative first-kind family.
void negative_variant_criterion(Verdict& out) {
  const double k = 0.7;
  std::vector<std::string> invariant;
  for (const char* var : {"corollary", "theorem"}) {
    double di = 0, conj = 0;
    for (double lam : {0.8, 1.0, 1.25}) {
      const auto r = forge::run_checks(
          job({{"family", "first-kind-negative"}, {"k", k}, {"lambda", lam}, {"variant", var}}),
          {"lambda-isometry", "conjugate"});
      di = std::max(di, r.at("first_form").max);
      conj = std::max(conj, r.at("conjugate").max);
    }
    if (di < 1e-5) invariant.push_back(var);
    out.note(std::string(var) + ": I(lambda) " + fmt(di) + ", conjugate defect " + fmt(conj));
  }
  out.pass = invariant.size() == 1;
  out.note(invariant.size() == 1 ? "I-invariant: " + invariant[0]
                                 : "I-invariant for " + std::to_string(invariant.size()) + " of 2 candidates");
}

void elliptic_criterion(Verdict& out) {
  const auto t0 = std::chrono::steady_clock::now();
  double pyth = 0, inv = 0, recip = 0, dE = 0, dPi = 0;
  for (double m : {0.0, 0.09, 0.25, 0.64, 0.99}) {
    const double K = ellint_K(m);
    for (int i = 1; i < 200; ++i) {
      const double x = -6 + 12.0 * i / 200;
      const JacobiTriple j = jacobi(x, m);
      pyth = std::max({pyth, std::abs(j.sn * j.sn + j.cn * j.cn - 1), std::abs(j.dn * j.dn + m * j.sn * j.sn - 1)});
      const double y = 2 * K * i / 200;
      inv = std::max(inv, std::abs(ellint_F(jacobi(y, m).am, m) - y));
      const double h = 1e-5;
      auto Ex = [&](double t) { return ellint_E(jacobi(t, m).am, m); };
      auto Px = [&](double t) { return ellint_Pi(m, jacobi(t, m).am, m); };
      const double dn = jacobi(y, m).dn;
      dE = std::max(dE, std::abs((Ex(y + h) - Ex(y - h)) / (2 * h) - dn * dn));
      dPi = std::max(dPi, std::abs((Px(y + h) - Px(y - h)) / (2 * h) - 1 / (dn * dn)));
    }
  }
  for (double m : {1.21, 2.0, 4.0, 25.0})
    for (int i = 0; i < 100; ++i) {
      const double x = -2 + 4.0 * i / 100, s = std::sqrt(m);
      recip = std::max(recip, std::abs(jacobi(x, m).sn * s - jacobi(s * x, 1 / m).sn));
    }
  out.below("sn^2+cn^2, dn^2+m sn^2", pyth, 1e-12);
  out.below("F(am x)-x", inv, 1e-10);
  out.below("reciprocal modulus", recip, 1e-10);
  out.below("dE/dx-dn^2", dE, 1e-7);
  out.below("dPi/dx-dn^-2", dPi, 1e-7);

  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ux(0, M_PI / 2), um(0, 0.99), un(-2, 0.9);
  double q = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng), m = um(rng), n = un(rng);
    auto quad = [&](auto f) { return GK::integrate(f, 0.0, x, 15, 1e-11); };
    const double F = quad([&](double t) { return 1 / std::sqrt(1 - m * std::sin(t) * std::sin(t)); });
    const double E = quad([&](double t) { return std::sqrt(1 - m * std::sin(t) * std::sin(t)); });
    const double P = quad([&](double t) {
      const double s2 = std::sin(t) * std::sin(t);
      return 1 / ((1 - n * s2) * std::sqrt(1 - m * s2));
    });
    q = std::max({q, std::abs(ellint_F(x, m) - F) / std::max(1.0, F), std::abs(ellint_E(x, m) - E) / std::max(1.0, E),
                  std::abs(ellint_Pi(n, x, m) - P) / std::max(1.0, std::abs(P))});
  }
  out.below("quadrature oracle (1000 pairs)", q, 1e-10);
  out.below("seconds", seconds_since(t0), 2.0);
}

}  // namespace

int main() {
  criterion(1, knet_revolution_criterion);
  criterion(2, bour_criterion);
  criterion(3, first_kind_criterion);
  criterion(4, reciprocal_parallel_criterion);
  criterion(5, lax_criterion);
  criterion(6, painleve_criterion);
  criterion(7, second_kind_criterion);
  criterion(8, counterexample_criterion);
  criterion(9, negative_variant_criterion);
  criterion(10, elliptic_criterion);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
