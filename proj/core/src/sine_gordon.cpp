#include "voss/sine_gordon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/math/interpolators/quintic_hermite.hpp>
#include <boost/numeric/odeint.hpp>

#include "voss/elliptic.hpp"

namespace voss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSeriesStart = 1e-3;
constexpr double kSeriesZ = 1e-2;
constexpr int kSeriesTerms = 14;

void require_modulus(double k, const char* who) {
  if (!(k > 0) || !std::isfinite(k)) throw DomainError(std::string(who) + ": modulus k must be > 0");
}

}  // namespace

Interval domain_strip(double k, int i) {
  require_modulus(k, "domain_strip");
  if (k == 1.0) {
    if (i == 0) return {0.0, kInf};
    if (i == -1) return {-kInf, 0.0};
    throw DomainError("domain_strip: k = 1 admits strip indices 0 and -1 only");
  }
  if (k < 1.0) {
    const double K = ellint_K(k * k);
    return {2.0 * i * K, 2.0 * (i + 1) * K};
  }
  const double q = ellint_K(1.0 / (k * k)) / k;
  return {2.0 * i * q, (2.0 * i + 1.0) * q};
}

Interval RevolutionAngle::inset(double margin) const {
  Interval s = strip();
  const double w = std::isfinite(s.width()) ? s.width() : 1.0;
  if (std::isfinite(s.lo)) s.lo += margin * w;
  if (std::isfinite(s.hi)) s.hi -= margin * w;
  return s;
}

double omega_revolution(double x, double k) {
  require_modulus(k, "omega_revolution");
  const JacobiTriple j = jacobi(x, k * k);
  // sn vanishes to within rounding of x on the fold
  if (std::abs(j.sn) <= 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
    throw SingularDomainError(Singularity::fold, "omega_revolution: sn(x) = 0 at x = " + std::to_string(x));
  const double c = 2.0 * k * k * j.sn * j.sn - 1.0;
  if (c >= 1.0 - 1e-15)
    throw SingularDomainError(Singularity::cusp, "omega_revolution: k sn(x) = 1 at x = " + std::to_string(x));
  return std::acos(std::max(c, -1.0));
}

double omega_revolution_dx(double x, double k) {
  require_modulus(k, "omega_revolution_dx");
  const JacobiTriple j = jacobi(x, k * k);
  if (j.sn == 0.0 || j.dn == 0.0)
    throw SingularDomainError(j.sn == 0.0 ? Singularity::fold : Singularity::cusp,
                              "omega_revolution_dx: singular at x = " + std::to_string(x));
  const double s = (j.sn > 0) == (j.dn > 0) ? 1.0 : -1.0;
  return -2.0 * k * j.cn * s;
}

std::vector<double> painleve3_series(double k, int n) {
  std::vector<double> a(n + 1, 0.0), S(n + 1, 0.0), C(n + 1, 0.0);
  a[0] = k;
  S[0] = std::sin(k);
  C[0] = std::cos(k);
  for (int m = 0; m < n; ++m) {
    a[m + 1] = S[m] / double((m + 1) * (m + 1));
    const int q = m + 1;
    double s = 0, c = 0;
    for (int j = 1; j <= q; ++j) {
      s += j * a[j] * C[q - j];
      c -= j * a[j] * S[q - j];
    }
    S[q] = s / q;
    C[q] = c / q;
  }
  return a;
}

struct AmslerAngle::Impl {
  double k = 0, tol = 0, r_max = 0, h = 0;
  double r_cusp = kInf;
  Singularity kind = Singularity::fold;
  std::vector<double> r, w, w1;
  std::vector<double> series;
  std::shared_ptr<boost::math::interpolators::cardinal_quintic_hermite<std::vector<double>>> wi, w1i;

  double series_w(double z, int d) const {
    // d-th z-derivative of sum a_n z^n
    double acc = 0;
    for (int n = int(series.size()) - 1; n >= d; --n) {
      double c = series[n];
      for (int j = 0; j < d; ++j) c *= double(n - j);
      acc = acc * z + c;
    }
    return acc;
  }
  double at_w(double x) const { return x <= 0 ? k : (*wi)(x); }
  double at_w1(double x) const { return x <= 0 ? 0.0 : (*w1i)(x); }
};

namespace {

double second_derivative(double r, double w, double w1, double k) {
  return r == 0.0 ? 0.5 * std::sin(k) : std::sin(w) - w1 / r;
}

std::shared_ptr<const AmslerAngle::Impl> build(double k, double tol, double r_max, std::vector<double> r,
                                                 std::vector<double> w, std::vector<double> w1) {
  auto impl = std::make_shared<AmslerAngle::Impl>();
  impl->k = k;
  impl->tol = tol;
  impl->r_max = r_max;
  impl->h = r[1] - r[0];
  impl->series = painleve3_series(k, kSeriesTerms);
  std::vector<double> w2(r.size()), w3(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    w2[i] = second_derivative(r[i], w[i], w1[i], k);
    w3[i] = r[i] == 0.0 ? 0.0 : std::cos(w[i]) * w1[i] - w2[i] / r[i] + w1[i] / (r[i] * r[i]);
  }
  std::vector<double> wc = w, w1c = w1, w1c2 = w1, w2c = w2;
  using boost::math::interpolators::cardinal_quintic_hermite;
  impl->wi = std::make_shared<cardinal_quintic_hermite<std::vector<double>>>(std::move(wc), std::move(w1c),
                                                                            std::move(w2c), r[0], impl->h);
  impl->w1i = std::make_shared<cardinal_quintic_hermite<std::vector<double>>>(std::move(w1c2), std::move(w2),
                                                                             std::move(w3), r[0], impl->h);
  const double sigma = k > 0 ? 1.0 : -1.0;
  auto gap = [&](double x) {
    const double v = sigma * impl->at_w(x);
    return std::min(v, std::numbers::pi - v);
  };
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (gap(r[i]) > 0) continue;
    double a = r[i - 1], b = r[i];
    while (b - a > 1e-10) {
      const double m = 0.5 * (a + b);
      (gap(m) > 0 ? a : b) = m;
    }
    impl->r_cusp = 0.5 * (a + b);
    const double v = sigma * w[i];
    impl->kind = v >= 0.5 * std::numbers::pi ? Singularity::fold : Singularity::cusp;
    break;
  }
  impl->r = std::move(r);
  impl->w = std::move(w);
  impl->w1 = std::move(w1);
  return impl;
}

using State = std::array<double, 2>;

void sample_solution(double k, double tol, const std::vector<double>& nodes, std::vector<double>& w,
                     std::vector<double>& w1) {
  namespace ode = boost::numeric::odeint;
  const std::vector<double> a = painleve3_series(k, kSeriesTerms);
  auto series_at = [&](double r, double& v, double& d) {
    const double z = 0.25 * r * r;
    v = 0;
    d = 0;
    for (int n = kSeriesTerms; n >= 0; --n) v = v * z + a[n];
    for (int n = kSeriesTerms; n >= 1; --n) d = d * z + n * a[n];
    d *= 0.5 * r;  // dz/dr = r/2
  };
  w.assign(nodes.size(), 0.0);
  w1.assign(nodes.size(), 0.0);
  std::vector<double> times{kSeriesStart};
  std::size_t first = 0;
  for (; first < nodes.size() && nodes[first] <= kSeriesStart; ++first) series_at(nodes[first], w[first], w1[first]);
  times.insert(times.end(), nodes.begin() + first, nodes.end());
  State x;
  series_at(kSeriesStart, x[0], x[1]);
  auto rhs = [](const State& y, State& dy, double r) {
    dy[0] = y[1];
    dy[1] = std::sin(y[0]) - y[1] / r;
  };
  std::size_t idx = first;
  bool skip = true;
  auto obs = [&](const State& y, double) {
    if (skip) {
      skip = false;
      return;
    }
    w[idx] = y[0];
    w1[idx] = y[1];
    ++idx;
  };
  try {
    auto stepper = ode::make_dense_output(tol * 1e-2, tol * 1e-2, ode::runge_kutta_dopri5<State>());
    ode::integrate_times(stepper, rhs, x, times.begin(), times.end(), 1e-4, obs, ode::max_step_checker(100000));
  } catch (const std::exception& e) {
    throw SolverError(std::string("solve_painleve3: integrator failed: ") + e.what());
  }
  for (std::size_t i = first; i < nodes.size(); ++i)
    if (!std::isfinite(w[i]) || !std::isfinite(w1[i])) throw SolverError("solve_painleve3: non-finite state");
}

}  // namespace

AmslerAngle solve_painleve3(double k, double r_max, double tol) {
  if (!(std::abs(k) > 0 && std::abs(k) < std::numbers::pi))
    throw DomainError("solve_painleve3: initial angle must satisfy 0 < |k| < pi");
  if (!(r_max > 0) || !std::isfinite(r_max)) throw DomainError("solve_painleve3: r_max must be positive");
  if (!(tol > 0)) throw DomainError("solve_painleve3: tol must be positive");

  double h = 1.0 / 16.0;
  for (;;) {
    const std::size_t n = std::size_t(std::ceil(r_max / h)) + 1;
    if (n > 4000000) throw SolverError("solve_painleve3: sample grid refinement did not converge");
    // fine grid with spacing h/2; even nodes form the trial interpolation grid
    std::vector<double> fine(2 * n - 1);
    for (std::size_t i = 0; i < fine.size(); ++i) fine[i] = 0.5 * h * double(i);
    std::vector<double> fw, fw1;
    sample_solution(k, tol, fine, fw, fw1);
    std::vector<double> cr, cw, cw1;
    for (std::size_t i = 0; i < fine.size(); i += 2) {
      cr.push_back(fine[i]);
      cw.push_back(fw[i]);
      cw1.push_back(fw1[i]);
    }
    auto coarse = build(k, tol, r_max, cr, cw, cw1);
    double err = 0;
    for (std::size_t i = 1; i < fine.size(); i += 2)
      err = std::max({err, std::abs(coarse->at_w(fine[i]) - fw[i]), std::abs(coarse->at_w1(fine[i]) - fw1[i])});
    if (err < tol) {
      AmslerAngle a = AmslerAngle::from_samples(std::move(fine), std::move(fw), std::move(fw1), tol);
      return a;
    }
    h *= 0.5;
  }
}

AmslerAngle AmslerAngle::from_samples(std::vector<double> r, std::vector<double> omega, std::vector<double> domega,
                                      double tol) {
  if (r.size() < 3 || omega.size() != r.size() || domega.size() != r.size())
    throw DomainError("AmslerAngle: need at least three aligned samples");
  if (r[0] != 0.0) throw DomainError("AmslerAngle: samples must start at r = 0");
  const double h = r[1] - r[0];
  for (std::size_t i = 1; i < r.size(); ++i)
    if (std::abs(r[i] - r[i - 1] - h) > 1e-9 * h) throw DomainError("AmslerAngle: samples must be uniform in r");
  const double k = omega[0];
  if (!(std::abs(k) > 0 && std::abs(k) < std::numbers::pi)) throw DomainError("AmslerAngle: omega(0) outside (0, pi)");
  AmslerAngle a;
  const double rmax = r.back();
  a.impl_ = build(k, tol, rmax, std::move(r), std::move(omega), std::move(domega));
  return a;
}

double AmslerAngle::k() const { return impl_->k; }
double AmslerAngle::tol() const { return impl_->tol; }
double AmslerAngle::r_max() const { return impl_->r_max; }
double AmslerAngle::step() const { return impl_->h; }
double AmslerAngle::r_first_cusp() const { return impl_->r_cusp; }
Singularity AmslerAngle::first_singularity() const { return impl_->kind; }
const std::vector<double>& AmslerAngle::r() const { return impl_->r; }
const std::vector<double>& AmslerAngle::omega_samples() const { return impl_->w; }
const std::vector<double>& AmslerAngle::domega_samples() const { return impl_->w1; }

namespace {
void check_radius(const AmslerAngle::Impl& s, double r) {
  if (!(r >= 0) || r > s.r.back() * (1 + 1e-14))
    throw DomainError("AmslerAngle: r = " + std::to_string(r) + " outside the sampled range");
}
}  // namespace

double AmslerAngle::omega(double r) const {
  check_radius(*impl_, r);
  return r < kSeriesStart ? impl_->series_w(0.25 * r * r, 0) : impl_->at_w(r);
}

double AmslerAngle::domega(double r) const {
  check_radius(*impl_, r);
  return r < kSeriesStart ? 0.5 * r * impl_->series_w(0.25 * r * r, 1) : impl_->at_w1(r);
}

double AmslerAngle::d2omega(double r) const {
  check_radius(*impl_, r);
  const double z = 0.25 * r * r;
  if (r < kSeriesStart) return 0.5 * impl_->series_w(z, 1) + z * impl_->series_w(z, 2);
  return impl_->w1i->prime(r);
}

AmslerAngle::Jet AmslerAngle::similarity(double z) const {
  if (!(z >= 0)) throw DomainError("AmslerAngle: similarity variable must be >= 0");
  if (z < kSeriesZ) return {impl_->series_w(z, 0), impl_->series_w(z, 1), impl_->series_w(z, 2)};
  const double r = 2.0 * std::sqrt(z);
  check_radius(*impl_, r);
  const double w = impl_->at_w(r), w1 = impl_->at_w1(r);
  const double w2 = std::sin(w) - w1 / r;
  return {w, 2.0 * w1 / r, 4.0 * (w2 - w1 / r) / (r * r)};
}

void AmslerAngle::write_csv(std::ostream& os) const {
  std::ostringstream line;
  os << "r,omega,domega\n";
  char buf[96];
  for (std::size_t i = 0; i < impl_->r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", impl_->r[i], impl_->w[i], impl_->w1[i]);
    os << buf;
  }
}

AmslerAngle AmslerAngle::read_csv(std::istream& is, double tol) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("AmslerAngle::read_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,omega,domega") throw DomainError("AmslerAngle::read_csv: bad header '" + line + "'");
  std::vector<double> r, w, w1;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    double a, b, c;
    char c1, c2;
    std::istringstream ss(line);
    if (!(ss >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',')
      throw DomainError("AmslerAngle::read_csv: malformed row '" + line + "'");
    r.push_back(a);
    w.push_back(b);
    w1.push_back(c);
  }
  return from_samples(std::move(r), std::move(w), std::move(w1), tol);
}

double amsler_omega(double u, double v, const AmslerAngle& sol) {
  if (!(u > 0) || !(v > 0)) throw DomainError("amsler_omega: need u > 0 and v > 0");
  const double r = std::sqrt(4.0 * u * v);
  if (r >= sol.r_first_cusp())
    throw SingularDomainError(sol.first_singularity(),
                              "amsler_omega: r = " + std::to_string(r) + " beyond the first singular curve");
  return sol.omega(r);
}

}  // namespace voss
