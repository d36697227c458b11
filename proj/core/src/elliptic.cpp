#include "voss/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "voss/error.hpp"

namespace voss {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

void require_param(double m, const char* who) {
  if (!(m >= 0.0) || !std::isfinite(m))
    throw DomainError(std::string(who) + ": parameter m must be finite and >= 0, got " + std::to_string(m));
}

void require_finite(double v, const char* who) {
  if (!std::isfinite(v)) throw DomainError(std::string(who) + ": non-finite argument");
}

// phi = j*pi + r, r in [-pi/2, pi/2]
std::pair<double, double> reduce_amplitude(double phi) {
  const double j = std::nearbyint(phi / kPi);
  return {j, phi - j * kPi};
}

}  // namespace

double carlson_rc(double x, double y) {
  if (x < 0 || y == 0 || !std::isfinite(x) || !std::isfinite(y))
    throw DomainError("carlson_rc: need x >= 0 and y != 0");
  if (y < 0) return std::sqrt(x / (x - y)) * carlson_rc(x - y, -y);  // principal value
  if (x == y) return 1.0 / std::sqrt(x);
  if (x == 0) return kPi / (2.0 * std::sqrt(y));
  if (x < y) {
    const double s = std::sqrt((y - x) / x);
    return std::atan(s) / std::sqrt(y - x);
  }
  const double s = std::sqrt((x - y) / x);
  return std::atanh(s) / std::sqrt(x - y);
}

double carlson_rf(double x, double y, double z) {
  if (x < 0 || y < 0 || z < 0 || (x == 0) + (y == 0) + (z == 0) > 1)
    throw DomainError("carlson_rf: arguments must be >= 0 with at most one zero");
  const double a0 = (x + y + z) / 3.0;
  const double dx0 = a0 - x, dy0 = a0 - y;
  double a = a0;
  const double q = std::pow(3.0 * kEps, -1.0 / 6.0) * std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double f = 1.0;
  while (q * f >= std::abs(a)) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    a = 0.25 * (a + lam);
    f *= 0.25;
  }
  const double X = dx0 * f / a, Y = dy0 * f / a, Z = -(X + Y);
  const double e2 = X * Y - Z * Z, e3 = X * Y * Z;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

double carlson_rd(double x, double y, double z) {
  if (x < 0 || y < 0 || z <= 0 || (x == 0 && y == 0))
    throw DomainError("carlson_rd: need x, y >= 0 (not both zero) and z > 0");
  const double a0 = (x + y + 3.0 * z) / 5.0;
  const double dx0 = a0 - x, dy0 = a0 - y;
  double a = a0;
  const double q = std::pow(0.25 * kEps, -1.0 / 6.0) * std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double f = 1.0, sum = 0.0;
  while (q * f >= std::abs(a)) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sy * sz + sz * sx;
    sum += f / (sz * (z + lam));
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    a = 0.25 * (a + lam);
    f *= 0.25;
  }
  const double X = dx0 * f / a, Y = dy0 * f / a, Z = -(X + Y) / 3.0;
  const double xy = X * Y, z2 = Z * Z;
  const double e2 = xy - 6.0 * z2, e3 = (3.0 * xy - 8.0 * z2) * Z, e4 = 3.0 * (xy - z2) * z2, e5 = xy * Z * z2;
  const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                        9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return f * series / (a * std::sqrt(a)) + 3.0 * sum;
}

double carlson_rj(double x, double y, double z, double p) {
  if (x < 0 || y < 0 || z < 0 || p <= 0 || (x == 0) + (y == 0) + (z == 0) > 1)
    throw DomainError("carlson_rj: need x, y, z >= 0 (at most one zero) and p > 0");
  const double a0 = (x + y + z + 2.0 * p) / 5.0;
  const double dx0 = a0 - x, dy0 = a0 - y, dz0 = a0 - z;
  const double delta = (p - x) * (p - y) * (p - z);
  double a = a0;
  const double q = std::pow(0.25 * kEps, -1.0 / 6.0) *
                   std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z), std::abs(a0 - p)});
  double f = 1.0, f3 = 1.0, sum = 0.0;
  while (q * f >= std::abs(a)) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
    const double lam = sx * sy + sy * sz + sz * sx;
    const double d = (sp + sx) * (sp + sy) * (sp + sz);
    const double e = delta * f3 / (d * d);
    sum += f * carlson_rc(1.0, 1.0 + e) / d;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    p = 0.25 * (p + lam);
    a = 0.25 * (a + lam);
    f *= 0.25;
    f3 *= 1.0 / 64.0;
  }
  const double X = dx0 * f / a, Y = dy0 * f / a, Z = dz0 * f / a, P = -(X + Y + Z) / 2.0;
  const double e2 = X * Y + X * Z + Y * Z - 3.0 * P * P;
  const double e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P * P * P;
  const double e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P * P * P) * P;
  const double e5 = X * Y * Z * P * P;
  const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                        9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return f * series / (a * std::sqrt(a)) + 6.0 * sum;
}

namespace {

// Descending Landen / AGM scheme; 0 <= m < 1.
JacobiTriple jacobi_agm(double x, double m) {
  if (m == 0.0) return {x, std::sin(x), std::cos(x), 1.0};
  constexpr int kMax = 16;
  std::array<double, kMax + 1> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > kEps * a[n] && n < kMax) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * x, n);
  for (int i = n; i >= 1; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  const double sn = std::sin(phi), cn = std::cos(phi);
  return {phi, sn, cn, std::sqrt(cn * cn + (1.0 - m) * sn * sn)};
}

}  // namespace

JacobiTriple jacobi(double x, double m) {
  require_finite(x, "jacobi");
  require_param(m, "jacobi");
  if (m < 1.0) return jacobi_agm(x, m);
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(x);
    return {std::atan(std::sinh(x)), std::tanh(x), sech, sech};
  }
  const double k = std::sqrt(m);
  const JacobiTriple r = jacobi_agm(k * x, 1.0 / m);
  const double sn = r.sn / k, cn = r.dn, dn = r.cn;
  return {std::atan2(sn, cn), sn, cn, dn};
}

double ellint_K(double m) {
  require_param(m, "ellint_K");
  if (m >= 1.0) throw DomainError("ellint_K: diverges for m >= 1");
  double a = 1.0, b = std::sqrt(1.0 - m);
  while (std::abs(a - b) > kEps * a) {
    const double t = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = t;
  }
  return kPi / (a + b);
}

double ellint_E(double m) {
  require_param(m, "ellint_E");
  if (m > 1.0) throw DomainError("ellint_E: complete integral needs m <= 1");
  if (m == 1.0) return 1.0;
  double a = 1.0, b = std::sqrt(1.0 - m), c2 = m, sum = 0.5 * m, w = 0.5;
  while (std::abs(a - b) > kEps * a) {
    const double an = 0.5 * (a + b);
    const double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    w *= 2.0;
    c2 = cn * cn;
    sum += w * c2;
  }
  return (1.0 - sum) * kPi / (2.0 * a);
}

double ellint_Pi(double n, double m) {
  require_param(m, "ellint_Pi");
  if (m >= 1.0) throw DomainError("ellint_Pi: complete integral needs m < 1");
  if (n >= 1.0) throw DomainError("ellint_Pi: complete integral needs n < 1");
  return carlson_rf(0.0, 1.0 - m, 1.0) + n / 3.0 * carlson_rj(0.0, 1.0 - m, 1.0, 1.0 - n);
}

double ellint_F(double phi, double m) {
  require_finite(phi, "ellint_F");
  require_param(m, "ellint_F");
  const auto [j, r] = reduce_amplitude(phi);
  const double s = std::sin(r), c = std::cos(r);
  const double delta2 = 1.0 - m * s * s;
  if (m == 1.0) {
    if (j != 0.0 || std::abs(r) >= 0.5 * kPi) throw DomainError("ellint_F: diverges at |phi| >= pi/2 for m = 1");
    return std::atanh(s);
  }
  if (m > 1.0 && (j != 0.0 || delta2 < 0.0)) throw DomainError("ellint_F: amplitude outside the real range for m > 1");
  const double base = s == 0.0 ? 0.0 : s * carlson_rf(c * c, std::max(delta2, 0.0), 1.0);
  return j == 0.0 ? base : base + 2.0 * j * ellint_K(m);
}

double ellint_E(double phi, double m) {
  require_finite(phi, "ellint_E");
  require_param(m, "ellint_E");
  const auto [j, r] = reduce_amplitude(phi);
  const double s = std::sin(r), c = std::cos(r);
  if (m == 1.0) return s + 2.0 * j;
  const double delta2 = 1.0 - m * s * s;
  if (m > 1.0 && (j != 0.0 || delta2 < 0.0)) throw DomainError("ellint_E: amplitude outside the real range for m > 1");
  double base = 0.0;
  if (s != 0.0) {
    const double x = c * c, y = std::max(delta2, 0.0);
    base = s * carlson_rf(x, y, 1.0) - m * s * s * s / 3.0 * carlson_rd(x, y, 1.0);
  }
  return j == 0.0 ? base : base + 2.0 * j * ellint_E(m);
}

double ellint_Pi(double n, double phi, double m) {
  require_finite(phi, "ellint_Pi");
  require_finite(n, "ellint_Pi");
  require_param(m, "ellint_Pi");
  if (m >= 1.0) throw DomainError("ellint_Pi: needs m < 1");
  const auto [j, r] = reduce_amplitude(phi);
  const double s = std::sin(r), c = std::cos(r);
  const double p = 1.0 - n * s * s;
  if (p <= 0.0 || (j != 0.0 && n >= 1.0))
    throw DomainError("ellint_Pi: 1 - n sin^2(phi) <= 0 on the integration range");
  double base = 0.0;
  if (s != 0.0) {
    const double x = c * c, y = 1.0 - m * s * s;
    base = s * carlson_rf(x, y, 1.0) + n * s * s * s / 3.0 * carlson_rj(x, y, 1.0, p);
  }
  return j == 0.0 ? base : base + 2.0 * j * ellint_Pi(n, m);
}

double integral_dn2(double x, double m) {
  require_finite(x, "integral_dn2");
  require_param(m, "integral_dn2");
  if (m == 1.0) return std::tanh(x);
  if (m < 1.0) return ellint_E(jacobi(x, m).am, m);
  // dn(z|m) = cn(kz|1/m)
  const double k = std::sqrt(m), mu = 1.0 / m, w = k * x;
  return (ellint_E(jacobi(w, mu).am, mu) - (1.0 - mu) * w) / (mu * k);
}

double integral_inv_dn2(double x, double m) {
  require_finite(x, "integral_inv_dn2");
  require_param(m, "integral_inv_dn2");
  if (m == 1.0) return 0.5 * (x + std::sinh(x) * std::cosh(x));
  if (m < 1.0) return ellint_Pi(m, jacobi(x, m).am, m);
  // 1/dn^2(z|m) = nc^2(kz|1/m); antiderivative (k'^2 w - E(w) + dn sn / cn) / k'^2
  const double k = std::sqrt(m), mu = 1.0 / m, w = k * x, kp2 = 1.0 - mu;
  const JacobiTriple t = jacobi(w, mu);
  if (t.cn == 0.0) throw DomainError("integral_inv_dn2: dn vanishes on the range");
  return (kp2 * w - ellint_E(t.am, mu) + t.dn * t.sn / t.cn) / (kp2 * k);
}

}  // namespace voss
