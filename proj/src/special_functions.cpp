#include <array>
#include <cmath>
#include <numbers>

#include "susy/numerics.hpp"

namespace susy {

double erfc(double x) { return std::erfc(x); }

double elliptic_K(double m) {
  if (!(m >= 0.0) || !(m < 1.0)) throw std::domain_error("elliptic_K: parameter m must satisfy 0 <= m < 1");
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

JacobiElliptic jacobi_sn_cn_dn(double x, double m) {
  if (!(m >= 0.0) || !(m <= 1.0)) throw std::domain_error("jacobi_sn_cn_dn: parameter m must lie in [0, 1]");
  if (m == 0.0) return {std::sin(x), std::cos(x), 1.0};
  if (m == 1.0) {
    const double s = 1.0 / std::cosh(x);
    return {std::tanh(x), s, s};
  }
  // Reduce to one real period 4K so the Landen phase stays small.
  const double K = elliptic_K(m);
  const double period = 4.0 * K;
  double u = std::fmod(x, period);
  if (u > 2.0 * K) u -= period;
  if (u < -2.0 * K) u += period;

  // Descending Landen sequence (Abramowitz & Stegun 16.4).
  constexpr int kMax = 32;
  std::array<double, kMax + 1> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > 1e-16 * a[n] && n < kMax) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int k = n; k > 0; --k) phi = 0.5 * (phi + std::asin(c[k] / a[k] * std::sin(phi)));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // cn / cos(phi_1 - phi_0) is 0/0 at u = K.
  const double dn = std::sqrt((1.0 - m) + m * cn * cn);
  return {sn, cn, dn};
}

}  // namespace susy
