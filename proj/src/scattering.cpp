#include "susy/scattering.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace susy {

namespace {

void require_flat(const std::vector<double>& v, std::size_t from, std::size_t to, double ref, const char* side) {
  for (std::size_t i = from; i < to; ++i)
    if (std::abs(v[i] - ref) > 1e-8)
      throw std::invalid_argument(std::string("numeric_rt: potential is not flat over the ") + side +
                                  " 5% of the grid (|V - V_edge| > 1e-8)");
}

}  // namespace

ScatterAmplitudes numeric_rt(const PotentialOnGrid& v, double energy) {
  const Grid& g = v.grid;
  const std::size_t n = g.size();
  if (n < 100) throw std::invalid_argument("numeric_rt: grid too small");
  const std::size_t window = std::max<std::size_t>(5, n / 20);
  const double vl = v.values.front();
  const double vr = v.values.back();
  require_flat(v.values, 0, window, vl, "leading");
  require_flat(v.values, n - window, n, vr, "trailing");
  const double kin = v.units.kinetic();
  if (!(energy > std::max(vl, vr))) throw std::invalid_argument("numeric_rt: energy is below an asymptote");
  const double k = std::sqrt((energy - vl) / kin);
  const double kp = std::sqrt((energy - vr) / kin);
  const double h = g.spacing();
  const double h12 = h * h / 12.0;

  std::vector<Complex> psi(n);
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = (v.values[i] - energy) / kin;
  const Complex I(0.0, 1.0);
  psi[n - 1] = std::exp(I * kp * g[n - 1]);
  psi[n - 2] = std::exp(I * kp * g[n - 2]);
  for (std::size_t i = n - 2; i >= 1; --i) {
    psi[i - 1] = (2.0 * (1.0 + 5.0 * h12 * q[i]) * psi[i] - (1.0 - h12 * q[i + 1]) * psi[i + 1]) /
                 (1.0 - h12 * q[i - 1]);
  }

  Eigen::MatrixXcd M(static_cast<Eigen::Index>(window), 2);
  Eigen::VectorXcd b(static_cast<Eigen::Index>(window));
  for (std::size_t i = 0; i < window; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    M(r, 0) = std::exp(I * k * g[i]);
    M(r, 1) = std::exp(-I * k * g[i]);
    b(r) = psi[i];
  }
  const Eigen::VectorXcd ab = M.colPivHouseholderQr().solve(b);
  const Complex alpha = ab(0), beta = ab(1);
  if (std::abs(alpha) == 0.0) throw NumericError("numeric_rt: vanishing incident amplitude");
  ScatterAmplitudes out;
  out.k = k;
  out.k_prime = kp;
  out.r = beta / alpha;
  out.t = 1.0 / alpha;
  return out;
}

ScatterAmplitudes partner_rt(const ScatterAmplitudes& a, const Superpotential& w) {
  if (!w.w_minus() || !w.w_plus()) throw std::invalid_argument("partner_rt: superpotential needs finite W- and W+");
  const double wm = *w.w_minus(), wp = *w.w_plus();
  const Complex I(0.0, 1.0);
  ScatterAmplitudes out = a;
  out.r = (wm + I * a.k) / (wm - I * a.k) * a.r;
  out.t = (wp - I * a.k_prime) / (wm - I * a.k) * a.t;
  return out;
}

Complex reflectionless_T(int p, double k) {
  if (p < 1) throw std::invalid_argument("reflectionless_T: p must be at least 1");
  const Complex I(0.0, 1.0);
  Complex t = 1.0;
  for (int j = 1; j <= p; ++j) t *= (static_cast<double>(j) - I * k) / (-static_cast<double>(j) - I * k);
  return t;
}

Complex partner_phase_shift(Complex s2, double w_plus, double k_prime) {
  if (std::abs(std::abs(s2) - 1.0) > 1e-9) throw std::invalid_argument("partner_phase_shift: S2 must be unimodular");
  if (k_prime == 0.0) throw std::invalid_argument("partner_phase_shift: k' must be nonzero");
  if (std::isinf(w_plus)) return s2;
  const Complex I(0.0, 1.0);
  return (w_plus - I * k_prime) / (w_plus + I * k_prime) * s2;
}

}  // namespace susy
