#include "susy/isospectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "susy/susy_core.hpp"

namespace susy {

namespace {

// Integral of f beyond the first sample, assuming exponential decay fitted to
// samples 0 and 1 (zero when the samples do not decay outward).
double exp_tail(double f0, double f1, double h) {
  if (!(f0 > 0.0) || !(f1 > f0)) return 0.0;
  const double kappa = std::log(f1 / f0) / h;
  return f0 / kappa;
}

std::vector<double> squares(const SampledFunction& f) {
  std::vector<double> sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  return sq;
}

std::vector<double> right_cumulative(const Grid& grid, const std::vector<double>& sq) {
  const std::size_t n = sq.size();
  std::vector<double> rev(sq.rbegin(), sq.rend());
  const auto cum = cumulative_integral(grid, rev);
  const double tail = exp_tail(sq[n - 1], sq[n - 2], grid.spacing());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = tail + cum[n - 1 - i];
  return out;
}

void check_admissible(double lambda) {
  if (std::isnan(lambda) || (lambda >= -1.0 && lambda <= 0.0))
    throw std::invalid_argument("isospectral: lambda must satisfy lambda > 0 or lambda < -1");
}

Superpotential interpolated(const Grid& grid, std::vector<double> w, std::vector<double> dw, const Superpotential& base) {
  auto ws = std::make_shared<SampledFunction>(grid, std::move(w));
  auto dws = std::make_shared<SampledFunction>(grid, std::move(dw));
  Superpotential::Definition d;
  d.w = [ws](double x) { return ws->interpolate(x); };
  d.dw = [dws](double x) { return dws->interpolate(x); };
  d.domain = base.domain();
  d.units = base.units();
  d.params = base.params();
  d.w_minus = base.w_minus();
  d.w_plus = base.w_plus();
  d.name = base.name() + " (deformed)";
  return Superpotential(std::move(d));
}

struct Pieces {
  std::vector<double> w, dw, u, du, v1;
};

// u = psi0^2/(I + lambda) and its exact derivative, plus base W, W', V1 at nodes.
Pieces pieces(const IsoFamily& fam) {
  const Grid& g = fam.grid();
  const std::size_t n = g.size();
  const double c = fam.base_w().units().scale();
  Pieces p;
  p.w = fam.base_w().sample(g);
  p.dw = fam.base_w().sample_derivative(g);
  p.u.resize(n);
  p.du.resize(n);
  p.v1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(p.w[i]) || !std::isfinite(p.dw[i]))
      throw std::invalid_argument("isospectral: base W must be finite on every grid node");
    const double psi = fam.base_psi0()[i];
    const double s = fam.shifted(i);
    const double u = psi * psi / s;
    p.u[i] = u;
    p.du[i] = -2.0 * p.w[i] * u / c - u * u;
    p.v1[i] = p.w[i] * p.w[i] - c * p.dw[i];
  }
  return p;
}

}  // namespace

IsoFamily::IsoFamily(Superpotential base_w, SampledFunction base_psi0, SampledFunction cumulative,
                     std::vector<double> complement, double lambda)
    : base_w_(std::move(base_w)),
      base_psi0_(std::move(base_psi0)),
      cumulative_(std::move(cumulative)),
      complement_(std::move(complement)),
      lambda_(lambda) {
  if (!(base_psi0_.grid() == cumulative_.grid()) || complement_.size() != cumulative_.size())
    throw std::invalid_argument("IsoFamily: inconsistent grids");
  if (lambda > -1.0 && lambda < 0.0) throw std::invalid_argument("IsoFamily: lambda in (-1, 0) makes I + lambda vanish");
  for (std::size_t i = 1; i < cumulative_.size(); ++i)
    if (cumulative_[i] < cumulative_[i - 1] - 1e-14) throw std::invalid_argument("IsoFamily: I(x) must be nondecreasing");
}

IsoFamily IsoFamily::make(const Superpotential& base_w, const Grid& grid, double lambda) {
  auto psi0 = ground_state_from_w(base_w, grid);
  auto cum = cumulative_norm(psi0);
  auto comp = right_cumulative(grid, squares(psi0));
  return IsoFamily(base_w, std::move(psi0), std::move(cum), std::move(comp), lambda);
}

IsoFamily IsoFamily::with_lambda(double lambda) const {
  return IsoFamily(base_w_, base_psi0_, cumulative_, complement_, lambda);
}

double IsoFamily::shifted(std::size_t i) const {
  if (lambda_ >= 0.0) return cumulative_[i] + lambda_;
  return -(complement_[i] + (-1.0 - lambda_));
}

SampledFunction cumulative_norm(const SampledFunction& psi0) {
  const Grid& g = psi0.grid();
  const auto sq = squares(psi0);
  const double norm = integrate(g, sq);
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("cumulative_norm: psi0 is not normalized (norm " + std::to_string(norm) + ")");
  const auto cum = cumulative_integral(g, sq);
  const double tail = exp_tail(sq[0], sq[1], g.spacing());
  std::vector<double> out(cum.size());
  for (std::size_t i = 0; i < cum.size(); ++i) out[i] = tail + cum[i];
  return SampledFunction(g, std::move(out));
}

PotentialOnGrid deformed_potential(const IsoFamily& fam, double lambda) {
  const IsoFamily f = fam.with_lambda(lambda);
  const Pieces p = pieces(f);
  const double c = fam.base_w().units().scale();
  const std::size_t n = p.u.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = p.v1[i] - 2.0 * c * c * p.du[i];
  const Domain& d = fam.base_w().domain();
  return PotentialOnGrid{fam.grid(), std::move(v), d.left_wall() ? Edge::wall : Edge::open,
                         d.right_wall() ? Edge::wall : Edge::open, fam.base_w().units()};
}

DeformedFamily deformed_family(const IsoFamily& fam) {
  const double lambda = fam.lambda();
  check_admissible(lambda);
  const Pieces p = pieces(fam);
  const Grid& g = fam.grid();
  const double c = fam.base_w().units().scale();
  const std::size_t n = g.size();
  std::vector<double> wh(n), dwh(n), psi(n);
  const double pref = std::sqrt(lambda * (1.0 + lambda));
  for (std::size_t i = 0; i < n; ++i) {
    wh[i] = p.w[i] + c * p.u[i];
    dwh[i] = p.dw[i] + c * p.du[i];
    psi[i] = pref * fam.base_psi0()[i] / fam.shifted(i);
  }
  SampledFunction psi_hat(g, std::move(psi));
  const double norm = integrate(g, squares(psi_hat));
  if (std::abs(norm - 1.0) > 1e-5)
    throw NumericError("deformed_family: normalization of the deformed ground state is off (" + std::to_string(norm) + ")");
  SampledFunction w_samples(g, wh);
  Superpotential w_hat = interpolated(g, std::move(wh), std::move(dwh), fam.base_w());
  return DeformedFamily{std::move(w_hat), std::move(w_samples), deformed_potential(fam, lambda), std::move(psi_hat)};
}

SampledFunction deformed_excited(const IsoFamily& fam, const SampledFunction& psi2, double energy) {
  if (!(psi2.grid() == fam.grid())) throw std::invalid_argument("deformed_excited: partner state is on a different grid");
  if (!(energy > 0.0)) throw std::invalid_argument("deformed_excited: partner energy must be positive");
  const double c = fam.base_w().units().scale();
  const Pieces p = pieces(fam);
  const auto d = derivative(psi2.grid(), psi2.values());
  std::vector<double> out(psi2.size());
  const double s = 1.0 / std::sqrt(energy);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * (-c * d[i] + (p.w[i] + c * p.u[i]) * psi2[i]);
  return SampledFunction(psi2.grid(), std::move(out));
}

Charges conserved_charges(const IsoFamily& fam) {
  const PotentialOnGrid v = deformed_potential(fam, fam.lambda());
  const std::size_t n = v.size();
  const std::size_t window = std::max<std::size_t>(3, n / 20);
  const double vl = v.values.front(), vr = v.values.back();
  const double scale = std::max(1.0, std::abs(vl));
  auto flat = [&](std::size_t from, std::size_t to, double ref) {
    for (std::size_t i = from; i < to; ++i)
      if (std::abs(v.values[i] - ref) > 1e-6 * scale) return false;
    return true;
  };
  if (std::abs(vl - vr) > 1e-6 * scale || !flat(0, window, vl) || !flat(n - window, n, vr))
    throw std::invalid_argument("conserved_charges: potential does not decay to a common constant (unsupported)");
  const double vinf = 0.5 * (vl + vr);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = v.values[i] - vinf;
    b[i] = v.grid[i] * a[i];
  }
  return {integrate(v.grid, a), integrate(v.grid, b)};
}

std::pair<PotentialOnGrid, PotentialOnGrid> pursey_abraham_moses(const IsoFamily& fam) {
  return {deformed_potential(fam, 0.0), deformed_potential(fam, -1.0)};
}

}  // namespace susy
