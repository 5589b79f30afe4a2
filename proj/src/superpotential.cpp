#include "susy/superpotential.hpp"

#include <algorithm>
#include <memory>

namespace susy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double fd_step(const Domain& d, double x) {
  double step = 1e-3 * std::max(1.0, std::abs(x));
  // Keep the stencil inside the open domain.
  if (d.left_wall()) step = std::min(step, 0.2 * (x - d.lo));
  if (d.right_wall()) step = std::min(step, 0.2 * (d.hi - x));
  return step;
}

}  // namespace

Superpotential::Superpotential(Definition def) : def_(std::move(def)) {
  if (!def_.w) throw std::invalid_argument("superpotential needs a function");
  if (!(def_.units.hbar > 0.0) || !(def_.units.mass2 > 0.0)) throw std::invalid_argument("hbar and 2m must be positive");
  if (!(def_.domain.hi > def_.domain.lo)) throw std::invalid_argument("empty domain");
  // Probe a few interior points for finiteness.
  const double lo = def_.domain.left_wall() ? def_.domain.lo : -4.0;
  const double hi = def_.domain.right_wall() ? def_.domain.hi : 4.0;
  const double a = def_.domain.left_wall() ? lo : std::min(lo, hi - 8.0);
  const double b = def_.domain.right_wall() ? hi : std::max(hi, a + 8.0);
  for (int i = 1; i < 8; ++i) {
    const double x = a + (b - a) * i / 8.0;
    if (def_.domain.contains(x) && !std::isfinite(def_.w(x)))
      throw std::invalid_argument("superpotential is not finite at interior point x=" + std::to_string(x));
  }
}

double Superpotential::derivative(double x) const {
  if (def_.dw) return def_.dw(x);
  return derivative_at(def_.w, x, fd_step(def_.domain, x));
}

Superpotential Superpotential::negated() const {
  Definition d = def_;
  auto w = def_.w;
  d.w = [w](double x) { return -w(x); };
  if (def_.dw) {
    auto dw = def_.dw;
    d.dw = [dw](double x) { return -dw(x); };
  }
  if (def_.integral) {
    auto in = def_.integral;
    d.integral = [in](double x) { return -in(x); };
  }
  if (def_.w_minus) d.w_minus = -*def_.w_minus;
  if (def_.w_plus) d.w_plus = -*def_.w_plus;
  d.name = "-(" + def_.name + ")";
  return Superpotential(std::move(d));
}

Superpotential Superpotential::with_units(Units u) const {
  Definition d = def_;
  d.units = u;
  return Superpotential(std::move(d));
}

std::vector<double> Superpotential::sample(const Grid& grid) const {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    out[i] = def_.domain.contains(x) ? def_.w(x) : kNaN;
    if (!std::isfinite(out[i])) out[i] = kNaN;
  }
  return out;
}

std::vector<double> Superpotential::sample_derivative(const Grid& grid) const {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    out[i] = def_.domain.contains(x) ? derivative(x) : kNaN;
    if (!std::isfinite(out[i])) out[i] = kNaN;
  }
  return out;
}

Superpotential sampled_superpotential(const SampledFunction& w, Units units, std::string name) {
  auto samples = std::make_shared<SampledFunction>(w);
  auto dvals = std::make_shared<SampledFunction>(w.grid(), derivative(w.grid(), w.values()));
  Superpotential::Definition d;
  d.w = [samples](double x) { return samples->interpolate(x); };
  d.dw = [dvals](double x) { return dvals->interpolate(x); };
  const auto cum = cumulative_integral(w.grid(), w.values());
  auto ivals = std::make_shared<SampledFunction>(w.grid(), cum);
  d.integral = [ivals](double x) { return ivals->interpolate(x); };
  d.domain = Domain::real_line();
  d.units = units;
  d.w_minus = w.values().front();
  d.w_plus = w.values().back();
  d.name = std::move(name);
  return Superpotential(std::move(d));
}

PotentialOnGrid PotentialOnGrid::sample(const RealFunction& v, const Grid& grid, Edge left, Edge right, Units units) {
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = v(grid[i]);
  const std::size_t n = vals.size();
  if (!std::isfinite(vals[0])) {
    if (left != Edge::wall) throw std::invalid_argument("potential is not finite at the left edge");
    vals[0] = vals[1];
  }
  if (!std::isfinite(vals[n - 1])) {
    if (right != Edge::wall) throw std::invalid_argument("potential is not finite at the right edge");
    vals[n - 1] = vals[n - 2];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(vals[i]))
      throw std::invalid_argument("potential is not finite at interior point x=" + std::to_string(grid[i]));
  return PotentialOnGrid{grid, std::move(vals), left, right, units};
}

PotentialOnGrid PotentialOnGrid::sample(const RealFunction& v, const Grid& grid, const Domain& domain, Units units) {
  return sample(v, grid, domain.left_wall() ? Edge::wall : Edge::open, domain.right_wall() ? Edge::wall : Edge::open,
                units);
}

double PotentialOnGrid::continuum_edge() const {
  double e = std::numeric_limits<double>::infinity();
  if (left == Edge::open) e = std::min(e, values.front());
  if (right == Edge::open) e = std::min(e, values.back());
  return e;
}

PotentialOnGrid PotentialOnGrid::shifted(double c) const {
  PotentialOnGrid p = *this;
  for (double& v : p.values) v += c;
  return p;
}

}  // namespace susy
