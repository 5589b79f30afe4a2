#include "susy/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace susy {

namespace {

constexpr double kPi = std::numbers::pi;

// Periodic Catmull-Rom lookup into m unique samples with spacing h starting at x0.
double periodic_interp(const std::vector<double>& v, std::size_t m, double x0, double h, double x) {
  const double u = (x - x0) / h;
  double base = std::floor(u);
  double t = u - base;
  if (t > 1.0 - 1e-12) {
    base += 1.0;
    t = 0.0;
  }
  auto idx = [&](long j) {
    const long mm = static_cast<long>(m);
    return v[static_cast<std::size_t>(((j % mm) + mm) % mm)];
  };
  const long i = static_cast<long>(base);
  if (t < 1e-12) return idx(i);
  const double p0 = idx(i - 1), p1 = idx(i), p2 = idx(i + 1), p3 = idx(i + 2);
  return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
}

double max_abs(const std::vector<double>& v) {
  double r = 0.0;
  for (double t : v) r = std::max(r, std::abs(t));
  return r;
}

}  // namespace

PeriodicSuperpotential PeriodicSuperpotential::make(RealFunction w, double period, RealFunction dw, Units units) {
  if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("PeriodicSuperpotential: period must be positive");
  constexpr int kSamples = 2048;
  double sum = 0.0, scale = 1.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = period * i / kSamples;
    const double a = w(x);
    const double b = w(x + period);
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("PeriodicSuperpotential: W must be finite");
    scale = std::max(scale, std::abs(a));
    if (std::abs(a - b) > 1e-10 * scale)
      throw std::invalid_argument("PeriodicSuperpotential: W(x+L) differs from W(x) at x=" + std::to_string(x));
    sum += a;
  }
  return PeriodicSuperpotential{std::move(w), period, sum * period / kSamples, std::move(dw), units};
}

double PeriodicSuperpotential::derivative(double x) const { return dw ? dw(x) : derivative_at(w, x); }

double PeriodicSuperpotential::v1(double x) const {
  const double a = w(x);
  return a * a - units.scale() * derivative(x);
}

double PeriodicSuperpotential::v2(double x) const {
  const double a = w(x);
  return a * a + units.scale() * derivative(x);
}

std::string to_string(ZeroMode z) { return z == ZeroMode::unbroken ? "unbroken" : "broken"; }

ZeroMode zero_mode_check(const PeriodicSuperpotential& w) {
  return std::abs(w.phi_L) <= 1e-10 ? ZeroMode::unbroken : ZeroMode::broken;
}

std::string to_string(SelfIsospectral s) {
  switch (s) {
    case SelfIsospectral::half_period_antisymmetric: return "half-period-antisymmetric";
    case SelfIsospectral::even_reflection: return "even-reflection";
    default: return "neither";
  }
}

SelfIsospectral self_isospectral_classify(const PeriodicSuperpotential& w) {
  if (zero_mode_check(w) == ZeroMode::broken)
    throw std::invalid_argument("self_isospectral_classify: SUSY is broken (phi_L = " + std::to_string(w.phi_L) + ")");
  constexpr int kSamples = 1000;
  const double L = w.period;
  double scale = 1.0, vscale = 1.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = L * i / kSamples;
    scale = std::max(scale, std::abs(w.w(x)));
    vscale = std::max(vscale, std::abs(w.v1(x)));
  }
  auto holds = [&](auto residual) {
    for (int i = 0; i < kSamples; ++i)
      if (residual(L * i / kSamples) > 1e-9 * scale) return false;
    return true;
  };
  auto confirm = [&](auto relation, const char* what) {
    for (int i = 0; i < kSamples; ++i) {
      const double x = L * i / kSamples;
      if (std::abs(w.v2(x) - relation(x)) > 1e-7 * vscale)
        throw NumericError(std::string("self_isospectral_classify: W symmetry holds but ") + what + " fails on the potentials");
    }
  };
  if (holds([&](double x) { return std::abs(w.w(x + 0.5 * L) + w.w(x)); })) {
    confirm([&](double x) { return w.v1(x + 0.5 * L); }, "V2(x) = V1(x+L/2)");
    return SelfIsospectral::half_period_antisymmetric;
  }
  if (holds([&](double x) { return std::abs(w.w(-x) - w.w(x)); })) {
    confirm([&](double x) { return w.v1(-x); }, "V2(x) = V1(-x)");
    return SelfIsospectral::even_reflection;
  }
  return SelfIsospectral::neither;
}

ShiftScan shift_scan(const PotentialOnGrid& v1, const PotentialOnGrid& v2, int shifts, double tol) {
  if (!(v1.grid == v2.grid)) throw std::invalid_argument("shift_scan: potentials on different grids");
  if (shifts < 1) throw std::invalid_argument("shift_scan: shifts must be positive");
  const Grid& g = v1.grid;
  const std::size_t m = g.size() - 1;
  const double L = g.x_max() - g.x_min(), h = g.spacing(), x0 = g.x_min();
  const double scale = std::max(max_abs(v1.values), max_abs(v2.values));
  ShiftScan best{false, std::numeric_limits<double>::infinity(), 0.0, false};
  for (int refl = 0; refl < 2; ++refl) {
    for (int j = 0; j < shifts; ++j) {
      const double s = L * j / shifts;
      double dev = 0.0;
      for (std::size_t i = 0; i < m && dev < best.best_deviation * std::max(1.0, scale); ++i) {
        const double x = g[i];
        const double arg = refl ? 2.0 * x0 - x + s : x + s;
        dev = std::max(dev, std::abs(v2.values[i] - periodic_interp(v1.values, m, x0, h, arg)));
      }
      const double rel = dev / std::max(1.0, scale);
      if (rel < best.best_deviation) best = ShiftScan{false, rel, s, refl == 1};
    }
  }
  best.related = best.best_deviation <= tol;
  return best;
}

double LameSpec::delta() const { return std::sqrt(1.0 - m + m * m); }

double LameSpec::period() const { return 2.0 * elliptic_K(m); }

void LameSpec::validate() const {
  if (a < 1) throw std::invalid_argument("Lame: a must be a positive integer");
  if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("Lame: m must lie in (0, 1)");
}

RealFunction lame_function(const LameSpec& spec) {
  spec.validate();
  const double pm = spec.p() * spec.m, m = spec.m;
  return [pm, m](double x) {
    const double sn = jacobi_sn_cn_dn(x, m).sn;
    return pm * sn * sn;
  };
}

PotentialOnGrid lame_potential(const LameSpec& spec, std::size_t n_points) {
  spec.validate();
  return lame_potential(spec, Grid(0.0, spec.period(), n_points));
}

PotentialOnGrid lame_potential(const LameSpec& spec, const Grid& window) {
  return PotentialOnGrid::sample(lame_function(spec), window, Edge::open, Edge::open);
}

std::string to_string(PeriodTag t) { return t == PeriodTag::L ? "L" : "2L"; }

std::string to_string(BandBoundary b) {
  switch (b) {
    case BandBoundary::bottom: return "bottom";
    case BandBoundary::top: return "top";
    default: return "continuum-bottom";
  }
}

std::vector<BandEdge> lame_band_edges(const LameSpec& spec) {
  if (spec.a < 1 || !(spec.m >= 0.0 && spec.m <= 1.0)) throw std::invalid_argument("Lame: invalid a or m");
  const double m = spec.m;
  using enum PeriodTag;
  using enum BandBoundary;
  if (spec.a == 1) return {{m, L, 0, bottom}, {1.0, twoL, 1, top}, {1.0 + m, twoL, 1, continuum_bottom}};
  if (spec.a == 2) {
    const double d = spec.delta();
    return {{2.0 + 2.0 * m - 2.0 * d, L, 0, bottom},
            {1.0 + m, twoL, 1, top},
            {1.0 + 4.0 * m, twoL, 1, bottom},
            {4.0 + m, L, 2, top},
            {2.0 + 2.0 * m + 2.0 * d, L, 2, continuum_bottom}};
  }
  throw std::invalid_argument("Lame: closed-form band edges are only available for a = 1, 2 (use numeric_band_edges)");
}

LamePartner lame_partner(const LameSpec& spec, std::size_t n_points) {
  spec.validate();
  if (spec.a != 1 && spec.a != 2) throw std::invalid_argument("lame_partner: a must be 1 or 2");
  const double m = spec.m, d = spec.delta();
  const double shift = spec.a == 1 ? m : 2.0 + 2.0 * m - 2.0 * d;
  RealFunction w, dw, psi;
  if (spec.a == 1) {
    w = [m](double x) {
      const auto j = jacobi_sn_cn_dn(x, m);
      return m * j.sn * j.cn / j.dn;
    };
    dw = [m](double x) {
      const auto j = jacobi_sn_cn_dn(x, m);
      return m * (j.cn * j.cn - j.sn * j.sn + m * j.sn * j.sn * j.cn * j.cn / (j.dn * j.dn));
    };
    psi = [m](double x) { return jacobi_sn_cn_dn(x, m).dn; };
  } else {
    auto psi0 = [m, d](double sn) { return 1.0 + m + d - 3.0 * m * sn * sn; };
    w = [m, psi0](double x) {
      const auto j = jacobi_sn_cn_dn(x, m);
      return 6.0 * m * j.sn * j.cn * j.dn / psi0(j.sn);
    };
    dw = [m, psi0](double x) {
      const auto j = jacobi_sn_cn_dn(x, m);
      const double p = psi0(j.sn);
      const double wv = 6.0 * m * j.sn * j.cn * j.dn / p;
      const double s2 = j.sn * j.sn, c2 = j.cn * j.cn, d2 = j.dn * j.dn;
      return 6.0 * m * (c2 * d2 - s2 * d2 - m * s2 * c2) / p + wv * wv;
    };
    psi = [m, psi0](double x) { return psi0(jacobi_sn_cn_dn(x, m).sn); };
  }
  const double L = spec.period();
  PeriodicSuperpotential ps = PeriodicSuperpotential::make(w, L, dw);
  const Grid g(0.0, L, n_points);
  const RealFunction lame = lame_function(spec);
  std::vector<double> v1(n_points), v2(n_points), p(n_points);
  double vscale = 1.0, pmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = g[i];
    v1[i] = lame(x) - shift;
    const double wx = w(x);
    v2[i] = -v1[i] + 2.0 * wx * wx;
    p[i] = psi(x);
    pmin = std::min(pmin, p[i]);
    vscale = std::max(vscale, std::abs(v1[i]));
    if (std::abs(ps.v1(x) - v1[i]) > 1e-9 * vscale)
      throw NumericError("lame_partner: W^2 - W' does not reproduce the shifted Lame potential");
  }
  if (!(pmin > 0.0)) throw NumericError("lame_partner: ground state is not positive");
  std::vector<double> sq(n_points);
  for (std::size_t i = 0; i < n_points; ++i) sq[i] = p[i] * p[i];
  const double norm = std::sqrt(integrate(g, sq));
  for (double& t : p) t /= norm;
  return LamePartner{spec,
                     shift,
                     std::move(ps),
                     PotentialOnGrid{g, std::move(v1), Edge::open, Edge::open, {}},
                     PotentialOnGrid{g, std::move(v2), Edge::open, Edge::open, {}},
                     SampledFunction(g, std::move(p))};
}

std::vector<BandEdge> numeric_band_edges(const PotentialOnGrid& one_period, int count, const EigenOptions& options) {
  const auto even = band_solve(one_period, 0.0, count, options);
  const auto odd = band_solve(one_period, kPi, count, options);
  std::vector<BandEdge> edges;
  for (const auto& e : even) edges.push_back({e.energy, PeriodTag::L, e.nodes, BandBoundary::bottom});
  for (const auto& e : odd) edges.push_back({e.energy, PeriodTag::twoL, e.nodes, BandBoundary::bottom});
  std::stable_sort(edges.begin(), edges.end(), [](const BandEdge& a, const BandEdge& b) { return a.energy < b.energy; });
  edges.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].which = i % 2 == 0 ? BandBoundary::bottom : BandBoundary::top;
  return edges;
}

std::vector<BandEdge> lame_numeric_band_edges(const LameSpec& spec, std::size_t n_points) {
  auto edges = numeric_band_edges(lame_potential(spec, n_points), 2 * spec.a + 1);
  edges.back().which = BandBoundary::continuum_bottom;
  return edges;
}

bool follows_oscillation_pattern(const std::vector<BandEdge>& edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int nodes = static_cast<int>((i + 1) / 2);
    const PeriodTag tag = nodes % 2 == 0 ? PeriodTag::L : PeriodTag::twoL;
    if (edges[i].nodes_per_L != nodes || edges[i].period_tag != tag) return false;
  }
  return true;
}

double hill_discriminant(const RealFunction& v, double period, double energy, int steps, Units units) {
  if (steps < 1) throw std::invalid_argument("hill_discriminant: steps must be positive");
  const double k = 1.0 / units.kinetic();
  const double h = period / steps;
  // Columns: (y1, y1') and (y2, y2').
  double y[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
  for (int s = 0; s < steps; ++s) {
    const double x = s * h;
    const double q0 = k * (v(x) - energy), qm = k * (v(x + 0.5 * h) - energy), q1 = k * (v(x + h) - energy);
    for (auto& c : y) {
      const double k1a = c[1], k1b = q0 * c[0];
      const double k2a = c[1] + 0.5 * h * k1b, k2b = qm * (c[0] + 0.5 * h * k1a);
      const double k3a = c[1] + 0.5 * h * k2b, k3b = qm * (c[0] + 0.5 * h * k2a);
      const double k4a = c[1] + h * k3b, k4b = q1 * (c[0] + h * k3a);
      c[0] += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
      c[1] += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    }
  }
  return y[0][0] + y[1][1];
}

std::vector<DispersionSample> dispersion(const PotentialOnGrid& one_period, int bands, int k_samples) {
  if (k_samples < 2) throw std::invalid_argument("dispersion: need at least two k samples");
  std::vector<DispersionSample> out;
  for (int j = 0; j < k_samples; ++j) {
    const double kL = kPi * j / (k_samples - 1);
    DispersionSample s{kL, {}};
    s.energies = band_energies(one_period, kL, bands);
    out.push_back(std::move(s));
  }
  return out;
}

ZeroModeResiduals zero_mode_residuals(const PeriodicSuperpotential& w, std::size_t n_points) {
  if (zero_mode_check(w) == ZeroMode::broken) throw std::invalid_argument("zero_mode_residuals: SUSY is broken");
  const Grid g(0.0, w.period, n_points);
  const double c = w.units.scale();
  std::vector<double> wv(n_points), v1(n_points), v2(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    wv[i] = w.w(g[i]) / c;
    v1[i] = w.v1(g[i]);
    v2[i] = w.v2(g[i]);
  }
  const auto s = cumulative_integral(g, wv);
  std::vector<double> psi(n_points), inv(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    psi[i] = std::exp(-s[i]);
    inv[i] = 1.0 / psi[i];
  }
  const PotentialOnGrid p1{g, std::move(v1), Edge::open, Edge::open, w.units};
  const PotentialOnGrid p2{g, std::move(v2), Edge::open, Edge::open, w.units};
  return {eigen_residual(p1, psi, 0.0, 1), eigen_residual(p2, inv, 0.0, 1)};
}

std::vector<double> apply_periodic_A(const PeriodicSuperpotential& w, const SampledFunction& psi, int bloch_sign) {
  if (bloch_sign != 1 && bloch_sign != -1) throw std::invalid_argument("apply_periodic_A: bloch_sign must be +1 or -1");
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  const auto m = static_cast<long>(n - 1);
  const double h = g.spacing(), c = w.units.scale();
  auto at = [&](long j) {
    double s = 1.0;
    while (j < 0) {
      j += m;
      s *= bloch_sign;
    }
    while (j >= m) {
      j -= m;
      s *= bloch_sign;
    }
    return s * psi[static_cast<std::size_t>(j)];
  };
  std::vector<double> out(n);
  for (long i = 0; i < m; ++i) {
    const double d = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
    out[static_cast<std::size_t>(i)] = c * d + w.w(g[static_cast<std::size_t>(i)]) * at(i);
  }
  out[n - 1] = bloch_sign * out[0];
  return out;
}

}  // namespace susy
