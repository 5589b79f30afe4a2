#include "susy/shape_invariance.hpp"

#include <algorithm>
#include <cmath>

#include "susy/susy_core.hpp"

namespace susy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Params merge_params(const SipModel& m, const Params& given) {
  Params p = m.defaults;
  for (const auto& [k, v] : given) {
    if (std::find(m.parameters.begin(), m.parameters.end(), k) == m.parameters.end())
      throw std::invalid_argument("parameter '" + k + "' is not defined for " + std::string(m.label));
    p[k] = v;
  }
  return p;
}

double finite_or_nan(double v) { return std::isfinite(v) ? v : kNaN; }

}  // namespace

SipEntry::SipEntry(const SipModel& model, Params params) : model_(&model), params_(std::move(params)) {}

Superpotential SipEntry::superpotential() const {
  const SipModel* m = model_;
  const Params p = params_;
  Superpotential::Definition d;
  d.w = [m, p](double x) { return m->w(x, p); };
  d.dw = [m, p](double x) { return m->dw(x, p); };
  d.integral = [m, p](double x) { return m->integral(x, p); };
  d.domain = m->domain(p);
  d.params = p;
  d.name = std::string(m->label);
  if (!m->confining) {
    d.w_minus = m->w(-1e3, p);
    d.w_plus = m->w(1e3, p);
  }
  return Superpotential(std::move(d));
}

double SipEntry::v2(double x) const {
  const double w = model_->w(x, params_);
  return w * w + model_->dw(x, params_);
}

SipEntry SipEntry::next() const { return SipEntry(*model_, model_->step(params_)); }

int SipEntry::bound_state_count() const {
  Params p = params_;
  for (int k = 0; k < 10000; ++k) {
    if (!model_->normalizable(p)) return k;
    p = model_->step(p);
  }
  return -1;
}

double SipEntry::shape_invariance_residual(const Grid& grid) const {
  const SipEntry n2 = next();
  const double r = remainder();
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    if (!domain().contains(x)) continue;
    const double v2x = v2(x);
    const double lhs = v2x - n2.v1(x) - r;
    const double w = this->w(x);
    const double col = v1(x) - (w * w - dw(x));
    const double scale = std::max(1.0, std::abs(v2x));
    worst = std::max({worst, std::abs(lhs) / scale, std::abs(col) / scale});
  }
  return worst;
}

Grid SipEntry::default_grid(int levels, std::size_t n_points) const {
  const Domain d = domain();
  int count = bound_state_count();
  int top = levels - 1;
  if (count >= 0) top = std::min(top, count - 1);
  const double e_star = energy(std::max(top, 0));
  // Locate the well bottom.
  const double lo = d.left_wall() ? d.lo : -60.0;
  const double hi = d.right_wall() ? d.hi : 60.0;
  double center = 0.5 * (lo + hi), vmin = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 4000; ++i) {
    const double x = lo + (hi - lo) * i / 4000.0;
    const double v = v1(x);
    if (std::isfinite(v) && v < vmin) {
      vmin = v;
      center = x;
    }
  }
  auto walk = [&](double dir) {
    const double dx = 0.005;
    double x = center, acc = 0.0;
    for (int i = 0; i < 2000000 && acc < 27.0; ++i) {
      x += dir * dx;
      const double v = v1(x);
      if (v > e_star) acc += std::sqrt(v - e_star) * dx;
    }
    return x;
  };
  const double left = d.left_wall() ? d.lo : walk(-1.0);
  const double right = d.right_wall() ? d.hi : walk(1.0);
  return Grid(left, right, n_points);
}

SipEntry sip_lookup(SipName name, const Params& params) {
  const SipModel& m = sip_model(name);
  Params p = merge_params(m, params);
  if (auto v = m.violation(p)) throw std::invalid_argument(std::string(m.label) + ": parameter constraint violated (" + *v + ")");
  SipEntry e(m, p);
  const Domain d = e.domain();
  const double a = d.left_wall() ? d.lo : -10.0;
  const double b = d.right_wall() ? d.hi : 10.0;
  const double margin = 0.02 * (b - a);
  const Grid g(d.left_wall() ? a + margin : a, d.right_wall() ? b - margin : b, 2001);
  const double res = e.shape_invariance_residual(g);
  if (!(res <= 1e-9))
    throw NumericError(std::string(m.label) + ": shape-invariance residual " + std::to_string(res) + " exceeds 1e-9");
  return e;
}

SipEntry sip_lookup(std::string_view key, const Params& params) { return sip_lookup(sip_model(key).name, params); }

SipSpectrum sip_spectrum(const SipEntry& entry, int n_max) {
  SipSpectrum out;
  Params a = entry.params();
  const SipModel& m = entry.model();
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    // Level n exists when the ground state of V1(x; a_{n+1}) is normalizable.
    if (!m.normalizable(a)) {
      out.truncated = true;
      break;
    }
    const double closed = m.energy(n, entry.params());
    if (std::abs(closed - sum) > 1e-12 * std::max(1.0, std::abs(closed)))
      throw NumericError("sip_spectrum: remainder sum disagrees with the closed form at n=" + std::to_string(n));
    out.energies.push_back(sum);
    sum += m.remainder(a);
    a = m.step(a);
  }
  return out;
}

SampledFunction sip_eigenfunction(const SipEntry& entry, int n, const Grid& grid) {
  if (n < 0) throw std::invalid_argument("sip_eigenfunction: n must be non-negative");
  const SipModel& m = entry.model();
  std::vector<Params> chain{entry.params()};
  for (int k = 0; k < n; ++k) chain.push_back(m.step(chain.back()));
  for (const auto& p : chain)
    if (!m.normalizable(p))
      throw NumericError("sip_eigenfunction: intermediate ground state is not normalizable (parameter left the unbroken regime)");
  const Params& top = chain.back();
  const Domain d = entry.domain();
  const std::size_t npts = grid.size();
  std::vector<double> s(npts, kNaN);
  double smin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < npts; ++i) {
    if (!d.contains(grid[i])) continue;
    s[i] = finite_or_nan(m.integral(grid[i], top));
    if (std::isfinite(s[i])) smin = std::min(smin, s[i]);
  }
  std::vector<double> psi(npts, 0.0);
  for (std::size_t i = 0; i < npts; ++i) {
    if (!std::isfinite(s[i])) continue;
    const double x = grid[i];
    double p = std::exp(-(s[i] - smin));
    double dp = -m.w(x, top) * p;
    double e = 0.0;  // energy of the current state in H1 of its own parameter
    for (int j = n - 1; j >= 0; --j) {
      const Params& a = chain[static_cast<std::size_t>(j)];
      const Params& a_next = chain[static_cast<std::size_t>(j + 1)];
      const double wa = m.w(x, a);
      const double dwa = m.dw(x, a);
      const double wn = m.w(x, a_next);
      const double v1n = wn * wn - m.dw(x, a_next);
      const double p_new = -dp + wa * p;
      const double dp_new = -(v1n - e) * p + dwa * p + wa * dp;
      p = p_new;
      dp = dp_new;
      e += m.remainder(a);
    }
    psi[i] = std::isfinite(p) ? p : 0.0;
  }
  std::vector<double> sq(npts);
  for (std::size_t i = 0; i < npts; ++i) sq[i] = psi[i] * psi[i];
  const double norm = std::sqrt(integrate(grid, sq));
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("sip_eigenfunction: state vanishes on this grid");
  double pmax = 0.0;
  for (double& t : psi) {
    t /= norm;
    pmax = std::max(pmax, std::abs(t));
  }
  for (double t : psi)
    if (std::abs(t) > 1e-3 * pmax) {
      if (t < 0.0)
        for (double& u : psi) u = -u;
      break;
    }
  return SampledFunction(grid, std::move(psi));
}

RealFunction hierarchy_function(const SipEntry& base, int s, HierarchyConvention convention) {
  if (s < 1) throw std::invalid_argument("hierarchy: s must be at least 1");
  const SipModel* m = &base.model();
  std::vector<Params> chain{base.params()};
  for (int k = 1; k < s; ++k) chain.push_back(m->step(chain.back()));
  double shift = 0.0;
  if (convention == HierarchyConvention::cumulative) {
    for (int k = 0; k + 1 < s; ++k) shift += m->remainder(chain[static_cast<std::size_t>(k)]);
  } else if (s >= 2) {
    shift = m->remainder(chain[static_cast<std::size_t>(s - 2)]);
  }
  const Params as = chain.back();
  return [m, as, shift](double x) { return m->v1(x, as) + shift; };
}

PotentialOnGrid hierarchy_potential(const SipEntry& base, int s, const Grid& grid, HierarchyConvention convention) {
  return PotentialOnGrid::sample(hierarchy_function(base, s, convention), grid, base.domain());
}

PotentialOnGrid hierarchy_potential(const Superpotential& base, int s, const Grid& grid,
                                    HierarchyConvention convention) {
  if (s < 1) throw std::invalid_argument("hierarchy: s must be at least 1");
  const auto pair = partner_potentials(base);
  auto pot = pair.sample_v1(grid);
  if (s == 1) return pot;
  pot = pair.sample_v2(grid);
  const double c = base.units().scale();
  const std::size_t n = grid.size();
  for (int level = 2; level < s; ++level) {
    const auto bs = bound_states(pot, 1);
    if (bs.states.empty()) throw NumericError("hierarchy: member " + std::to_string(level) + " has no bound state");
    const double eg = bs.states[0].energy;
    const auto& psi = bs.states[0].psi;
    const auto dpsi = derivative(grid, psi.values());
    double pmax = 0.0;
    for (double t : psi.values()) pmax = std::max(pmax, std::abs(t));
    std::vector<double> w(n, kNaN);
    std::size_t first = n, last = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (psi[i] > 1e-7 * pmax) {
        w[i] = -c * dpsi[i] / psi[i];
        first = std::min(first, i);
        last = std::max(last, i);
      }
    if (last < first + 2) throw NumericError("hierarchy: ground state too narrow on this grid");
    for (std::size_t i = 0; i < first; ++i) {
      const double slope = (w[first + 1] - w[first]);
      w[i] = w[first] - slope * static_cast<double>(first - i);
    }
    for (std::size_t i = last + 1; i < n; ++i) {
      const double slope = (w[last] - w[last - 1]);
      w[i] = w[last] + slope * static_cast<double>(i - last);
    }
    // V_{k+1} = V_k + 2 c W_k' with c W_k' = W_k^2 - (V_k - E_g).
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double vk = pot.values[i];
      next[i] = -vk + 2.0 * eg + 2.0 * w[i] * w[i];
      if (convention == HierarchyConvention::partner_of_zeroed) next[i] -= eg;
    }
    if (pot.left == Edge::wall) next[0] = next[1];
    if (pot.right == Edge::wall) next[n - 1] = next[n - 2];
    pot.values = std::move(next);
  }
  return pot;
}

ScatterPair sip_scatter_recursion(const SipEntry& entry, double k, int n_steps) {
  const SipModel& m = entry.model();
  if (m.confining || entry.domain().left_wall() || entry.domain().right_wall())
    throw std::invalid_argument("sip_scatter_recursion: " + std::string(m.label) + " has no two-sided scattering states");
  if (n_steps < 0) throw std::invalid_argument("sip_scatter_recursion: n_steps must be non-negative");
  if (!(k > 0.0)) throw std::invalid_argument("sip_scatter_recursion: k must be positive");
  std::vector<Params> chain{entry.params()};
  for (int j = 0; j < n_steps; ++j) chain.push_back(m.step(chain.back()));
  const Params& end = chain.back();
  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  for (int i = 0; i <= 400; ++i) {
    const double x = -20.0 + 0.1 * i;
    const double w = m.w(x, end);
    const double v = w * w - m.dw(x, end);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (!(vmax - vmin <= 1e-12 * std::max(1.0, std::abs(vmax))))
    throw std::invalid_argument("sip_scatter_recursion: chain does not end at a constant potential after " +
                                std::to_string(n_steps) + " steps");
  const double wm = m.w(-1e3, entry.params());
  const double wp = m.w(1e3, entry.params());
  const double kp2 = k * k + wm * wm - wp * wp;
  if (!(kp2 > 0.0)) throw std::invalid_argument("sip_scatter_recursion: energy below the right asymptote");
  const double kp = std::sqrt(kp2);
  const std::complex<double> I(0.0, 1.0);
  std::complex<double> r = 0.0, t = 1.0;
  for (int j = n_steps - 1; j >= 0; --j) {
    const Params& a = chain[static_cast<std::size_t>(j)];
    const double wmi = m.w(-1e3, a), wpi = m.w(1e3, a);
    r *= (wmi + I * k) / (wmi - I * k);
    t *= (wpi - I * kp) / (wmi - I * k);
  }
  return {r, t};
}

}  // namespace susy
