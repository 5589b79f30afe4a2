#include <limits>
#include "susy/swkb.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

namespace susy {

namespace {

constexpr double kPi = std::numbers::pi;

std::pair<double, double> scan_window(const Domain& d) {
  double lo = d.left_wall() ? d.lo : -60.0;
  double hi = d.right_wall() ? d.hi : (d.left_wall() ? d.lo + 400.0 : 60.0);
  const double w = hi - lo;
  if (d.left_wall()) lo += 1e-7 * w;
  if (d.right_wall()) hi -= 1e-7 * w;
  return {lo, hi};
}

template <class F>
double gk(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

QuantizationProblem QuantizationProblem::wkb(RealFunction v, Domain domain, Units units) {
  QuantizationProblem p;
  p.mode_ = QuantizationMode::wkb;
  p.profile_ = std::move(v);
  p.domain_ = domain;
  p.units_ = units;
  return p;
}

QuantizationProblem QuantizationProblem::swkb(const Superpotential& w, QuantizationMode mode) {
  if (mode == QuantizationMode::wkb) throw std::invalid_argument("QuantizationProblem::swkb needs an SWKB mode");
  QuantizationProblem p;
  p.mode_ = mode;
  p.profile_ = [w](double x) {
    const double v = w(x);
    return v * v;
  };
  p.domain_ = w.domain();
  p.units_ = w.units();
  p.w_ = w;
  // Unbroken SUSY needs W to change sign inside the well.
  const auto [lo, hi] = scan_window(p.domain_);
  const double wl = w(lo), wr = w(hi);
  if (!(wl < 0.0 && wr > 0.0))
    throw std::invalid_argument("SWKB requires W < 0 on the left and W > 0 on the right (unbroken SUSY)");
  return p;
}

std::pair<double, double> QuantizationProblem::minimum() const {
  const auto [lo, hi] = scan_window(domain_);
  if (w_) {
    const Superpotential& w = *w_;
    // Locate the sign change of W on a coarse scan, then bisect.
    constexpr int kScan = 20000;
    double prev_x = lo, prev = w(lo);
    for (int i = 1; i <= kScan; ++i) {
      const double x = lo + (hi - lo) * i / kScan;
      const double cur = w(x);
      if (prev < 0.0 && cur >= 0.0) {
        const double root = bisect_root([&](double t) { return w(t); }, Bracket(prev_x, x, prev, cur), 1e-15 * (1.0 + std::abs(x)));
        const double v = w(root);
        return {v * v, root};
      }
      prev_x = x;
      prev = cur;
    }
    throw NumericError("SWKB: superpotential has no zero in the scan window");
  }
  constexpr int kScan = 20000;
  double best = std::numeric_limits<double>::infinity(), bx = 0.5 * (lo + hi);
  for (int i = 0; i <= kScan; ++i) {
    const double x = lo + (hi - lo) * i / kScan;
    const double v = profile_(x);
    if (std::isfinite(v) && v < best) {
      best = v;
      bx = x;
    }
  }
  const double step = (hi - lo) / kScan;
  const double a = std::max(lo, bx - step), b = std::min(hi, bx + step);
  const auto r = boost::math::tools::brent_find_minima(profile_, a, b, 52);
  if (r.second < best) return {r.second, r.first};
  return {best, bx};
}

double QuantizationProblem::target(int n) const {
  const double hbar = units_.hbar;
  switch (mode_) {
    case QuantizationMode::swkb_v1: return n * hbar * kPi;
    case QuantizationMode::swkb_v2: return (n + 1) * hbar * kPi;
    default: return (n + 0.5) * hbar * kPi;
  }
}

std::pair<double, double> turning_points(const QuantizationProblem& problem, double energy) {
  const Domain& d = problem.domain();
  const auto [emin, xmin] = problem.minimum();
  if (!(energy > emin)) throw NumericError("turning_points: energy is not above the bottom of the well");
  auto g = [&](double x) { return energy - problem.profile(x); };
  // March outward until the profile rises above E.
  auto outer = [&](int dir) {
    double prev = xmin;
    for (int k = 0; k < 200; ++k) {
      double x;
      if (dir > 0)
        x = d.right_wall() ? d.hi - (d.hi - xmin) * std::ldexp(1.0, -(k + 1)) : xmin + 1e-3 * std::ldexp(1.0, k);
      else
        x = d.left_wall() ? d.lo + (xmin - d.lo) * std::ldexp(1.0, -(k + 1)) : xmin - 1e-3 * std::ldexp(1.0, k);
      if (x == prev) break;
      const double gx = g(x);
      if (std::isfinite(gx) && gx < 0.0) return x;
      if (std::abs(x) > 1e7) break;
      prev = x;
    }
    throw NumericError(std::string("turning_points: no ") + (dir > 0 ? "right" : "left") + " turning point at E=" +
                       std::to_string(energy));
  };
  const double left = outer(-1);
  const double right = outer(1);
  constexpr int kScan = 4000;
  std::vector<std::pair<double, double>> brackets;
  double px = left, pg = g(left);
  for (int i = 1; i <= kScan; ++i) {
    const double x = i == kScan ? right : left + (right - left) * i / kScan;
    const double cur = g(x);
    if (!std::isfinite(cur)) throw NumericError("turning_points: profile is singular inside the well");
    if ((pg < 0.0) != (cur < 0.0)) brackets.emplace_back(px, x);
    px = x;
    pg = cur;
  }
  if (brackets.size() != 2)
    throw NumericError("turning_points: expected exactly two turning points, found " + std::to_string(brackets.size()));
  double tp[2];
  for (int j = 0; j < 2; ++j) {
    const auto [a, b] = brackets[static_cast<std::size_t>(j)];
    tp[j] = bisect_root(g, Bracket::of(g, a, b), 1e-13 * std::max(1.0, std::abs(a)));
  }
  return {tp[0], tp[1]};
}

double action_integral(const QuantizationProblem& problem, double energy) {
  const auto [emin, xmin] = problem.minimum();
  if (energy <= emin) return 0.0;
  const auto [a, b] = turning_points(problem, energy);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto f = [&](double th) {
    const double x = mid + half * std::sin(th);
    const double v = problem.profile(x);
    if (!std::isfinite(v)) throw NumericError("action_integral: singular profile between the turning points");
    return std::sqrt(std::max(0.0, energy - v)) * half * std::cos(th);
  };
  return std::sqrt(problem.units().mass2) * gk(f, -0.5 * kPi, 0.5 * kPi);
}

double swkb_subleading_term(const QuantizationProblem& problem, double energy) {
  if (!problem.superpotential()) throw std::invalid_argument("swkb_subleading_term needs a superpotential");
  const Superpotential& w = *problem.superpotential();
  const auto [a, b] = turning_points(problem, energy);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto f = [&](double th) {
    const double x = mid + half * std::sin(th);
    const double wx = w(x);
    const double gap = energy - wx * wx;
    // Rounding at the turning points; the true integrand is finite there.
    if (!(gap > 0.0)) return 0.0;
    return w.derivative(x) / std::sqrt(gap) * half * std::cos(th);
  };
  return 0.5 * problem.units().hbar * gk(f, -0.5 * kPi, 0.5 * kPi);
}

double quantize(const QuantizationProblem& problem, int n) {
  if (n < 0) throw std::invalid_argument("quantize: n must be non-negative");
  const double tgt = problem.target(n);
  const auto [emin, xmin] = problem.minimum();
  if (tgt == 0.0) return emin;
  auto f = [&](double e) { return action_integral(problem, e) - tgt; };
  double lo = emin, hi;
  double step;
  if (problem.bracket_hint) {
    lo = std::max(emin, problem.bracket_hint->first);
    hi = lo + problem.bracket_hint->second;
    step = problem.bracket_hint->second;
    try {
      if (f(lo) > 0.0) lo = emin;
    } catch (const NumericError&) {
      lo = emin;
    }
  } else {
    step = std::max(1.0, std::abs(emin));
    hi = lo + step;
  }
  // Energies at or above `ceiling` have lost a turning point.
  double fhi = 0.0, ceiling = std::numeric_limits<double>::infinity();
  std::string why;
  for (int k = 0;; ++k) {
    if (k > 400) {
      if (std::isfinite(ceiling))
        throw NumericError("quantize: level " + std::to_string(n) + " unreachable below the continuum edge (" + why + ")");
      throw NumericError("quantize: bracket expansion failed");
    }
    bool ok = true;
    try {
      fhi = f(hi);
    } catch (const NumericError& e) {
      ok = false;
      ceiling = hi;
      why = e.what();
    }
    if (ok && fhi >= 0.0) break;
    if (ok) lo = hi;
    if (std::isfinite(ceiling)) {
      if (ceiling - lo <= 1e-13 * std::max(1.0, std::abs(lo)))
        throw NumericError("quantize: level " + std::to_string(n) + " unreachable below the continuum edge (" + why + ")");
      hi = lo + 0.5 * (ceiling - lo);
    } else {
      hi += step;
      step *= 2.0;
    }
  }
  const double flo = lo == emin ? -tgt : f(lo);
  return bisect_root(f, Bracket(lo, hi, flo, fhi), 1e-12 * std::max(1.0, std::abs(hi)));
}

std::vector<AuditRow> exactness_audit(const std::vector<SipEntry>& catalog, int n_max) {
  std::vector<AuditRow> rows;
  for (const auto& entry : catalog) {
    const int count = entry.bound_state_count();
    const int top = count < 0 ? n_max : std::min(n_max, count - 1);
    auto swkb = QuantizationProblem::swkb(entry.superpotential());
    const SipModel* m = &entry.model();
    const Params p = entry.params();
    auto wkb = QuantizationProblem::wkb([m, p](double x) { return m->v1(x, p); }, entry.domain());
    for (int n = 0; n <= top; ++n) {
      AuditRow row;
      row.entry = std::string(entry.model().label);
      row.n = n;
      row.exact = entry.energy(n);
      if (n > 0) {
        const double prev = entry.energy(n - 1);
        swkb.bracket_hint = std::make_pair(prev, entry.remainder() + 1.0);
      }
      row.swkb = quantize(swkb, n);
      row.swkb_error = std::abs(row.swkb - row.exact) / std::max(1.0, std::abs(row.exact));
      row.swkb_pass = row.swkb_error <= 1e-7;
      try {
        const double e = quantize(wkb, n);
        row.wkb = e;
        row.wkb_error = std::abs(e - row.exact) / std::max(1.0, std::abs(row.exact));
      } catch (const NumericError& e) {
        row.note = std::string("WKB not applicable: ") + e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace susy
