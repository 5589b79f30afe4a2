#include "susy/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace susy {

std::vector<double> BoundStates::energies() const {
  std::vector<double> e;
  e.reserve(states.size());
  for (const auto& s : states) e.push_back(s.energy);
  return e;
}

namespace {

constexpr double kTiny = 1e-300;

// Interior Dirichlet problem on nodes 1..n-2.
struct Pencil {
  std::vector<double> v;  // potential at interior nodes
  double kin;             // c^2 / h^2
  Stencil stencil;
  std::size_t first = 1;  // grid index of v[0]

  std::size_t size() const { return v.size(); }

  // Diagonal and off-diagonal product for the matrix whose determinant vanishes at eigenvalues.
  double diag(std::size_t i, double e) const {
    if (stencil == Stencil::three_point) return 2.0 * kin + v[i] - e;
    return 2.0 * kin + 10.0 / 12.0 * (v[i] - e);
  }
  double upper(std::size_t i, double e) const {
    return stencil == Stencil::three_point ? -kin : -kin + (v[i + 1] - e) / 12.0;
  }
  double lower(std::size_t i, double e) const {
    return stencil == Stencil::three_point ? -kin : -kin + (v[i] - e) / 12.0;
  }

  // Number of eigenvalues below e (Sturm sequence / LDL^T inertia).
  int count_below(double e) const {
    const double pivmin = kTiny * std::max(1.0, kin);
    int neg = 0;
    double q = diag(0, e);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++neg;
    for (std::size_t i = 1; i < v.size(); ++i) {
      const double prod = upper(i - 1, e) * lower(i - 1, e);
      if (!(prod > 0.0)) throw NumericError("Numerov stencil lost its Sturm property (grid too coarse for this potential)");
      q = diag(i, e) - prod / q;
      if (std::abs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++neg;
    }
    return neg;
  }

  double bisect(int k, double lo, double hi, double rtol) const {
    while (count_below(lo) > k) lo -= 2.0 * (std::abs(lo) + 1.0);
    double step = std::max(1.0, std::abs(hi - lo));
    while (count_below(hi) <= k) {
      hi += step;
      step *= 2.0;
      if (step > 1e30) throw NumericError("eigenvalue bracket expansion failed");
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= rtol * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
      if (count_below(mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    return 0.5 * (lo + hi);
  }

  std::vector<double> eigenvector(double e, const std::vector<std::vector<double>>& previous) const;
};

// Tridiagonal solve with partial pivoting (LAPACK gtsv scheme). Zero pivots are
// replaced by a tiny value, which is what inverse iteration wants.
std::vector<double> solve_tridiagonal(std::vector<double> dl, std::vector<double> d, std::vector<double> du,
                                      std::vector<double> b) {
  const std::size_t n = d.size();
  std::vector<double> du2(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = kTiny;
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
      du2[i] = 0.0;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = temp;
      const double tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - fact * b[i + 1];
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = kTiny;
  std::vector<double> x(n);
  x[n - 1] = b[n - 1] / d[n - 1];
  if (n >= 2) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (std::size_t ii = n - 2; ii-- > 0;) x[ii] = (b[ii] - du[ii] * x[ii + 1] - du2[ii] * x[ii + 2]) / d[ii];
  return x;
}

std::vector<double> Pencil::eigenvector(double e, const std::vector<std::vector<double>>& previous) const {
  const std::size_t m = v.size();
  const double sigma = e + 1e-13 * std::max(1.0, std::abs(e));
  std::vector<double> dl(m - 1), d(m), du(m - 1);
  for (std::size_t i = 0; i < m; ++i) d[i] = diag(i, sigma);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    du[i] = upper(i, sigma);
    dl[i] = lower(i, sigma);
  }
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = 1.0 + 0.25 * std::sin(0.37 * static_cast<double>(i) + 0.1);
  auto normalize = [](std::vector<double>& y) {
    double s = 0.0;
    for (double t : y) s += t * t;
    s = std::sqrt(s);
    for (double& t : y) t /= s;
  };
  normalize(x);
  for (int it = 0; it < 4; ++it) {
    std::vector<double> rhs(m);
    if (stencil == Stencil::three_point) {
      rhs = x;
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        double s = 10.0 * x[i];
        if (i > 0) s += x[i - 1];
        if (i + 1 < m) s += x[i + 1];
        rhs[i] = s / 12.0;
      }
    }
    x = solve_tridiagonal(dl, d, du, rhs);
    for (double t : x)
      if (!std::isfinite(t)) throw NumericError("inverse iteration diverged");
    for (const auto& p : previous) {
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += p[i] * x[i];
      for (std::size_t i = 0; i < m; ++i) x[i] -= dot * p[i];
    }
    normalize(x);
  }
  return x;
}

struct RawSolve {
  std::vector<double> energies;
  std::vector<std::vector<double>> vectors;  // interior, unit 2-norm
};

RawSolve solve_pencil(const Pencil& p, int count, double rtol, bool want_vectors) {
  RawSolve out;
  const double vmin = *std::min_element(p.v.begin(), p.v.end());
  const int m = static_cast<int>(p.size());
  count = std::min(count, m);
  double lo = vmin - 1.0;
  for (int k = 0; k < count; ++k) {
    const double e = p.bisect(k, lo, lo + 1.0, rtol);
    out.energies.push_back(e);
    lo = std::max(lo, e - 1e-8 * std::max(1.0, std::abs(e)));
  }
  if (want_vectors) {
    for (int k = 0; k < count; ++k) {
      std::vector<std::vector<double>> close;
      for (int j = 0; j < k; ++j)
        if (std::abs(out.energies[j] - out.energies[k]) < 1e-6 * std::max(1.0, std::abs(out.energies[k])))
          close.push_back(out.vectors[j]);
      out.vectors.push_back(p.eigenvector(out.energies[k], close));
    }
  }
  return out;
}

Pencil make_pencil(const PotentialOnGrid& v, Stencil stencil) {
  const std::size_t n = v.grid.size();
  if (n < 5) throw std::invalid_argument("eigensolver needs at least 5 grid points");
  Pencil p;
  const double h = v.grid.spacing();
  p.kin = v.units.kinetic() / (h * h);
  p.stencil = stencil;
  std::size_t a = 1, b = n - 1;
  if (stencil == Stencil::numerov) {
    // Deeply forbidden end nodes break the Numerov Sturm property; treat them as walls.
    const double vmin = *std::min_element(v.values.begin() + 1, v.values.end() - 1);
    const double cut = vmin + 6.0 * p.kin;
    while (a + 4 < b && !(v.values[a] < cut)) ++a;
    while (b > a + 4 && !(v.values[b - 1] < cut)) --b;
  }
  p.first = a;
  p.v.assign(v.values.begin() + static_cast<std::ptrdiff_t>(a), v.values.begin() + static_cast<std::ptrdiff_t>(b));
  return p;
}

void fix_sign(std::vector<double>& psi) {
  double vmax = 0.0;
  for (double t : psi) vmax = std::max(vmax, std::abs(t));
  for (double t : psi)
    if (std::abs(t) > 1e-3 * vmax) {
      if (t < 0.0)
        for (double& u : psi) u = -u;
      return;
    }
}

PotentialOnGrid coarse_of(const PotentialOnGrid& v) {
  PotentialOnGrid c{v.grid.coarsened(), {}, v.left, v.right, v.units};
  for (std::size_t i = 0; i < v.values.size(); i += 2) c.values.push_back(v.values[i]);
  return c;
}

}  // namespace

BoundStates bound_states(const PotentialOnGrid& v, int count, const EigenOptions& options) {
  if (count < 1) throw std::invalid_argument("bound_states: count must be positive");
  if (v.values.size() != v.grid.size()) throw std::invalid_argument("bound_states: potential/grid size mismatch");
  BoundStates out;
  out.continuum_edge = v.continuum_edge();
  const Pencil fine = make_pencil(v, options.stencil);
  const RawSolve rf = solve_pencil(fine, count, options.tolerance, true);
  out.fine = rf.energies;
  std::vector<double> best = rf.energies;
  bool do_rich = options.richardson;
  if (do_rich && v.grid.size() % 2 == 0) {
    out.warnings.push_back("Richardson extrapolation skipped: needs an odd number of grid points");
    do_rich = false;
  }
  if (do_rich) {
    const Pencil coarse = make_pencil(coarse_of(v), options.stencil);
    const RawSolve rc = solve_pencil(coarse, count, options.tolerance, false);
    out.coarse = rc.energies;
    const double factor = options.stencil == Stencil::three_point ? 3.0 : 15.0;
    for (std::size_t k = 0; k < best.size() && k < rc.energies.size(); ++k)
      best[k] = rf.energies[k] + (rf.energies[k] - rc.energies[k]) / factor;
  }
  const std::size_t n = v.grid.size();
  for (std::size_t k = 0; k < best.size(); ++k) {
    if (!(best[k] < out.continuum_edge)) {
      out.truncated = true;
      break;
    }
    std::vector<double> psi(n, 0.0);
    for (std::size_t i = 0; i < rf.vectors[k].size(); ++i) psi[i + fine.first] = rf.vectors[k][i];
    fix_sign(psi);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = psi[i] * psi[i];
    const double norm = std::sqrt(integrate(v.grid, sq));
    for (double& t : psi) t /= norm;
    double pmax = 0.0;
    for (double t : psi) pmax = std::max(pmax, std::abs(t));
    if (v.left == Edge::open && std::abs(psi[1]) > options.edge_decay * pmax)
      out.warnings.push_back("level " + std::to_string(k) + " has not decayed at the left edge");
    if (v.right == Edge::open && std::abs(psi[n - 2]) > options.edge_decay * pmax)
      out.warnings.push_back("level " + std::to_string(k) + " has not decayed at the right edge");
    const int nodes = count_sign_changes(psi);
    out.states.push_back(EigenPair{best[k], SampledFunction(v.grid, std::move(psi)), nodes});
  }
  if (static_cast<int>(out.states.size()) < count) out.truncated = true;
  return out;
}

BoundStates radial_bound_states(const RealFunction& v, int l, int count, const RadialGrid& rg, Units units,
                                const EigenOptions& options) {
  if (l < 0) throw std::invalid_argument("radial_bound_states: l must be non-negative");
  if (!(rg.r_min >= 0.0) || !(rg.r_max > rg.r_min)) throw std::invalid_argument("radial_bound_states: bad radial range");
  const Grid grid(rg.r_min, rg.r_max, rg.n_points);
  const double cent = units.kinetic() * l * (l + 1);
  auto veff = [&](double r) { return v(r) + (cent != 0.0 ? cent / (r * r) : 0.0); };
  auto pot = PotentialOnGrid::sample(veff, grid, Edge::wall, Edge::open, units);
  BoundStates out = bound_states(pot, count, options);
  if (rg.r_min > 0.0) {
    for (std::size_t k = 0; k < out.states.size(); ++k) {
      const auto& psi = out.states[k].psi;
      double pmax = 0.0;
      for (double t : psi.values()) pmax = std::max(pmax, std::abs(t));
      if (std::abs(psi[1]) > 1e-3 * pmax)
        out.warnings.push_back("level " + std::to_string(k) + ": r_min too large, origin behaviour r^(l+1) not resolved");
    }
  }
  return out;
}

namespace {

struct DenseBand {
  std::vector<double> energies;
  std::vector<std::vector<double>> vectors;  // real (kL = 0, pi) or |psi|
};

DenseBand dense_band(const std::vector<double>& v, double kin, double kL, int count) {
  const auto m = static_cast<Eigen::Index>(v.size());
  DenseBand out;
  const double s = std::cos(kL);
  const bool real = std::abs(std::sin(kL)) < 1e-14;
  count = std::min<int>(count, static_cast<int>(m));
  if (real) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      H(i, i) = 2.0 * kin + v[static_cast<std::size_t>(i)];
      if (i + 1 < m) H(i, i + 1) = H(i + 1, i) = -kin;
    }
    H(0, m - 1) += -kin * (s > 0 ? 1.0 : -1.0);
    H(m - 1, 0) += -kin * (s > 0 ? 1.0 : -1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericError("band_solve: dense eigensolver failed");
    for (int k = 0; k < count; ++k) {
      out.energies.push_back(es.eigenvalues()[k]);
      std::vector<double> vec(static_cast<std::size_t>(m));
      for (Eigen::Index i = 0; i < m; ++i) vec[static_cast<std::size_t>(i)] = es.eigenvectors()(i, k);
      out.vectors.push_back(std::move(vec));
    }
  } else {
    const std::complex<double> ph = std::polar(1.0, kL);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      H(i, i) = 2.0 * kin + v[static_cast<std::size_t>(i)];
      if (i + 1 < m) H(i, i + 1) = H(i + 1, i) = -kin;
    }
    H(m - 1, 0) += -kin * ph;
    H(0, m - 1) += -kin * std::conj(ph);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw NumericError("band_solve: dense eigensolver failed");
    for (int k = 0; k < count; ++k) {
      out.energies.push_back(es.eigenvalues()[k]);
      std::vector<double> vec(static_cast<std::size_t>(m));
      for (Eigen::Index i = 0; i < m; ++i) vec[static_cast<std::size_t>(i)] = std::abs(es.eigenvectors()(i, k));
      out.vectors.push_back(std::move(vec));
    }
  }
  return out;
}

}  // namespace

namespace {

// Eigenvalues of the Bloch matrix below e. The last node is eliminated as a
// border: inertia(H - e) = inertia(T - e) + sign of the Schur complement.
int bloch_count_below(const std::vector<double>& v, double kin, std::complex<double> ph, double e) {
  const std::size_t m = v.size();
  const std::size_t t = m - 1;
  const double pivmin = kTiny * std::max(1.0, kin);
  std::vector<double> q(t);
  std::vector<std::complex<double>> y(t, 0.0);
  y[0] = -kin * std::conj(ph);
  y[t - 1] += -kin;
  const std::vector<std::complex<double>> b = y;
  int neg = 0;
  for (std::size_t i = 0; i < t; ++i) {
    double d = 2.0 * kin + v[i] - e;
    if (i > 0) {
      d -= kin * kin / q[i - 1];
      y[i] += kin * y[i - 1] / q[i - 1];
    }
    if (std::abs(d) < pivmin) d = -pivmin;
    q[i] = d;
    if (d < 0.0) ++neg;
  }
  for (std::size_t i = t; i-- > 0;) {
    if (i + 1 < t) y[i] += kin * y[i + 1];
    y[i] /= q[i];
  }
  double schur = 2.0 * kin + v[t] - e;
  for (std::size_t i = 0; i < t; ++i) schur -= (std::conj(b[i]) * y[i]).real();
  return neg + (schur < 0.0 ? 1 : 0);
}

std::vector<double> bloch_energies(const std::vector<double>& v, double kin, double kL, int count, double rtol) {
  const std::complex<double> ph = std::polar(1.0, kL);
  const auto [vmin, vmax] = std::minmax_element(v.begin(), v.end());
  std::vector<double> out;
  for (int k = 0; k < count && k < static_cast<int>(v.size()); ++k) {
    double lo = *vmin - 1.0, hi = *vmax + 4.0 * kin + 1.0;
    if (!out.empty()) lo = std::max(lo, out.back() - 1e-8 * std::max(1.0, std::abs(out.back())));
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= rtol * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
      if (bloch_count_below(v, kin, ph, mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace

std::vector<double> band_energies(const PotentialOnGrid& one_period, double kL, int count, const EigenOptions& options) {
  if (count < 1) throw std::invalid_argument("band_energies: count must be positive");
  const Grid& grid = one_period.grid;
  const std::size_t n = grid.size();
  if (n < 9) throw std::invalid_argument("band_energies: grid too small");
  const double h = grid.spacing();
  const double kin = one_period.units.kinetic() / (h * h);
  const std::vector<double> v(one_period.values.begin(), one_period.values.end() - 1);
  std::vector<double> e = bloch_energies(v, kin, kL, count, options.tolerance);
  if (options.richardson && (n - 1) % 2 == 0) {
    std::vector<double> vc;
    for (std::size_t i = 0; i + 1 < n; i += 2) vc.push_back(one_period.values[i]);
    const auto c = bloch_energies(vc, kin / 4.0, kL, count, options.tolerance);
    for (std::size_t k = 0; k < e.size() && k < c.size(); ++k) e[k] += (e[k] - c[k]) / 3.0;
  }
  return e;
}

std::vector<EigenPair> band_solve(const PotentialOnGrid& one_period, double kL, int count, const EigenOptions& options) {
  if (count < 1) throw std::invalid_argument("band_solve: count must be positive");
  if (options.stencil == Stencil::numerov)
    throw std::invalid_argument("band_solve: only the three-point stencil is available for Bloch conditions");
  const Grid& grid = one_period.grid;
  const std::size_t n = grid.size();
  if (n < 5) throw std::invalid_argument("band_solve: grid too small");
  const double h = grid.spacing();
  const double kin = one_period.units.kinetic() / (h * h);
  std::vector<double> v(one_period.values.begin(), one_period.values.end() - 1);
  DenseBand fine = dense_band(v, kin, kL, count);
  std::vector<double> energies = fine.energies;
  if (options.richardson && (n - 1) % 2 == 0 && n >= 9) {
    std::vector<double> vc;
    for (std::size_t i = 0; i + 1 < n; i += 2) vc.push_back(one_period.values[i]);
    DenseBand coarse = dense_band(vc, kin / 4.0, kL, count);
    for (std::size_t k = 0; k < energies.size(); ++k)
      energies[k] = fine.energies[k] + (fine.energies[k] - coarse.energies[k]) / 3.0;
  }
  const bool real = std::abs(std::sin(kL)) < 1e-14;
  const int sign = std::cos(kL) > 0 ? 1 : -1;
  std::vector<EigenPair> out;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    std::vector<double> psi(n);
    for (std::size_t i = 0; i + 1 < n; ++i) psi[i] = fine.vectors[k][i];
    psi[n - 1] = real ? sign * psi[0] : psi[0];
    fix_sign(psi);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = psi[i] * psi[i];
    const double norm = std::sqrt(integrate(grid, sq));
    for (double& t : psi) t /= norm;
    const int nodes = real ? periodic_node_count(std::span<const double>(psi).first(n - 1), sign) : 0;
    out.push_back(EigenPair{energies[k], SampledFunction(grid, std::move(psi)), nodes});
  }
  return out;
}

int periodic_node_count(std::span<const double> psi, int bloch_sign) {
  const std::size_t m = psi.size();
  double vmax = 0.0;
  for (double t : psi) vmax = std::max(vmax, std::abs(t));
  const double cut = 1e-9 * vmax;
  std::size_t start = 0;
  while (start < m && std::abs(psi[start]) <= cut) ++start;
  if (start == m) return 0;
  int changes = 0;
  int last = psi[start] > 0 ? 1 : -1;
  for (std::size_t j = start + 1; j <= start + m; ++j) {
    double val = psi[j % m];
    if (j >= m && bloch_sign < 0) val = -val;
    if (std::abs(val) <= cut) continue;
    const int s = val > 0 ? 1 : -1;
    if (s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<double> apply_hamiltonian(const PotentialOnGrid& v, std::span<const double> psi, int bloch_sign) {
  const std::size_t n = psi.size();
  if (n != v.grid.size()) throw std::invalid_argument("apply_hamiltonian: size mismatch");
  const double h = v.grid.spacing();
  const double kin = v.units.kinetic() / (12.0 * h * h);
  const auto m = static_cast<long>(bloch_sign == 0 ? n : n - 1);
  auto at = [&](long j) -> double {
    if (bloch_sign == 0) {
      if (j < 0) return -psi[static_cast<std::size_t>(-j)];
      if (j >= m) return -psi[static_cast<std::size_t>(2 * (m - 1) - j)];
      return psi[static_cast<std::size_t>(j)];
    }
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
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const double lap = -at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) - at(i + 2);
    out[static_cast<std::size_t>(i)] = -kin * lap + v.values[static_cast<std::size_t>(i)] * psi[static_cast<std::size_t>(i)];
  }
  return out;
}

double eigen_residual(const PotentialOnGrid& v, std::span<const double> psi, double energy, int bloch_sign) {
  const auto hp = apply_hamiltonian(v, psi, bloch_sign);
  const std::size_t n = psi.size();
  double pmax = 0.0, res = 0.0;
  for (double t : psi) pmax = std::max(pmax, std::abs(t));
  const std::size_t lo = (bloch_sign == 0 && v.left == Edge::wall) ? 2 : 0;
  const std::size_t hi = (bloch_sign == 0 && v.right == Edge::wall) ? n - 2 : n;
  for (std::size_t i = lo; i < hi; ++i) res = std::max(res, std::abs(hp[i] - energy * psi[i]));
  return res / pmax;
}

}  // namespace susy
