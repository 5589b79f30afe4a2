#include "susy/susy_core.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

namespace susy {

PotentialOnGrid PartnerPair::sample_v1(const Grid& grid) const {
  return PotentialOnGrid::sample(v1, grid, source.domain(), source.units());
}

PotentialOnGrid PartnerPair::sample_v2(const Grid& grid) const {
  return PotentialOnGrid::sample(v2, grid, source.domain(), source.units());
}

PartnerPair partner_potentials(const Superpotential& w) {
  const double c = w.units().scale();
  auto make = [w, c](double sign) {
    return [w, c, sign](double x) {
      const double wx = w(x);
      const double dw = w.derivative(x);
      if (w.domain().contains(x) && !std::isfinite(dw))
        throw NumericError("partner_potentials: W' is not finite at x=" + std::to_string(x));
      return wx * wx + sign * c * dw;
    };
  };
  return PartnerPair{make(-1.0), make(+1.0), w};
}

namespace {

struct FiniteRange {
  std::size_t first;
  std::size_t last;
};

FiniteRange finite_range(const std::vector<double>& v) {
  std::size_t i0 = 0;
  while (i0 < v.size() && !std::isfinite(v[i0])) ++i0;
  if (i0 == v.size()) throw NumericError("superpotential is not finite anywhere on the grid");
  std::size_t i1 = v.size() - 1;
  while (!std::isfinite(v[i1])) --i1;
  for (std::size_t i = i0; i <= i1; ++i)
    if (!std::isfinite(v[i])) throw NumericError("superpotential is not finite at interior grid point");
  return {i0, i1};
}

}  // namespace

SampledFunction ground_state_from_w(const Superpotential& w, const Grid& grid) {
  const double c = w.units().scale();
  const std::size_t n = grid.size();
  std::vector<double> s(n, std::numeric_limits<double>::quiet_NaN());
  if (w.has_antiderivative()) {
    for (std::size_t i = 0; i < n; ++i)
      if (w.domain().contains(grid[i])) s[i] = w.antiderivative(grid[i]);
    for (double& v : s)
      if (!std::isfinite(v)) v = std::numeric_limits<double>::quiet_NaN();
  } else {
    const auto ws = w.sample(grid);
    const auto r = finite_range(ws);
    if (r.last - r.first + 1 < 4) throw NumericError("ground_state_from_w: too few interior points");
    Grid sub(grid[r.first], grid[r.last], r.last - r.first + 1);
    const auto cum = cumulative_integral(sub, std::span<const double>(ws).subspan(r.first, r.last - r.first + 1));
    for (std::size_t i = r.first; i <= r.last; ++i) s[i] = cum[i - r.first];
  }
  double smin = std::numeric_limits<double>::infinity();
  for (double v : s)
    if (std::isfinite(v)) smin = std::min(smin, v);
  if (!std::isfinite(smin)) throw NumericError("ground_state_from_w: no finite samples");
  std::vector<double> psi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (std::isfinite(s[i])) psi[i] = std::exp(-(s[i] - smin) / c);
  const double pmax = *std::max_element(psi.begin(), psi.end());
  if (!w.domain().left_wall() && psi.front() > 0.5 * pmax)
    throw NumericError("ground_state_from_w: exp(-int W) grows toward the left edge (not normalizable)");
  if (!w.domain().right_wall() && psi.back() > 0.5 * pmax)
    throw NumericError("ground_state_from_w: exp(-int W) grows toward the right edge (not normalizable)");
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = psi[i] * psi[i];
  const double norm = std::sqrt(integrate(grid, sq));
  for (double& p : psi) p /= norm;
  return SampledFunction(grid, std::move(psi));
}

Superpotential w_from_ground_state(const SampledFunction& psi0, Units units) {
  const auto& v = psi0.data();
  const std::size_t n = v.size();
  std::size_t i0 = 0;
  while (i0 < n && v[i0] == 0.0) ++i0;
  std::size_t i1 = n;
  while (i1 > i0 && v[i1 - 1] == 0.0) --i1;
  if (i1 - i0 < 5) throw std::invalid_argument("w_from_ground_state: too few nonzero samples");
  const bool negative = v[i0] < 0.0;
  for (std::size_t i = i0; i < i1; ++i)
    if ((v[i] < 0.0) != negative || v[i] == 0.0)
      throw std::invalid_argument("w_from_ground_state: psi0 has an interior zero at x=" +
                                  std::to_string(psi0.grid()[i]));
  const auto d = derivative(psi0.grid(), psi0.values());
  const double c = units.scale();
  std::vector<double> w;
  w.reserve(i1 - i0);
  for (std::size_t i = i0; i < i1; ++i) w.push_back(-c * d[i] / v[i]);
  Grid sub(psi0.grid()[i0], psi0.grid()[i1 - 1], i1 - i0);
  return sampled_superpotential(SampledFunction(sub, std::move(w)), units, "from ground state");
}

namespace {

SampledFunction apply_first_order(const Superpotential& w, const SampledFunction& psi, double sign) {
  const double c = w.units().scale();
  const auto d = derivative(psi.grid(), psi.values());
  const auto ws = w.sample(psi.grid());
  std::vector<double> out(psi.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::isfinite(ws[i]) ? sign * c * d[i] + ws[i] * psi[i] : 0.0;
  return SampledFunction(psi.grid(), std::move(out));
}

}  // namespace

SampledFunction apply_A(const Superpotential& w, const SampledFunction& psi) { return apply_first_order(w, psi, 1.0); }

SampledFunction apply_Adag(const Superpotential& w, const SampledFunction& psi) {
  return apply_first_order(w, psi, -1.0);
}

AlgebraReport algebra_check(const Superpotential& w, const Grid& grid) {
  using Sparse = Eigen::SparseMatrix<double>;
  using Triplet = Eigen::Triplet<double>;
  const double c = w.units().scale();
  const double h = grid.spacing();
  const std::size_t n = grid.size();
  const auto N = static_cast<Eigen::Index>(n - 2);  // interior nodes
  const auto M = static_cast<Eigen::Index>(n - 1);  // half points
  std::vector<double> wm(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    wm[j] = w(0.5 * (grid[j] + grid[j + 1]));
    if (!std::isfinite(wm[j])) throw NumericError("algebra_check: W not finite at a half point");
  }
  // (A psi)_{j+1/2} = c (psi_{j+1} - psi_j)/h + W_{j+1/2} (psi_j + psi_{j+1})/2, Dirichlet ends.
  std::vector<Triplet> ta;
  for (Eigen::Index j = 0; j < M; ++j) {
    const double alpha = -c / h + 0.5 * wm[j];
    const double beta = c / h + 0.5 * wm[j];
    if (j - 1 >= 0 && j - 1 < N) ta.emplace_back(j, j - 1, alpha);
    if (j < N) ta.emplace_back(j, j, beta);
  }
  Sparse A(M, N);
  A.setFromTriplets(ta.begin(), ta.end());
  Sparse At = A.transpose();

  // H1 and H2 from their closed stencil formulas.
  std::vector<Triplet> t1, t2;
  for (Eigen::Index i = 0; i < N; ++i) {
    // Interior node i+1 sits between half points i and i+1.
    const double a_i = -c / h + 0.5 * wm[i + 1];
    const double b_im = c / h + 0.5 * wm[i];
    t1.emplace_back(i, i, b_im * b_im + a_i * a_i);
    if (i + 1 < N) {
      const double b_i = c / h + 0.5 * wm[i + 1];
      t1.emplace_back(i, i + 1, a_i * b_i);
      t1.emplace_back(i + 1, i, a_i * b_i);
    }
  }
  for (Eigen::Index j = 0; j < M; ++j) {
    const double alpha = -c / h + 0.5 * wm[j];
    const double beta = c / h + 0.5 * wm[j];
    double d = 0.0;
    if (j >= 1) d += alpha * alpha;
    if (j < N) d += beta * beta;
    t2.emplace_back(j, j, d);
    if (j + 1 < M && j < N) {
      const double alpha_next = -c / h + 0.5 * wm[j + 1];
      t2.emplace_back(j, j + 1, beta * alpha_next);
      t2.emplace_back(j + 1, j, beta * alpha_next);
    }
  }
  Sparse H1(N, N), H2(M, M);
  H1.setFromTriplets(t1.begin(), t1.end());
  H2.setFromTriplets(t2.begin(), t2.end());

  // Block forms on the (N + M)-dimensional superspace.
  const Eigen::Index D = N + M;
  std::vector<Triplet> tq, tqd, th;
  for (int k = 0; k < A.outerSize(); ++k)
    for (Sparse::InnerIterator it(A, k); it; ++it) {
      tq.emplace_back(N + it.row(), it.col(), it.value());
      tqd.emplace_back(it.col(), N + it.row(), it.value());
    }
  for (int k = 0; k < H1.outerSize(); ++k)
    for (Sparse::InnerIterator it(H1, k); it; ++it) th.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < H2.outerSize(); ++k)
    for (Sparse::InnerIterator it(H2, k); it; ++it) th.emplace_back(N + it.row(), N + it.col(), it.value());
  Sparse Q(D, D), Qd(D, D), H(D, D);
  Q.setFromTriplets(tq.begin(), tq.end());
  Qd.setFromTriplets(tqd.begin(), tqd.end());
  H.setFromTriplets(th.begin(), th.end());

  auto max_abs = [](const Sparse& m) {
    double r = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
      for (Sparse::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
    return r;
  };
  AlgebraReport rep;
  rep.spacing = h;
  rep.dimension = static_cast<std::size_t>(D);
  rep.q_squared = max_abs(Sparse(Q * Q));
  rep.anticommutator = max_abs(Sparse(Sparse(Q * Qd) + Sparse(Qd * Q) - H));
  rep.commutator = std::max(max_abs(Sparse(Sparse(H * Q) - Sparse(Q * H))), max_abs(Sparse(Sparse(H * Qd) - Sparse(Qd * H))));

  // Compare the factorized H1 with the ordinary 3-point discretization on psi0.
  const auto psi = ground_state_from_w(w, grid);
  const auto pair = partner_potentials(w);
  Eigen::VectorXd p(N);
  for (Eigen::Index i = 0; i < N; ++i) p[i] = psi[static_cast<std::size_t>(i + 1)];
  Eigen::VectorXd lhs = At * (A * p);
  double res = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto k = static_cast<std::size_t>(i + 1);
    const double lap = (psi[k - 1] - 2.0 * psi[k] + psi[k + 1]) / (h * h);
    const double rhs = -c * c * lap + pair.v1(grid[k]) * psi[k];
    res = std::max(res, std::abs(lhs[i] - rhs));
  }
  rep.consistency = res;
  return rep;
}

namespace {

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

struct ShellResult {
  double log_integral;
  double s_end;
};

// Integral of exp(-2 sign S / c) over [from, to] (either orientation), where
// S(from) = s_start, together with S(to).
ShellResult shell(const Superpotential& w, double from, double to, double s_start, double sign, double c,
                  std::size_t points) {
  const bool forward = to > from;
  Grid g(std::min(from, to), std::max(from, to), points);
  std::vector<double> s(points);
  if (w.has_antiderivative()) {
    for (std::size_t i = 0; i < points; ++i) s[i] = w.antiderivative(g[i]);
  } else {
    auto ws = w.sample(g);
    for (double v : ws)
      if (!std::isfinite(v)) throw NumericError("detect_breaking: W not finite inside the domain");
    const auto cum = cumulative_integral(g, ws);
    const double anchor = forward ? cum.front() : cum.back();
    for (std::size_t i = 0; i < points; ++i) s[i] = s_start + (cum[i] - anchor);
  }
  std::vector<double> gexp(points);
  double gmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    gexp[i] = -2.0 * sign * s[i] / c;
    if (!std::isfinite(gexp[i])) gexp[i] = std::signbit(gexp[i]) ? -std::numeric_limits<double>::infinity() : 1e300;
    gmax = std::max(gmax, gexp[i]);
  }
  std::vector<double> f(points);
  for (std::size_t i = 0; i < points; ++i) f[i] = std::exp(gexp[i] - gmax);
  const double integral = integrate(g, f);
  return {gmax + std::log(integral), forward ? s.back() : s.front()};
}

}  // namespace

SusyStatus detect_breaking(const Superpotential& w) {
  const Domain& d = w.domain();
  const double c = w.units().scale();
  double xc;
  if (d.contains(0.0))
    xc = 0.0;
  else if (d.left_wall() && d.right_wall())
    xc = 0.5 * (d.lo + d.hi);
  else if (d.left_wall())
    xc = d.lo + 1.0;
  else
    xc = d.hi - 1.0;
  constexpr int kSteps = 18;
  constexpr std::size_t kPoints = 4001;
  auto edge = [&](int side, int i) {
    if (side > 0) return d.right_wall() ? d.hi - (d.hi - xc) * std::ldexp(1.0, -(i + 1)) : xc + 4.0 * std::ldexp(1.0, i);
    return d.left_wall() ? d.lo + (xc - d.lo) * std::ldexp(1.0, -(i + 1)) : xc - 4.0 * std::ldexp(1.0, i);
  };
  const double s_ref = w.has_antiderivative() ? w.antiderivative(xc) : 0.0;

  auto probe = [&](double sign, double& log_norm) {
    auto right = shell(w, xc, edge(1, 0), s_ref, sign, c, 2 * kPoints - 1);
    auto left = shell(w, xc, edge(-1, 0), s_ref, sign, c, 2 * kPoints - 1);
    double total = log_add(right.log_integral, left.log_integral);
    double sr = right.s_end, sl = left.s_end;
    for (int i = 1; i < kSteps; ++i) {
      auto r = shell(w, edge(1, i - 1), edge(1, i), sr, sign, c, kPoints);
      auto l = shell(w, edge(-1, i - 1), edge(-1, i), sl, sign, c, kPoints);
      sr = r.s_end;
      sl = l.s_end;
      const double next = log_add(total, log_add(r.log_integral, l.log_integral));
      const double change = next - total;
      total = next;
      if (i >= 2 && std::isfinite(change) && change < 1e-8) {
        log_norm = total;
        return true;
      }
    }
    log_norm = total;
    return false;
  };
  double n1 = 0.0, n2 = 0.0;
  const bool first = probe(+1.0, n1);
  const bool second = probe(-1.0, n2);
  SusyStatus st;
  if (first && second) throw NumericError("detect_breaking: both exp(-int W) and exp(+int W) normalizable (inconsistent input)");
  if (first) {
    st.broken = false;
    st.ground_state_side = GroundSide::v1;
    st.norm_of_candidate = std::exp(n1);
  } else if (second) {
    st.broken = false;
    st.ground_state_side = GroundSide::v2;
    st.norm_of_candidate = std::exp(n2);
    st.note = "zero mode sits on V2; flip the sign of W to place it on V1";
  } else {
    st.broken = true;
    st.ground_state_side = GroundSide::neither;
    st.note = "neither exp(-int W) nor exp(+int W) is normalizable";
  }
  return st;
}

std::string to_string(GroundSide side) {
  switch (side) {
    case GroundSide::v1: return "V1";
    case GroundSide::v2: return "V2";
    default: return "neither";
  }
}

}  // namespace susy
