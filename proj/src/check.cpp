#include "susy/check.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "susy/eigensolver.hpp"
#include "susy/isospectral.hpp"
#include "susy/periodic.hpp"
#include "susy/scattering.hpp"
#include "susy/shape_invariance.hpp"
#include "susy/susy_core.hpp"
#include "susy/swkb.hpp"

namespace susy::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kLadderTol = 1e-4;
constexpr double kShapeOverlap = 1.0 - 1e-6;
constexpr double kSolverTol = 1e-6;  // relative accuracy of the default eigensolver grids
constexpr double kMapTol = 1e-5;
constexpr double kReflectionTol = 1e-5;
constexpr double kPhaseTol = 1e-4;
constexpr double kBoundTol = 1e-5;
constexpr double kShapeInvTol = 1e-9;
constexpr double kIsoLevelTol = 1e-5;
constexpr double kChargeTol = 1e-5;
constexpr double kSwkbTol = 1e-7;
constexpr double kWkbExactTol = 1e-7;
constexpr double kWkbDeviation = 1e-3;
constexpr double kSwkbGroundTol = 1e-10;
constexpr double kBandTol = 1e-4;
constexpr double kAlgebraTol = 1e-8;

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

PotentialOnGrid sample(const RealFunction& v, const Grid& g, const Domain& d) { return PotentialOnGrid::sample(v, g, d); }

double overlap(const SampledFunction& a, const std::vector<double>& b) {
  std::vector<double> prod(a.size()), bb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    prod[i] = a[i] * b[i];
    bb[i] = b[i] * b[i];
  }
  const double nb = std::sqrt(integrate(a.grid(), bb));
  std::vector<double> aa(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) aa[i] = a[i] * a[i];
  const double na = std::sqrt(integrate(a.grid(), aa));
  return std::abs(integrate(a.grid(), prod)) / (na * nb);
}

// 1. Infinite-well ladder.
std::vector<CriterionResult> ladder() {
  const Domain d = Domain::interval(0.0, kPi);
  const Grid g(0.0, kPi, 4001);
  double literal = 0.0, rel = 0.0, worst_overlap = 1.0;
  bool nodes_ok = true;
  std::string offsets;
  for (int p = 0; p <= 2; ++p) {
    const double pp = p * (p + 1.0), p2 = p * p;
    const auto v = sample([pp, p2](double x) { return pp / std::pow(std::sin(x), 2) - p2; }, g, d);
    const auto bs = bound_states(v, 5);
    const auto e = bs.energies();
    for (int n = 0; n <= 4; ++n) {
      const double target = n * (n + 2.0 * p + 2.0);
      literal = std::max(literal, std::abs(e[static_cast<std::size_t>(n)] - target));
      rel = std::max(rel, std::abs(e[static_cast<std::size_t>(n)] - e[0] - target));
    }
    offsets += (p ? ", " : "") + std::string("p=") + std::to_string(p) + ": E0=" + num(e[0]);
    nodes_ok = nodes_ok && bs.states[0].nodes == 0;
    std::vector<double> shape(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) shape[i] = std::pow(std::sin(g[i]), p + 1);
    worst_overlap = std::min(worst_overlap, overlap(bs.states[0].psi, shape));
  }
  return {
      {"1", "well ladder: E_n = n(n+2p+2) for V = p(p+1)cosec^2 x - p^2, p=0..2, n<=4", literal <= kLadderTol,
       "max |E_n - n(n+2p+2)| = " + num(literal) + " (" + offsets + ")"},
      {"1a", "well ladder: E_n - E_0 = n(n+2p+2), p=0..2, n<=4", rel <= kLadderTol, "max deviation " + num(rel)},
      {"1b", "well ladder: ground states nodeless with sin^{p+1} overlap >= 1-1e-6",
       nodes_ok && worst_overlap >= kShapeOverlap, "min overlap 1-" + num(1.0 - worst_overlap)},
  };
}

// 2. Degeneracy of H1 and H2 and the A / A^dag maps.
CriterionResult degeneracy() {
  const SipName names[] = {SipName::shifted_oscillator, SipName::morse, SipName::scarf_ii, SipName::rosen_morse_ii,
                           SipName::scarf_i};
  EigenOptions opts;
  opts.stencil = Stencil::numerov;
  double worst_level = 0.0, worst_norm = 0.0, worst_res = 0.0;
  for (SipName name : names) {
    const SipEntry e = sip_lookup(name);
    const int levels = std::min(5, e.bound_state_count() < 0 ? 5 : e.bound_state_count());
    const Grid g = e.default_grid(levels, 4001);
    const Superpotential w = e.superpotential();
    const auto pair = partner_potentials(w);
    const auto v1 = pair.sample_v1(g);
    const auto v2 = pair.sample_v2(g);
    const auto s1 = bound_states(v1, levels, opts);
    const auto s2 = bound_states(v2, levels - 1, opts);
    for (int n = 0; n + 1 < levels; ++n) {
      const double e1 = s1.states[static_cast<std::size_t>(n + 1)].energy;
      const double e2 = s2.states[static_cast<std::size_t>(n)].energy;
      worst_level = std::max(worst_level, std::abs(e1 - e2) / (2.0 * kSolverTol * std::max(1.0, std::abs(e1))));
      // H1 -> H2 with A, H2 -> H1 with A^dag.
      const auto up = apply_A(w, s1.states[static_cast<std::size_t>(n + 1)].psi);
      const auto down = apply_Adag(w, s2.states[static_cast<std::size_t>(n)].psi);
      const auto& psi2 = s2.states[static_cast<std::size_t>(n)].psi;
      const auto& psi1 = s1.states[static_cast<std::size_t>(n + 1)].psi;
      for (const auto& [phi, energy, target] : {std::tuple{up, e1, &psi2}, std::tuple{down, e2, &psi1}}) {
        std::vector<double> sq(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) sq[i] = phi[i] * phi[i];
        worst_norm = std::max(worst_norm, std::abs(integrate(g, sq) / energy - 1.0));
        worst_res = std::max(worst_res, 1.0 - overlap(phi, target->data()));
      }
    }
  }
  const bool ok = worst_level <= 1.0 && worst_norm <= kMapTol && worst_res <= kMapTol;
  return {"2", "degeneracy: spec(H2) = spec(H1) minus its zero level; A/A^dag map states",
          ok,
          "max |dE|/(2 tol) " + num(worst_level) + ", norm " + num(worst_norm) + ", overlap 1-" + num(worst_res)};
}

// 3. Reflectionless sech^2 family.
CriterionResult reflectionless() {
  double worst_r = 0.0, worst_phase = 0.0, worst_bound = 0.0;
  for (int p = 1; p <= 3; ++p) {
    const double pp = p * (p + 1.0), p2 = p * p;
    const RealFunction v = [pp, p2](double x) { return p2 - pp / std::pow(std::cosh(x), 2); };
    const auto wide = sample(v, Grid(-30.0, 30.0, 12001), Domain::real_line());
    for (double k : {0.5, 1.0, 2.0}) {
      const auto amp = numeric_rt(wide, p2 + k * k);
      worst_r = std::max(worst_r, std::abs(amp.r));
      const double d = std::arg(amp.t / reflectionless_T(p, k));
      worst_phase = std::max(worst_phase, std::abs(d));
    }
    const auto bs = bound_states(sample(v, Grid(-20.0, 20.0, 4001), Domain::real_line()), p + 1);
    if (static_cast<int>(bs.states.size()) != p) worst_bound = std::numeric_limits<double>::infinity();
    for (int n = 0; n < std::min<int>(p, static_cast<int>(bs.states.size())); ++n)
      worst_bound = std::max(worst_bound, std::abs(bs.states[static_cast<std::size_t>(n)].energy - (p2 - (p - n) * (p - n))));
  }
  const bool ok = worst_r <= kReflectionTol && worst_phase <= kPhaseTol && worst_bound <= kBoundTol;
  return {"3", "reflectionless: |R| <= 1e-5, arg T vs product formula <= 1e-4 rad, E_n = B^2 - (B-n)^2", ok,
          "max |R| " + num(worst_r) + ", max phase error " + num(worst_phase) + ", max level error " + num(worst_bound)};
}

// 4. Shape invariance for random admissible parameters.
CriterionResult shape_invariance() {
  std::mt19937 rng(20240611u);
  std::uniform_real_distribution<double> scale(0.6, 1.4), shift(-1.0, 1.0);
  std::uniform_int_distribution<int> ell(0, 3);
  double worst = 0.0;
  int draws = 0;
  for (const SipModel& m : sip_catalog()) {
    for (int k = 0; k < 5; ++k) {
      Params p;
      for (int attempt = 0; attempt < 1000; ++attempt) {
        p = m.defaults;
        for (auto& [name, value] : p) {
          if (name == "l")
            value = ell(rng);
          else if (name == "x0" || name == "b")
            value = shift(rng);
          else
            value *= scale(rng);
        }
        if (!m.violation(p) && m.normalizable(p)) break;
      }
      const SipEntry e = sip_lookup(m.name, p);
      const Domain d = e.domain();
      const double a = d.left_wall() ? d.lo : -12.0, b = d.right_wall() ? d.hi : 12.0;
      const double margin = 1e-3 * (b - a);
      const Grid g(d.left_wall() ? a + margin : a, d.right_wall() ? b - margin : b, 20001);
      worst = std::max(worst, e.shape_invariance_residual(g));
      ++draws;
    }
  }
  return {"4", "shape invariance: V2(x;a1) - V1(x;a2) - R(a1) = 0 for 5 random draws per entry", worst <= kShapeInvTol,
          std::to_string(draws) + " draws, max scaled residual " + num(worst)};
}

// 5. Isospectral deformations.
std::vector<CriterionResult> isospectral() {
  const SipEntry osc = sip_lookup(SipName::shifted_oscillator, {{"omega", 2.0}});
  const Grid g(-10.0, 10.0, 4001);
  double worst_level = 0.0;
  const auto base = IsoFamily::make(osc.superpotential(), g, 1.0);
  for (double lambda : {0.3, 1.0, 10.0}) {
    const auto fam = deformed_family(base.with_lambda(lambda));
    const auto e = bound_states(fam.v_hat, 5).energies();
    for (int n = 0; n < 5; ++n) worst_level = std::max(worst_level, std::abs(e[static_cast<std::size_t>(n)] - 2.0 * n));
  }
  const SipEntry sech = sip_lookup(SipName::scarf_ii, {{"A", 1.0}, {"B", 0.0}});
  const auto sfam = IsoFamily::make(sech.superpotential(), Grid(-25.0, 25.0, 5001), 1.0);
  double q1_lo = 1e300, q1_hi = -1e300, q2_lo = 1e300, q2_hi = -1e300;
  for (double lambda : {0.3, 1.0, 10.0}) {
    const Charges q = conserved_charges(sfam.with_lambda(lambda));
    q1_lo = std::min(q1_lo, q.q1);
    q1_hi = std::max(q1_hi, q.q1);
    q2_lo = std::min(q2_lo, q.q2);
    q2_hi = std::max(q2_hi, q.q2);
  }
  // Pursey: the oscillator loses E = 0; sech^2 with two levels keeps one.
  const auto pursey_osc = bound_states(deformed_potential(base, 0.0), 4).energies();
  double pursey_dev = 0.0;
  for (int n = 0; n < 4; ++n) pursey_dev = std::max(pursey_dev, std::abs(pursey_osc[static_cast<std::size_t>(n)] - 2.0 * (n + 1)));
  const SipEntry sech2 = sip_lookup(SipName::scarf_ii, {{"A", 2.0}, {"B", 0.0}});
  const auto fam2 = IsoFamily::make(sech2.superpotential(), Grid(-20.0, 20.0, 4001), 1.0);
  const auto base_count = bound_states(partner_potentials(sech2.superpotential()).sample_v1(fam2.grid()), 3).states.size();
  const auto pursey_count = bound_states(deformed_potential(fam2, 0.0), 3).states.size();
  const bool pursey_ok = pursey_dev <= kIsoLevelTol && base_count == 2 && pursey_count == 1;
  const double dq1 = q1_hi - q1_lo, dq2 = q2_hi - q2_lo;
  return {
      {"5", "isospectral: spectrum {0,2,4,6,8} at lambda 0.3,1,10; Q1 and Q2 lambda-invariant; Pursey loses one level",
       worst_level <= kIsoLevelTol && dq1 <= kChargeTol && dq2 <= kChargeTol && pursey_ok,
       "level error " + num(worst_level) + ", spread Q1 " + num(dq1) + ", spread Q2 " + num(dq2) +
           ", Pursey oscillator dev " + num(pursey_dev) + ", sech^2 levels " + std::to_string(base_count) + " -> " +
           std::to_string(pursey_count)},
      {"5a", "isospectral: spectrum, Q1 invariance and Pursey count",
       worst_level <= kIsoLevelTol && dq1 <= kChargeTol && pursey_ok, "Q1 spread " + num(dq1)},
  };
}

// 6 and 7. SWKB.
std::vector<CriterionResult> swkb() {
  std::vector<SipEntry> entries;
  for (const SipModel& m : sip_catalog()) entries.push_back(sip_lookup(m.name));
  const auto rows = exactness_audit(entries, 5);
  double worst_swkb = 0.0;
  double worst_exact_wkb = 0.0;
  int deviating = 0;
  std::string dev_names;
  for (const auto& r : rows) {
    worst_swkb = std::max(worst_swkb, r.swkb_error);
    const bool exact_family = r.entry == sip_model(SipName::shifted_oscillator).label || r.entry == sip_model(SipName::morse).label;
    if (exact_family) worst_exact_wkb = std::max(worst_exact_wkb, r.wkb_error.value_or(1.0));
    if (!exact_family && r.n == 1 && r.wkb_error && *r.wkb_error > kWkbDeviation) {
      ++deviating;
      dev_names += (dev_names.empty() ? "" : ", ") + r.entry;
    }
  }
  double worst_ground = 0.0;
  for (const auto& e : entries) worst_ground = std::max(worst_ground, std::abs(quantize(QuantizationProblem::swkb(e.superpotential()), 0)));
  return {
      {"6", "SWKB exact for all entries, n<=5; WKB exact only for oscillator and Morse",
       worst_swkb <= kSwkbTol && worst_exact_wkb <= kWkbExactTol && deviating >= 3,
       "max SWKB rel error " + num(worst_swkb) + ", oscillator/Morse WKB " + num(worst_exact_wkb) + ", WKB off at n=1: " +
           std::to_string(deviating) + " (" + dev_names + ")"},
      {"7", "SWKB ground state E0 = 0", worst_ground <= kSwkbGroundTol, "max |E0| " + num(worst_ground)},
  };
}

double edge_error(const std::vector<BandEdge>& numeric, const std::vector<BandEdge>& analytic, double shift = 0.0) {
  if (numeric.size() != analytic.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) worst = std::max(worst, std::abs(numeric[i].energy + shift - analytic[i].energy));
  return worst;
}

// 8, 9 and 11. Lame bands.
std::vector<CriterionResult> lame(std::vector<std::vector<BandEdge>>& all_edges) {
  double w1 = 0.0, w2 = 0.0, w2p = 0.0;
  bool cls1 = true, cls2 = true;
  std::string notes1, notes2;
  for (double m : {0.3, 0.5, 0.8}) {
    for (int a : {1, 2}) {
      const LameSpec spec{a, m};
      const auto numeric = lame_numeric_band_edges(spec);
      const double err = edge_error(numeric, lame_band_edges(spec));
      const LamePartner partner = lame_partner(spec);
      auto v2_edges = numeric_band_edges(partner.v2, 2 * a + 1);
      v2_edges.back().which = BandBoundary::continuum_bottom;
      const double perr = edge_error(v2_edges, lame_band_edges(spec), partner.shift);
      const SelfIsospectral c = self_isospectral_classify(partner.w);
      const ShiftScan scan = shift_scan(partner.v1, partner.v2);
      all_edges.push_back(numeric);
      all_edges.push_back(v2_edges);
      if (a == 1) {
        w1 = std::max({w1, err, perr});
        const bool ok = c == SelfIsospectral::half_period_antisymmetric && scan.related;
        cls1 = cls1 && ok;
        if (!ok) notes1 += " m=" + num(m) + ": " + to_string(c);
      } else {
        w2 = std::max(w2, err);
        w2p = std::max(w2p, perr);
        const bool ok = c == SelfIsospectral::neither && !scan.related;
        cls2 = cls2 && ok;
        notes2 += " m=" + num(m) + " scan " + num(scan.best_deviation) + ";";
      }
    }
  }
  return {
      {"8", "Lame a=1: band edges {m, 1, 1+m}; partner self-isospectral", w1 <= kBandTol && cls1,
       "max edge error " + num(w1) + (cls1 ? ", half-period antisymmetric" : notes1)},
      {"9", "Lame a=2: five band edges; V2 isospectral and not self-isospectral", w2 <= kBandTol && w2p <= kBandTol && cls2,
       "max edge error " + num(w2) + ", V2 edge error " + num(w2p) + ", best shift/reflection deviation:" + notes2},
  };
}

// 10. Superalgebra for W = x.
CriterionResult algebra() {
  Superpotential::Definition d;
  d.w = [](double x) { return x; };
  d.dw = [](double) { return 1.0; };
  d.integral = [](double x) { return 0.5 * x * x; };
  d.name = "x";
  const auto r = algebra_check(Superpotential(std::move(d)), Grid(-8.0, 8.0, 800));
  const double worst = std::max({r.q_squared, r.anticommutator, r.commutator});
  return {"10", "algebra: Q^2 = 0, {Q,Q^dag} = H, [H,Q] = 0 on 800 points for W = x", worst <= kAlgebraTol,
          "Q^2 " + num(r.q_squared) + ", {Q,Q^dag}-H " + num(r.anticommutator) + ", [H,Q] " + num(r.commutator)};
}

CriterionResult guarded(const std::string& id, const std::string& what, const std::function<CriterionResult()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {id, what, false, std::string("error: ") + e.what()};
  }
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + r.id + "  " + r.description + "  | " + r.detail;
}

std::vector<CriterionResult> run_acceptance(std::ostream* progress) {
  std::vector<CriterionResult> out;
  auto add = [&](std::vector<CriterionResult> rs) {
    for (auto& r : rs) {
      if (progress) *progress << format_result(r) << std::endl;
      out.push_back(std::move(r));
    }
  };
  auto one = [](CriterionResult r) { return std::vector<CriterionResult>{std::move(r)}; };
  auto many = [](const std::string& id, const std::string& what, const std::function<std::vector<CriterionResult>()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      return std::vector<CriterionResult>{{id, what, false, std::string("error: ") + e.what()}};
    }
  };
  add(many("1", "well ladder", ladder));
  add(one(guarded("2", "degeneracy", degeneracy)));
  add(one(guarded("3", "reflectionless", reflectionless)));
  add(one(guarded("4", "shape invariance", shape_invariance)));
  add(many("5", "isospectral", isospectral));
  add(many("6", "SWKB", swkb));
  std::vector<std::vector<BandEdge>> edges;
  add(many("8", "Lame", [&] { return lame(edges); }));
  add(one(guarded("10", "algebra", algebra)));
  add(one(guarded("11", "oscillation theorem", [&] {
    const bool ok = !edges.empty() && std::all_of(edges.begin(), edges.end(), follows_oscillation_pattern);
    return CriterionResult{"11", "oscillation theorem: tags L,2L,2L,L,L and nodes 0,1,1,2,2 for every edge set", ok,
                           std::to_string(edges.size()) + " edge sets checked"};
  })));
  return out;
}

}  // namespace susy::cli
