#include <doctest.h>

#include <cmath>

#include "susy/eigensolver.hpp"
#include "susy/isospectral.hpp"
#include "susy/shape_invariance.hpp"
#include "susy/susy_core.hpp"

using namespace susy;

TEST_SUITE("isospectral") {
  TEST_CASE("deformed oscillator keeps its spectrum") {
    const SipEntry osc = sip_lookup(SipName::shifted_oscillator, {{"omega", 2.0}});
    const Grid g(-10.0, 10.0, 4001);
    const auto base = IsoFamily::make(osc.superpotential(), g, 1.0);
    for (double lambda : {0.3, 1.0, 10.0, -1.5}) {
      const auto bs = bound_states(deformed_potential(base, lambda), 5);
      REQUIRE(bs.states.size() == 5);
      for (int n = 0; n < 5; ++n) CHECK(bs.states[n].energy == doctest::Approx(2.0 * n).epsilon(1e-5).scale(1.0));
    }
  }

  TEST_CASE("forbidden deformation parameters") {
    const SipEntry osc = sip_lookup(SipName::shifted_oscillator);
    const auto base = IsoFamily::make(osc.superpotential(), Grid(-10.0, 10.0, 801), 1.0);
    CHECK_THROWS_AS(base.with_lambda(-0.5), std::invalid_argument);
  }

  TEST_CASE("deformed ground state is normalized and nodeless") {
    const SipEntry osc = sip_lookup(SipName::shifted_oscillator, {{"omega", 2.0}});
    const Grid g(-10.0, 10.0, 4001);
    const auto fam = IsoFamily::make(osc.superpotential(), g, 0.5);
    const auto d = deformed_family(fam);
    std::vector<double> sq(g.size());
    double pmin = 1.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      sq[i] = d.psi0_hat[i] * d.psi0_hat[i];
      pmin = std::min(pmin, d.psi0_hat[i]);
    }
    CHECK(integrate(g, sq) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(pmin >= 0.0);
    CHECK(eigen_residual(d.v_hat, d.psi0_hat.values(), 0.0) < 1e-3);
  }

  TEST_CASE("excited states of the deformed potential") {
    const SipEntry osc = sip_lookup(SipName::shifted_oscillator, {{"omega", 2.0}});
    const Grid g(-10.0, 10.0, 4001);
    const auto fam = IsoFamily::make(osc.superpotential(), g, 2.0);
    const auto d = deformed_family(fam);
    const auto v2 = partner_potentials(osc.superpotential()).sample_v2(g);
    const auto s2 = bound_states(v2, 2);
    for (const auto& s : s2.states) {
      const auto psi = deformed_excited(fam, s.psi, s.energy);
      CHECK(eigen_residual(d.v_hat, psi.values(), s.energy) < 1e-3);
    }
  }

  TEST_CASE("conserved charges of the sech^2 family") {
    const SipEntry sech = sip_lookup(SipName::scarf_ii, {{"A", 1.0}, {"B", 0.0}});
    const Grid g(-25.0, 25.0, 5001);
    const auto base = IsoFamily::make(sech.superpotential(), g, 1.0);
    for (double lambda : {0.5, 1.0, 10.0}) {
      const auto q = conserved_charges(base.with_lambda(lambda));
      CHECK(q.q1 == doctest::Approx(-4.0).epsilon(1e-6));
      // Integration by parts: Q2(lambda) - Q2(inf) = 2 ln(1 + 1/lambda), and Q2(inf) = 0 by symmetry.
      CHECK(q.q2 == doctest::Approx(2.0 * std::log(1.0 + 1.0 / lambda)).epsilon(1e-6));
    }
  }

  TEST_CASE("charges need a decaying potential") {
    const SipEntry osc = sip_lookup(SipName::shifted_oscillator);
    const auto fam = IsoFamily::make(osc.superpotential(), Grid(-10.0, 10.0, 2001), 1.0);
    CHECK_THROWS_AS(conserved_charges(fam), std::invalid_argument);
  }

  TEST_CASE("Pursey and Abraham-Moses limits remove the ground level") {
    const SipEntry osc = sip_lookup(SipName::shifted_oscillator, {{"omega", 2.0}});
    const auto fam = IsoFamily::make(osc.superpotential(), Grid(-10.0, 10.0, 4001), 1.0);
    const auto [pursey, am] = pursey_abraham_moses(fam);
    for (const auto* v : {&pursey, &am}) {
      const auto bs = bound_states(*v, 3);
      CHECK(bs.states[0].energy == doctest::Approx(2.0).epsilon(1e-5));
      CHECK(bs.states[1].energy == doctest::Approx(4.0).epsilon(1e-5));
    }
    const SipEntry sech = sip_lookup(SipName::scarf_ii, {{"A", 2.0}, {"B", 0.0}});
    const auto f2 = IsoFamily::make(sech.superpotential(), Grid(-25.0, 25.0, 5001), 1.0);
    CHECK(bound_states(partner_potentials(sech.superpotential()).sample_v1(f2.grid()), 3).states.size() == 2);
    CHECK(bound_states(pursey_abraham_moses(f2).first, 3).states.size() == 1);
  }

  TEST_CASE("cumulative norm runs from 0 to 1") {
    const Grid g(-8.0, 8.0, 1601);
    const auto psi = SampledFunction::from(g, [](double x) { return std::exp(-x * x / 2) / std::pow(M_PI, 0.25); });
    const auto c = cumulative_norm(psi);
    CHECK(c[0] == doctest::Approx(0.0));
    CHECK(c[g.size() - 1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(c[800] == doctest::Approx(0.5).epsilon(1e-10));
  }
}
