#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "susy/eigensolver.hpp"
#include "susy/scattering.hpp"
#include "susy/shape_invariance.hpp"
#include "susy/susy_core.hpp"

using namespace susy;

namespace {

Grid interior_grid(const SipEntry& e, std::size_t n) {
  const Domain d = e.domain();
  const double a = d.left_wall() ? d.lo : -12.0, b = d.right_wall() ? d.hi : 12.0;
  const double margin = 1e-3 * (b - a);
  return Grid(d.left_wall() ? a + margin : a, d.right_wall() ? b - margin : b, n);
}

}  // namespace

TEST_SUITE("shape_invariance") {
  TEST_CASE("ten catalog entries with unique keys") {
    CHECK(sip_catalog().size() == 10);
    for (const auto& m : sip_catalog()) CHECK(&sip_model(m.key) == &sip_model(m.name));
    CHECK_THROWS_AS(sip_model("nonexistent"), std::invalid_argument);
  }

  TEST_CASE("table V1 column equals W^2 - W'") {
    for (const auto& m : sip_catalog()) {
      const SipEntry e = sip_lookup(m.name);
      const Grid g = interior_grid(e, 301);
      for (std::size_t i = 0; i < g.size(); i += 10) {
        const double x = g[i];
        const double v = e.w(x) * e.w(x) - e.dw(x);
        CHECK(e.v1(x) == doctest::Approx(v).epsilon(1e-10).scale(std::max(1.0, std::abs(v))));
      }
    }
  }

  TEST_CASE("shape invariance holds for random admissible parameters") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> scale(0.7, 1.3);
    for (const auto& m : sip_catalog()) {
      for (int k = 0; k < 3; ++k) {
        Params p = m.defaults;
        for (int attempt = 0; attempt < 200; ++attempt) {
          p = m.defaults;
          for (auto& [name, value] : p)
            if (name != "l" && name != "x0") value *= scale(rng);
          if (!m.violation(p) && m.normalizable(p)) break;
        }
        const SipEntry e = sip_lookup(m.name, p);
        CHECK(e.shape_invariance_residual(interior_grid(e, 4001)) <= 1e-9);
      }
    }
  }

  TEST_CASE("closed-form spectra agree with the numeric solver") {
    for (SipName name : {SipName::shifted_oscillator, SipName::morse, SipName::scarf_ii, SipName::rosen_morse_i,
                         SipName::poschl_teller}) {
      const SipEntry e = sip_lookup(name);
      const int levels = e.bound_state_count() < 0 ? 4 : std::min(4, e.bound_state_count());
      const Grid g = e.default_grid(levels, 4001);
      const auto bs = bound_states(partner_potentials(e.superpotential()).sample_v1(g), levels);
      const auto spec = sip_spectrum(e, levels - 1);
      REQUIRE(bs.states.size() >= static_cast<std::size_t>(levels));
      for (int n = 0; n < levels; ++n) {
        CHECK(spec.energies[n] == doctest::Approx(e.energy(n)).epsilon(1e-12));
        CHECK(bs.states[n].energy == doctest::Approx(e.energy(n)).epsilon(1e-5).scale(1.0));
      }
    }
  }

  TEST_CASE("spectrum truncates at the bound-state count") {
    const SipEntry e = sip_lookup(SipName::scarf_ii, {{"A", 2.0}, {"B", 0.0}});
    CHECK(e.bound_state_count() == 2);
    const auto spec = sip_spectrum(e, 5);
    CHECK(spec.truncated);
    CHECK(spec.energies.size() == 2);
    CHECK(spec.energies[1] == doctest::Approx(3.0));
  }

  TEST_CASE("eigenfunctions from the ladder: normalized, orthogonal, solve H1") {
    const SipEntry e = sip_lookup(SipName::shifted_oscillator, {{"omega", 2.0}});
    const Grid g(-9.0, 9.0, 3001);
    std::vector<SampledFunction> psis;
    for (int n = 0; n < 4; ++n) psis.push_back(sip_eigenfunction(e, n, g));
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b) {
        std::vector<double> prod(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) prod[i] = psis[a][i] * psis[b][i];
        CHECK(integrate(g, prod) == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-6).scale(1.0));
      }
    const auto v1 = partner_potentials(e.superpotential()).sample_v1(g);
    for (int n = 0; n < 4; ++n) CHECK(eigen_residual(v1, psis[n].values(), e.energy(n)) < 1e-3);
  }

  TEST_CASE("square-well hierarchy reproduces 6 cosec^2 x - 4") {
    const SipEntry well = sip_lookup(SipName::rosen_morse_i, {{"A", 1.0}, {"B", 0.0}, {"alpha", 1.0}});
    const auto v3 = hierarchy_function(well, 3, HierarchyConvention::partner_of_zeroed);
    for (double x : {0.3, 1.0, 2.2}) CHECK(v3(x) == doctest::Approx(6.0 / std::pow(std::sin(x), 2) - 4.0).epsilon(1e-12));
    const auto v2 = hierarchy_function(well, 2, HierarchyConvention::partner_of_zeroed);
    CHECK(v2(0.7) == doctest::Approx(2.0 / std::pow(std::sin(0.7), 2) - 1.0).epsilon(1e-12));
  }

  TEST_CASE("cumulative hierarchy starts at E_{s-1}") {
    const SipEntry e = sip_lookup(SipName::morse);
    const Grid g = e.default_grid(5, 4001);
    for (int s = 1; s <= 3; ++s) {
      const auto bs = bound_states(hierarchy_potential(e, s, g), 1);
      CHECK(bs.states[0].energy == doctest::Approx(e.energy(s - 1)).epsilon(1e-5));
    }
  }

  TEST_CASE("scattering recursion for sech^2 matches the product formula") {
    const SipEntry e = sip_lookup(SipName::scarf_ii, {{"A", 2.0}, {"B", 0.0}});
    for (double k : {0.5, 1.0, 2.0}) {
      const auto rt = sip_scatter_recursion(e, k, 2);
      CHECK(std::abs(rt.r) < 1e-12);
      CHECK(std::abs(rt.t - reflectionless_T(2, k)) < 1e-12);
    }
  }

  TEST_CASE("parameter constraints") {
    CHECK_THROWS_AS(sip_lookup(SipName::morse, {{"A", -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(sip_lookup(SipName::morse, {{"nonsense", 1.0}}), std::invalid_argument);
  }
}
