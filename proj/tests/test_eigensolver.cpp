#include <doctest.h>

#include <cmath>
#include <numbers>

#include "susy/eigensolver.hpp"

using namespace susy;

TEST_SUITE("eigensolver") {
  TEST_CASE("harmonic oscillator levels, both stencils") {
    const Grid g(-10.0, 10.0, 2001);
    const auto v = PotentialOnGrid::sample([](double x) { return x * x; }, g, Domain::real_line());
    for (Stencil s : {Stencil::three_point, Stencil::numerov}) {
      EigenOptions o;
      o.stencil = s;
      const auto bs = bound_states(v, 6, o);
      REQUIRE(bs.states.size() == 6);
      for (int n = 0; n < 6; ++n) {
        CHECK(bs.states[n].energy == doctest::Approx(2.0 * n + 1.0).epsilon(1e-7));
        CHECK(bs.states[n].nodes == n);
      }
      CHECK(bs.warnings.empty());
    }
  }

  TEST_CASE("eigenvectors are normalized and solve the difference equation") {
    const Grid g(-10.0, 10.0, 2001);
    const auto v = PotentialOnGrid::sample([](double x) { return x * x; }, g, Domain::real_line());
    const auto bs = bound_states(v, 3);
    for (const auto& s : bs.states) {
      std::vector<double> sq(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) sq[i] = s.psi[i] * s.psi[i];
      CHECK(integrate(g, sq) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(eigen_residual(v, s.psi.values(), s.energy) < 1e-3);
    }
  }

  TEST_CASE("infinite well with walls") {
    const double pi = std::numbers::pi;
    const Grid g(0.0, pi, 2001);
    const auto v = PotentialOnGrid::sample([](double) { return 0.0; }, g, Domain::interval(0.0, pi));
    const auto bs = bound_states(v, 4);
    for (int n = 0; n < 4; ++n) CHECK(bs.states[n].energy == doctest::Approx((n + 1.0) * (n + 1.0)).epsilon(1e-9));
  }

  TEST_CASE("finite well reports truncation at the continuum edge") {
    const Grid g(-20.0, 20.0, 4001);
    const auto v = PotentialOnGrid::sample([](double x) { return -2.0 / std::pow(std::cosh(x), 2); }, g, Domain::real_line());
    const auto bs = bound_states(v, 3);
    CHECK(bs.states.size() == 1);
    CHECK(bs.truncated);
    CHECK(bs.states[0].energy == doctest::Approx(-1.0).epsilon(1e-6));
  }

  TEST_CASE("hydrogen radial levels") {
    const auto bs = radial_bound_states([](double r) { return -2.0 / r; }, 0, 3, RadialGrid{80.0, 16001});
    REQUIRE(bs.states.size() == 3);
    for (int n = 0; n < 3; ++n) CHECK(bs.states[n].energy == doctest::Approx(-1.0 / ((n + 1.0) * (n + 1.0))).epsilon(1e-4));
    const auto p = radial_bound_states([](double r) { return -2.0 / r; }, 1, 1, RadialGrid{80.0, 16001});
    CHECK(p.states[0].energy == doctest::Approx(-0.25).epsilon(1e-4));
  }

  TEST_CASE("Bloch solve of the free particle") {
    const double L = 2.0 * std::numbers::pi;
    const auto v = PotentialOnGrid::sample([](double) { return 0.0; }, Grid(0.0, L, 801), Edge::open, Edge::open);
    const auto periodic = band_solve(v, 0.0, 5);
    const double expect0[] = {0.0, 1.0, 1.0, 4.0, 4.0};
    for (int i = 0; i < 5; ++i) CHECK(periodic[i].energy == doctest::Approx(expect0[i]).epsilon(1e-7).scale(1.0));
    const auto anti = band_solve(v, std::numbers::pi, 2);
    CHECK(anti[0].energy == doctest::Approx(0.25).epsilon(1e-7));
    CHECK(anti[1].energy == doctest::Approx(0.25).epsilon(1e-7));
  }

  TEST_CASE("energy-only Bloch solve agrees with the dense solve") {
    const auto v = PotentialOnGrid::sample([](double x) { return 1.5 * std::cos(x) + 0.3 * std::sin(2 * x); },
                                           Grid(0.0, 2.0 * std::numbers::pi, 201), Edge::open, Edge::open);
    for (double kL : {0.0, 0.4, 1.3, 2.9, std::numbers::pi}) {
      const auto dense = band_solve(v, kL, 4);
      const auto fast = band_energies(v, kL, 4);
      for (int i = 0; i < 4; ++i) CHECK(fast[i] == doctest::Approx(dense[i].energy).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("bad input") {
    const Grid g(-1.0, 1.0, 101);
    const auto v = PotentialOnGrid::sample([](double x) { return x * x; }, g, Domain::real_line());
    CHECK_THROWS_AS(bound_states(v, 0), std::invalid_argument);
  }
}
