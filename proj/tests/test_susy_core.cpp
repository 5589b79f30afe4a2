#include <doctest.h>

#include <cmath>
#include <numbers>

#include "susy/susy_core.hpp"

using namespace susy;

namespace {

Superpotential make_w(RealFunction w, RealFunction dw, std::optional<double> lo = {}, std::optional<double> hi = {}) {
  Superpotential::Definition d;
  d.w = std::move(w);
  d.dw = std::move(dw);
  d.w_minus = lo;
  d.w_plus = hi;
  return Superpotential(std::move(d));
}

}  // namespace

TEST_SUITE("susy_core") {
  TEST_CASE("partner potentials of the oscillator superpotential") {
    const auto w = make_w([](double x) { return x; }, [](double) { return 1.0; });
    const auto pair = partner_potentials(w);
    for (double x : {-2.0, 0.0, 1.5}) {
      CHECK(pair.v1(x) == doctest::Approx(x * x - 1.0));
      CHECK(pair.v2(x) == doctest::Approx(x * x + 1.0));
    }
  }

  TEST_CASE("units scale the derivative term") {
    Superpotential::Definition d;
    d.w = [](double x) { return x; };
    d.dw = [](double) { return 1.0; };
    d.units = Units{2.0, 1.0};
    const auto pair = partner_potentials(Superpotential(d));
    CHECK(pair.v1(1.0) == doctest::Approx(1.0 - 2.0));
    CHECK(pair.v2(1.0) == doctest::Approx(1.0 + 2.0));
  }

  TEST_CASE("ground state from W is the normalized Gaussian") {
    const auto w = make_w([](double x) { return x; }, [](double) { return 1.0; });
    const Grid g(-10.0, 10.0, 2001);
    const auto psi = ground_state_from_w(w, g);
    const double c = std::pow(std::numbers::pi, -0.25);
    for (std::size_t i = 0; i < g.size(); i += 100) CHECK(psi[i] == doctest::Approx(c * std::exp(-g[i] * g[i] / 2)).epsilon(1e-8));
  }

  TEST_CASE("W recovered from a sampled ground state") {
    const Grid g(-6.0, 6.0, 2401);
    const auto psi = SampledFunction::from(g, [](double x) { return std::exp(-x * x / 2); });
    const auto w = w_from_ground_state(psi);
    for (double x : {-3.0, -0.5, 0.0, 2.0}) CHECK(w(x) == doctest::Approx(x).epsilon(1e-5));
  }

  TEST_CASE("A annihilates the ground state and maps excited states") {
    const auto w = make_w([](double x) { return x; }, [](double) { return 1.0; });
    const Grid g(-10.0, 10.0, 4001);
    const auto psi0 = ground_state_from_w(w, g);
    const auto a0 = apply_A(w, psi0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(a0[i]));
    CHECK(worst < 1e-6);
    // (d/dx + x) x e^{-x^2/2} = e^{-x^2/2}; (-d/dx + x) e^{-x^2/2} = 2 x e^{-x^2/2}.
    const auto psi1 = SampledFunction::from(g, [](double x) { return x * std::exp(-x * x / 2); });
    const auto a1 = apply_A(w, psi1);
    for (double x : {-1.0, 0.5}) {
      const std::size_t i = static_cast<std::size_t>(std::lround((x + 10.0) / g.spacing()));
      CHECK(a1[i] == doctest::Approx(std::exp(-g[i] * g[i] / 2)).epsilon(1e-5));
    }
    const auto back = apply_Adag(w, a1);
    for (double x : {-1.0, 0.5}) {
      const std::size_t i = static_cast<std::size_t>(std::lround((x + 10.0) / g.spacing()));
      CHECK(back[i] == doctest::Approx(2.0 * psi1[i]).epsilon(1e-4));
    }
  }

  TEST_CASE("operator algebra") {
    const auto w = make_w([](double x) { return std::tanh(x); }, [](double x) { return 1.0 / std::pow(std::cosh(x), 2); });
    const auto rep = algebra_check(w, Grid(-8.0, 8.0, 600));
    CHECK(rep.q_squared < 1e-12);
    CHECK(rep.anticommutator < 1e-10);
    CHECK(rep.commutator < 1e-8);
  }

  TEST_CASE("SUSY breaking detection") {
    const auto up = detect_breaking(make_w([](double x) { return x; }, [](double) { return 1.0; }));
    CHECK_FALSE(up.broken);
    CHECK(up.ground_state_side == GroundSide::v1);
    const auto down = detect_breaking(make_w([](double x) { return -x; }, [](double) { return -1.0; }));
    CHECK_FALSE(down.broken);
    CHECK(down.ground_state_side == GroundSide::v2);
    const auto broken = detect_breaking(make_w([](double x) { return x * x + 1.0; }, [](double x) { return 2.0 * x; }));
    CHECK(broken.broken);
    CHECK(broken.ground_state_side == GroundSide::neither);
  }
}
