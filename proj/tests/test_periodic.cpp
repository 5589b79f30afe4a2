#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "susy/periodic.hpp"

using namespace susy;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> energies(const std::vector<BandEdge>& edges) {
  std::vector<double> e;
  for (const auto& b : edges) e.push_back(b.energy);
  return e;
}

}  // namespace

TEST_SUITE("periodic") {
  TEST_CASE("zero-mode criterion") {
    const auto cosw = PeriodicSuperpotential::make([](double x) { return std::cos(x); }, 2 * kPi);
    CHECK(cosw.phi_L == doctest::Approx(0.0).scale(1.0));
    CHECK(zero_mode_check(cosw) == ZeroMode::unbroken);
    const auto shifted = PeriodicSuperpotential::make([](double x) { return 1.0 + std::cos(x); }, 2 * kPi);
    CHECK(shifted.phi_L == doctest::Approx(2 * kPi));
    CHECK(zero_mode_check(shifted) == ZeroMode::broken);
    CHECK_THROWS_AS(self_isospectral_classify(shifted), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicSuperpotential::make([](double x) { return x; }, 1.0), std::invalid_argument);
  }

  TEST_CASE("self-isospectrality classification") {
    auto classify = [](RealFunction w) { return self_isospectral_classify(PeriodicSuperpotential::make(std::move(w), 2 * kPi)); };
    CHECK(classify([](double x) { return std::cos(x); }) == SelfIsospectral::half_period_antisymmetric);
    CHECK(classify([](double x) { return std::sin(3 * x); }) == SelfIsospectral::half_period_antisymmetric);
    CHECK(classify([](double x) { return std::cos(x) + 0.5 * std::cos(2 * x); }) == SelfIsospectral::even_reflection);
    CHECK(classify([](double x) { return std::sin(x) + 0.5 * std::sin(2 * x); }) == SelfIsospectral::neither);
  }

  TEST_CASE("V1 and V2 of the periodic superpotential") {
    const auto w = PeriodicSuperpotential::make([](double x) { return std::cos(x); }, 2 * kPi);
    CHECK(w.v1(0.3) == doctest::Approx(std::cos(0.3) * std::cos(0.3) + std::sin(0.3)).epsilon(1e-8));
    CHECK(w.v2(0.3) == doctest::Approx(std::cos(0.3) * std::cos(0.3) - std::sin(0.3)).epsilon(1e-8));
    const auto r = zero_mode_residuals(w);
    CHECK(r.v1 < 1e-6);
    CHECK(r.v2 < 1e-6);
  }

  TEST_CASE("closed-form Lame edges") {
    const double m = 0.5, d = std::sqrt(1 - m + m * m);
    CHECK(energies(lame_band_edges({1, m})) == std::vector<double>{m, 1.0, 1.0 + m});
    const auto a2 = energies(lame_band_edges({2, m}));
    const std::vector<double> expect{2 + 2 * m - 2 * d, 1 + m, 1 + 4 * m, 4 + m, 2 + 2 * m + 2 * d};
    REQUIRE(a2.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(a2[i] == doctest::Approx(expect[i]).epsilon(1e-14));
    CHECK_THROWS(lame_band_edges({3, m}));
    CHECK_THROWS(LameSpec{1, 1.2}.validate());
  }

  TEST_CASE("numeric Lame edges and the oscillation pattern") {
    for (int a : {1, 2, 3}) {
      for (double m : {0.3, 0.8}) {
        const auto edges = lame_numeric_band_edges({a, m});
        CHECK(edges.size() == static_cast<std::size_t>(2 * a + 1));
        CHECK(follows_oscillation_pattern(edges));
        CHECK(edges.back().which == BandBoundary::continuum_bottom);
        if (a <= 2) {
          const auto exact = lame_band_edges({a, m});
          for (std::size_t i = 0; i < exact.size(); ++i) CHECK(edges[i].energy == doctest::Approx(exact[i].energy).epsilon(1e-6));
        }
      }
    }
  }

  TEST_CASE("Hill discriminant separates bands from gaps") {
    const LameSpec s{1, 0.5};
    const auto v = lame_function(s);
    CHECK(std::abs(hill_discriminant(v, s.period(), 0.75)) < 2.0);
    CHECK(std::abs(hill_discriminant(v, s.period(), 1.25)) > 2.0);
    CHECK(std::abs(hill_discriminant(v, s.period(), 0.2)) > 2.0);
    CHECK(std::abs(hill_discriminant(v, s.period(), 3.0)) < 2.0);
    CHECK(std::abs(hill_discriminant(v, s.period(), 0.5)) == doctest::Approx(2.0).epsilon(1e-6));
  }

  TEST_CASE("a = 1 partner is the half-period translate") {
    const auto p = lame_partner({1, 0.5});
    CHECK(p.shift == doctest::Approx(0.5));
    const auto scan = shift_scan(p.v1, p.v2);
    CHECK(scan.related);
    CHECK(self_isospectral_classify(p.w) == SelfIsospectral::half_period_antisymmetric);
    const auto a = apply_periodic_A(p.w, p.psi0, 1);
    double worst = 0.0;
    for (double t : a) worst = std::max(worst, std::abs(t));
    CHECK(worst < 1e-6);
  }

  TEST_CASE("a = 2 partner is isospectral but not a translate") {
    const LameSpec s{2, 0.5};
    const auto p = lame_partner(s);
    CHECK_FALSE(shift_scan(p.v1, p.v2).related);
    auto e2 = energies(numeric_band_edges(p.v2, 5));
    const auto e1 = energies(lame_band_edges(s));
    for (int i = 0; i < 5; ++i) CHECK(e2[i] + p.shift == doctest::Approx(e1[i]).epsilon(1e-6));
  }

  TEST_CASE("dispersion starts at the lowest edge") {
    const LameSpec s{1, 0.5};
    const auto disp = dispersion(lame_potential(s), 2, 11);
    REQUIRE(disp.size() == 11);
    CHECK(disp.front().kL == doctest::Approx(0.0));
    CHECK(disp.back().kL == doctest::Approx(kPi));
    CHECK(disp.front().energies[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(disp.back().energies[0] == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t i = 1; i < disp.size(); ++i) CHECK(disp[i].energies[0] >= disp[i - 1].energies[0] - 1e-9);
  }

  TEST_CASE("Lame potential approaches 2 tanh^2 as m -> 1") {
    const auto v = lame_function({1, 1.0 - 1e-10});
    for (double x : {0.2, 1.0, 2.5}) CHECK(v(x) == doctest::Approx(2.0 * std::pow(std::tanh(x), 2)).epsilon(1e-6));
  }
}
