#include <doctest.h>

#include <cmath>
#include <numbers>

#include "susy/scattering.hpp"
#include "susy/shape_invariance.hpp"
#include "susy/susy_core.hpp"

using namespace susy;

TEST_SUITE("scattering") {
  TEST_CASE("transmission through a sech^2 well of non-integer strength") {
    // |T|^2 = sinh^2(pi k) / (sinh^2(pi k) + cos^2(pi/2 sqrt(1 + 4 U0))) for V = -U0 sech^2 x.
    const double u0 = 1.5;
    const auto v = PotentialOnGrid::sample([u0](double x) { return -u0 / std::pow(std::cosh(x), 2); }, Grid(-30.0, 30.0, 12001),
                                           Domain::real_line());
    for (double k : {0.5, 1.0, 2.0}) {
      const double s = std::sinh(std::numbers::pi * k);
      const double c = std::cos(0.5 * std::numbers::pi * std::sqrt(1.0 + 4.0 * u0));
      const double t2 = s * s / (s * s + c * c);
      const auto amp = numeric_rt(v, k * k);
      CHECK(std::norm(amp.t) == doctest::Approx(t2).epsilon(1e-6));
      CHECK(amp.flux() == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("reflectionless wells") {
    for (int p = 1; p <= 3; ++p) {
      const double pp = p * (p + 1.0);
      const auto v = PotentialOnGrid::sample([pp](double x) { return -pp / std::pow(std::cosh(x), 2); }, Grid(-30.0, 30.0, 12001),
                                             Domain::real_line());
      for (double k : {0.5, 1.0, 2.0}) {
        const auto amp = numeric_rt(v, k * k);
        CHECK(std::abs(amp.r) < 1e-6);
        CHECK(std::abs(amp.t - reflectionless_T(p, k)) < 1e-5);
      }
    }
    CHECK(std::abs(reflectionless_T(2, 0.7)) == doctest::Approx(1.0));
  }

  TEST_CASE("partner amplitudes from the superpotential") {
    for (SipName name : {SipName::scarf_ii, SipName::rosen_morse_ii}) {
      const SipEntry e = sip_lookup(name);
      const Superpotential w = e.superpotential();
      const auto pair = partner_potentials(w);
      const Grid g(-30.0, 30.0, 12001);
      const auto v1 = pair.sample_v1(g);
      const auto v2 = pair.sample_v2(g);
      for (double k : {0.5, 1.0, 2.0}) {
        const double energy = std::max(v1.values.front(), v1.values.back()) + k * k;
        const auto a1 = numeric_rt(v1, energy);
        const auto mapped = partner_rt(numeric_rt(v2, energy), w);
        CHECK(std::abs(mapped.r - a1.r) < 1e-5);
        CHECK(std::abs(mapped.t - a1.t) < 1e-5);
        CHECK(a1.flux() == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("unequal asymptotes give k' != k") {
    const SipEntry e = sip_lookup(SipName::rosen_morse_ii);
    const auto v = partner_potentials(e.superpotential()).sample_v1(Grid(-30.0, 30.0, 12001));
    const double lo = std::min(v.values.front(), v.values.back());
    const double hi = std::max(v.values.front(), v.values.back());
    const auto amp = numeric_rt(v, hi + 1.0);
    CHECK(amp.k_prime != doctest::Approx(amp.k));
    CHECK(amp.flux() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(lo < hi);
  }

  TEST_CASE("energy below the asymptote is rejected") {
    const auto v = PotentialOnGrid::sample([](double x) { return -1.0 / std::pow(std::cosh(x), 2); }, Grid(-20.0, 20.0, 2001),
                                           Domain::real_line());
    CHECK_THROWS(numeric_rt(v, -0.5));
  }
}
