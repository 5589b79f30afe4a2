#include <doctest.h>

#include <cmath>
#include <numbers>

#include "susy/shape_invariance.hpp"
#include "susy/swkb.hpp"

using namespace susy;

namespace {

Superpotential linear_w(Units units = {}) {
  Superpotential::Definition d;
  d.w = [](double x) { return x; };
  d.dw = [](double) { return 1.0; };
  d.units = units;
  return Superpotential(d);
}

}  // namespace

TEST_SUITE("swkb") {
  TEST_CASE("turning points and action for W = x") {
    const auto q = QuantizationProblem::swkb(linear_w());
    const auto [a, b] = turning_points(q, 4.0);
    CHECK(a == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(b == doctest::Approx(2.0).epsilon(1e-10));
    // Half-disc area: int sqrt(E - x^2) dx = pi E / 2.
    CHECK(action_integral(q, 3.0) == doctest::Approx(1.5 * std::numbers::pi).epsilon(1e-10));
  }

  TEST_CASE("quantization targets") {
    const auto v1 = QuantizationProblem::swkb(linear_w());
    const auto v2 = QuantizationProblem::swkb(linear_w(), QuantizationMode::swkb_v2);
    const auto w = QuantizationProblem::wkb([](double x) { return x * x; }, Domain::real_line());
    CHECK(v1.target(2) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(v2.target(2) == doctest::Approx(3.0 * std::numbers::pi));
    CHECK(w.target(2) == doctest::Approx(2.5 * std::numbers::pi));
  }

  TEST_CASE("oscillator levels from SWKB and WKB") {
    const auto s = QuantizationProblem::swkb(linear_w());
    const auto w = QuantizationProblem::wkb([](double x) { return x * x; }, Domain::real_line());
    for (int n = 0; n <= 4; ++n) {
      CHECK(quantize(s, n) == doctest::Approx(2.0 * n).epsilon(1e-9).scale(1.0));
      CHECK(quantize(w, n) == doctest::Approx(2.0 * n + 1.0).epsilon(1e-9));
    }
    const auto s2 = QuantizationProblem::swkb(linear_w(), QuantizationMode::swkb_v2);
    CHECK(quantize(s2, 0) == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("mass enters through sqrt(2m)") {
    // hbar = 1, 2m = 4: c = 1/2 and E_n = 2 c n = n.
    const auto s = QuantizationProblem::swkb(linear_w(Units{1.0, 4.0}));
    for (int n = 1; n <= 3; ++n) CHECK(quantize(s, n) == doctest::Approx(n).epsilon(1e-9));
  }

  TEST_CASE("levels beyond the last bound state are unreachable") {
    const SipEntry e = sip_lookup(SipName::scarf_ii, {{"A", 2.0}, {"B", 0.0}});
    const auto q = QuantizationProblem::swkb(e.superpotential());
    CHECK(quantize(q, 1) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK_THROWS_AS(quantize(q, 2), NumericError);
  }

  TEST_CASE("exactness audit over the catalog") {
    std::vector<SipEntry> all;
    for (const auto& m : sip_catalog()) all.push_back(sip_lookup(m.name));
    const auto rows = exactness_audit(all, 3);
    int wkb_off = 0;
    for (const auto& r : rows) {
      CHECK(r.swkb_pass);
      CHECK(r.swkb_error <= 1e-7);
      if (r.n == 1 && r.wkb_error && *r.wkb_error > 1e-3) ++wkb_off;
      if ((r.entry == "Shifted oscillator" || r.entry == "Morse") && r.wkb_error) CHECK(*r.wkb_error <= 1e-7);
    }
    CHECK(wkb_off >= 3);
  }

  TEST_CASE("subleading term is energy independent for W = x") {
    // (1/2) int dx / sqrt(E - x^2) over the classical region = pi / 2.
    const auto q = QuantizationProblem::swkb(linear_w());
    for (double e : {0.5, 4.0, 9.0}) CHECK(swkb_subleading_term(q, e) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));
  }
}
