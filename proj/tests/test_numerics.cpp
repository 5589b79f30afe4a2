#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "susy/numerics.hpp"

using namespace susy;
using boost::math::quadrature::gauss_kronrod;

TEST_SUITE("numerics") {
  TEST_CASE("grid spacing and coarsening") {
    const Grid g(-1.0, 3.0, 401);
    CHECK(g.spacing() == doctest::Approx(0.01));
    CHECK(g[400] == 3.0);
    const Grid c = g.coarsened();
    CHECK(c.size() == 201);
    CHECK(c.spacing() == doctest::Approx(0.02));
    CHECK(c.refined() == g);
    CHECK_THROWS(Grid(1.0, 1.0, 10));
  }

  TEST_CASE("integration of smooth functions") {
    const Grid g(0.0, std::numbers::pi, 2001);
    CHECK(integrate(SampledFunction::from(g, [](double x) { return std::sin(x); })) == doctest::Approx(2.0).epsilon(1e-12));
    // Even point count exercises the odd-interval tail.
    const Grid e(0.0, 1.0, 1000);
    CHECK(integrate(SampledFunction::from(e, [](double x) { return std::exp(x); })) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-11));
  }

  TEST_CASE("cumulative integral and derivative invert each other") {
    const Grid g(0.0, 4.0, 801);
    const auto c = SampledFunction::from(g, [](double x) { return std::cos(x); });
    const auto s = cumulative_integral(g, c.values());
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(s[i] - std::sin(g[i])));
    CHECK(worst < 1e-8);
    const auto d = derivative(g, s);
    worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(d[i] - std::cos(g[i])));
    CHECK(worst < 2e-5);  // second order at h = 5e-3
    CHECK(derivative_at([](double x) { return x * x * x; }, 2.0) == doctest::Approx(12.0).epsilon(1e-9));
  }

  TEST_CASE("interpolation") {
    const Grid g(0.0, 1.0, 101);
    const auto f = SampledFunction::from(g, [](double x) { return x * x; });
    CHECK(f.interpolate(0.505) == doctest::Approx(0.505 * 0.505).epsilon(1e-6));
  }

  TEST_CASE("erfc against quadrature") {
    auto oracle = [](double x) {
      const double tail = gauss_kronrod<double, 61>::integrate([](double t) { return std::exp(-t * t); }, x, x + 12.0, 10, 1e-15);
      return 2.0 / std::sqrt(std::numbers::pi) * tail;
    };
    for (double x : {0.0, 0.5, 1.3, 2.7, 4.0}) CHECK(susy::erfc(x) == doctest::Approx(oracle(x)).epsilon(1e-12));
    CHECK(susy::erfc(-1.0) == doctest::Approx(2.0 - oracle(1.0)).epsilon(1e-12));
    CHECK(susy::erfc(0.5) == doctest::Approx(0.4795001221869535).epsilon(1e-14));
  }

  TEST_CASE("complete elliptic integral against quadrature") {
    for (double m : {0.0, 0.3, 0.5, 0.8, 0.99}) {
      const double oracle = gauss_kronrod<double, 61>::integrate(
          [m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); }, 0.0, std::numbers::pi / 2, 10, 1e-15);
      CHECK(elliptic_K(m) == doctest::Approx(oracle).epsilon(1e-13));
    }
    CHECK(elliptic_K(0.5) == doctest::Approx(1.854074677301372).epsilon(1e-14));
    CHECK_THROWS(elliptic_K(1.0));
  }

  TEST_CASE("Jacobi functions: identities, derivative, quarter period") {
    for (double m : {0.1, 0.5, 0.9}) {
      const double K = elliptic_K(m);
      for (double x : {-3.1, -0.4, 0.0, 0.7, K, 2.5, 3.0 * K + 0.2}) {
        const auto j = jacobi_sn_cn_dn(x, m);
        CHECK(j.sn * j.sn + j.cn * j.cn == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(j.dn * j.dn + m * j.sn * j.sn == doctest::Approx(1.0).epsilon(1e-14));
        const double h = 1e-5;
        const double dsn = (jacobi_sn_cn_dn(x + h, m).sn - jacobi_sn_cn_dn(x - h, m).sn) / (2 * h);
        CHECK(dsn == doctest::Approx(j.cn * j.dn).epsilon(1e-8));
      }
      CHECK(jacobi_sn_cn_dn(K, m).sn == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(jacobi_sn_cn_dn(K, m).dn == doctest::Approx(std::sqrt(1.0 - m)).epsilon(1e-13));
    }
    CHECK(jacobi_sn_cn_dn(0.8, 0.0).sn == doctest::Approx(std::sin(0.8)));
    CHECK(jacobi_sn_cn_dn(0.8, 1.0).sn == doctest::Approx(std::tanh(0.8)));
    CHECK(jacobi_sn_cn_dn(0.8, 1.0 - 1e-12).sn == doctest::Approx(std::tanh(0.8)).epsilon(1e-9));
  }

  TEST_CASE("root bracketing and sign changes") {
    const double r = bisect_root([](double x) { return std::cos(x); }, Bracket::of([](double x) { return std::cos(x); }, 1.0, 2.0));
    CHECK(r == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK_THROWS(Bracket::of([](double x) { return x * x + 1.0; }, -1.0, 1.0));
    const std::vector<double> v{0.0, 1.0, -1.0, 1e-12, 2.0, -3.0, 0.0};
    CHECK(count_sign_changes(v) == 3);
  }
}
