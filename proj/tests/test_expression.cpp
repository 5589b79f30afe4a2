#include <doctest.h>

#include <cmath>
#include <numbers>

#include "susy/expression.hpp"
#include "susy/numerics.hpp"

using namespace susy;

TEST_SUITE("expression") {
  TEST_CASE("arithmetic and precedence") {
    CHECK(expr::evaluate_constant("1 + 2*3") == doctest::Approx(7.0));
    CHECK(expr::evaluate_constant("2^3^2") == doctest::Approx(512.0));
    CHECK(expr::evaluate_constant("-2^2") == doctest::Approx(-4.0));
    CHECK(expr::evaluate_constant("(1 + 2) * 3 / 4") == doctest::Approx(2.25));
    CHECK(expr::evaluate_constant("pi/2") == doctest::Approx(std::numbers::pi / 2));
    CHECK(expr::evaluate_constant("1.5e-3 * 2") == doctest::Approx(3e-3));
  }

  TEST_CASE("functions of x") {
    const auto f = expr::parse("A*tanh(alpha*x) + B*sech(alpha*x)", {{"A", 2.0}, {"B", 0.5}, {"alpha", 1.5}});
    const double x = 0.4;
    CHECK(f(x) == doctest::Approx(2.0 * std::tanh(1.5 * x) + 0.5 / std::cosh(1.5 * x)));
    CHECK(f.depends_on_x());
    CHECK(expr::parse("cot(x) + cosec(x) + csc(x) + ln(x) + log(x)")(1.0) ==
          doctest::Approx(1.0 / std::tan(1.0) + 2.0 / std::sin(1.0)));
    CHECK(expr::parse("sn(x, 0.5)")(0.7) == doctest::Approx(jacobi_sn_cn_dn(0.7, 0.5).sn));
  }

  TEST_CASE("symbolic derivative agrees with finite differences") {
    const char* cases[] = {"x^3 - 2*x", "sin(x)*exp(-x^2)", "tanh(2*x) + sech(x)^2", "sqrt(1 + x^2)", "ln(2 + cos(x))",
                           "coth(x + 3)", "x^x", "dn(x, 0.3) * cn(x, 0.3)", "abs(x - 0.1)"};
    for (const char* text : cases) {
      const auto f = expr::parse(text);
      const auto df = f.derivative();
      for (double x : {0.35, 0.9, 1.7}) CHECK(df(x) == doctest::Approx(derivative_at([&](double t) { return f(t); }, x)).epsilon(1e-7));
    }
  }

  TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(expr::parse("sin("), expr::ParseError);
    CHECK_THROWS_AS(expr::parse("foo(x)"), expr::ParseError);
    CHECK_THROWS_AS(expr::parse("2 * y"), expr::ParseError);
    CHECK_THROWS_AS(expr::parse("sn(x, x)"), expr::ParseError);
    CHECK_THROWS_AS(expr::evaluate_constant("x + 1"), expr::ParseError);
    try {
      expr::parse("1 + * 2");
    } catch (const expr::ParseError& e) {
      CHECK(e.position() == 4);
    }
  }

  TEST_CASE("constant folding keeps parameters out of the tree") {
    const auto f = expr::parse("A*x", {{"A", 3.0}});
    CHECK(f.str().find('A') == std::string::npos);
  }
}
