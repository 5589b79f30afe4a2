// Table of shape-invariant superpotentials (hbar = 2m = 1).
#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "susy/shape_invariance.hpp"

namespace susy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double P(const Params& p, const char* key) { return p.at(key); }

Params with(const Params& p, const char* key, double value) {
  Params q = p;
  q[key] = value;
  return q;
}

double sech(double u) { return 1.0 / std::cosh(u); }
double log_cosh(double u) {
  const double a = std::abs(u);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}
double log_sinh(double u) { return u + std::log1p(-std::exp(-2.0 * u)) - std::numbers::ln2; }
double coth(double u) { return 1.0 / std::tanh(u); }
double cosech(double u) { return 1.0 / std::sinh(u); }
double gd(double u) { return 2.0 * std::atan(std::tanh(0.5 * u)); }

std::optional<std::string> positive(const Params& p, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (!(P(p, k) > 0.0)) return std::string(k) + " > 0";
  return std::nullopt;
}

std::optional<std::string> nonnegative(const Params& p, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (!(P(p, k) >= 0.0)) return std::string(k) + " >= 0";
  return std::nullopt;
}

// Shifted oscillator: W = omega x / 2 - b.
SipModel shifted_oscillator() {
  SipModel m;
  m.name = SipName::shifted_oscillator;
  m.key = "shifted_oscillator";
  m.label = "Shifted oscillator";
  m.parameters = {"omega", "b"};
  m.defaults = {{"omega", 2.0}, {"b", 0.0}};
  m.w = [](double x, const Params& p) { return 0.5 * P(p, "omega") * x - P(p, "b"); };
  m.dw = [](double, const Params& p) { return 0.5 * P(p, "omega"); };
  m.integral = [](double x, const Params& p) { return 0.25 * P(p, "omega") * x * x - P(p, "b") * x; };
  m.v1 = [](double x, const Params& p) {
    const double w = P(p, "omega"), s = x - 2.0 * P(p, "b") / w;
    return 0.25 * w * w * s * s - 0.5 * w;
  };
  m.step = [](const Params& p) { return p; };
  m.remainder = [](const Params& p) { return P(p, "omega"); };
  m.energy = [](int n, const Params& p) { return n * P(p, "omega"); };
  m.domain = [](const Params&) { return Domain::real_line(); };
  m.violation = [](const Params& p) { return positive(p, {"omega"}); };
  m.normalizable = [](const Params&) { return true; };
  m.confining = true;
  return m;
}

// Three-dimensional oscillator: W = omega r / 2 - (l+1)/r.
SipModel three_d_oscillator() {
  SipModel m;
  m.name = SipName::three_d_oscillator;
  m.key = "three_d_oscillator";
  m.label = "3-D oscillator";
  m.parameters = {"omega", "l"};
  m.defaults = {{"omega", 2.0}, {"l", 1.0}};
  m.w = [](double r, const Params& p) { return 0.5 * P(p, "omega") * r - (P(p, "l") + 1.0) / r; };
  m.dw = [](double r, const Params& p) { return 0.5 * P(p, "omega") + (P(p, "l") + 1.0) / (r * r); };
  m.integral = [](double r, const Params& p) {
    return 0.25 * P(p, "omega") * r * r - (P(p, "l") + 1.0) * std::log(r);
  };
  m.v1 = [](double r, const Params& p) {
    const double w = P(p, "omega"), l = P(p, "l");
    return 0.25 * w * w * r * r + l * (l + 1.0) / (r * r) - (l + 1.5) * w;
  };
  m.step = [](const Params& p) { return with(p, "l", P(p, "l") + 1.0); };
  m.remainder = [](const Params& p) { return 2.0 * P(p, "omega"); };
  m.energy = [](int n, const Params& p) { return 2.0 * n * P(p, "omega"); };
  m.domain = [](const Params&) { return Domain::half_line(); };
  m.violation = [](const Params& p) -> std::optional<std::string> {
    if (auto v = positive(p, {"omega"})) return v;
    return nonnegative(p, {"l"});
  };
  m.normalizable = [](const Params&) { return true; };
  m.confining = true;
  return m;
}

// Coulomb: W = e2/(2(l+1)) - (l+1)/r.
SipModel coulomb() {
  SipModel m;
  m.name = SipName::coulomb;
  m.key = "coulomb";
  m.label = "Coulomb";
  m.parameters = {"e2", "l"};
  m.defaults = {{"e2", 2.0}, {"l", 0.0}};
  m.w = [](double r, const Params& p) {
    const double l1 = P(p, "l") + 1.0;
    return P(p, "e2") / (2.0 * l1) - l1 / r;
  };
  m.dw = [](double r, const Params& p) { return (P(p, "l") + 1.0) / (r * r); };
  m.integral = [](double r, const Params& p) {
    const double l1 = P(p, "l") + 1.0;
    return P(p, "e2") * r / (2.0 * l1) - l1 * std::log(r);
  };
  m.v1 = [](double r, const Params& p) {
    const double e2 = P(p, "e2"), l = P(p, "l");
    return -e2 / r + l * (l + 1.0) / (r * r) + e2 * e2 / (4.0 * (l + 1.0) * (l + 1.0));
  };
  m.step = [](const Params& p) { return with(p, "l", P(p, "l") + 1.0); };
  m.remainder = [](const Params& p) {
    const double e2 = P(p, "e2"), l = P(p, "l");
    return 0.25 * e2 * e2 * (1.0 / ((l + 1.0) * (l + 1.0)) - 1.0 / ((l + 2.0) * (l + 2.0)));
  };
  m.energy = [](int n, const Params& p) {
    const double e2 = P(p, "e2"), l = P(p, "l");
    return 0.25 * e2 * e2 * (1.0 / ((l + 1.0) * (l + 1.0)) - 1.0 / ((n + l + 1.0) * (n + l + 1.0)));
  };
  m.domain = [](const Params&) { return Domain::half_line(); };
  m.violation = [](const Params& p) -> std::optional<std::string> {
    if (auto v = positive(p, {"e2"})) return v;
    return nonnegative(p, {"l"});
  };
  m.normalizable = [](const Params&) { return true; };
  m.confining = true;
  return m;
}

// Morse: W = A - B exp(-alpha (x + x0)).
SipModel morse() {
  SipModel m;
  m.name = SipName::morse;
  m.key = "morse";
  m.label = "Morse";
  m.parameters = {"A", "B", "alpha", "x0"};
  m.defaults = {{"A", 6.0}, {"B", 1.0}, {"alpha", 1.0}, {"x0", 0.0}};
  m.w = [](double x, const Params& p) { return P(p, "A") - P(p, "B") * std::exp(-P(p, "alpha") * (x + P(p, "x0"))); };
  m.dw = [](double x, const Params& p) {
    const double a = P(p, "alpha");
    return a * P(p, "B") * std::exp(-a * (x + P(p, "x0")));
  };
  m.integral = [](double x, const Params& p) {
    const double a = P(p, "alpha");
    return P(p, "A") * x + P(p, "B") / a * std::exp(-a * (x + P(p, "x0")));
  };
  m.v1 = [](double x, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), a = P(p, "alpha"), e = std::exp(-a * (x + P(p, "x0")));
    return A * A + B * B * e * e - B * (2.0 * A + a) * e;
  };
  m.step = [](const Params& p) { return with(p, "A", P(p, "A") - P(p, "alpha")); };
  m.remainder = [](const Params& p) {
    const double A = P(p, "A"), a = P(p, "alpha");
    return A * A - (A - a) * (A - a);
  };
  m.energy = [](int n, const Params& p) {
    const double A = P(p, "A"), a = P(p, "alpha");
    return A * A - (A - n * a) * (A - n * a);
  };
  m.domain = [](const Params&) { return Domain::real_line(); };
  m.violation = [](const Params& p) { return positive(p, {"A", "B", "alpha"}); };
  m.normalizable = [](const Params& p) { return P(p, "A") > 0.0; };
  m.confining = true;
  return m;
}

// Scarf II (hyperbolic): W = A tanh(alpha x) + B sech(alpha x).
SipModel scarf_ii() {
  SipModel m;
  m.name = SipName::scarf_ii;
  m.key = "scarf_ii";
  m.label = "Scarf II";
  m.parameters = {"A", "B", "alpha", "x0"};
  m.defaults = {{"A", 6.0}, {"B", 1.0}, {"alpha", 1.0}, {"x0", 0.0}};
  m.w = [](double x, const Params& p) {
    const double u = P(p, "alpha") * (x + P(p, "x0"));
    return P(p, "A") * std::tanh(u) + P(p, "B") * sech(u);
  };
  m.dw = [](double x, const Params& p) {
    const double a = P(p, "alpha"), u = a * (x + P(p, "x0")), s = sech(u);
    return a * (P(p, "A") * s * s - P(p, "B") * s * std::tanh(u));
  };
  m.integral = [](double x, const Params& p) {
    const double a = P(p, "alpha"), u = a * (x + P(p, "x0"));
    return (P(p, "A") * log_cosh(u) + P(p, "B") * gd(u)) / a;
  };
  m.v1 = [](double x, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), a = P(p, "alpha"), u = a * (x + P(p, "x0")), s = sech(u);
    return A * A + (B * B - A * (A + a)) * s * s + B * (2.0 * A + a) * s * std::tanh(u);
  };
  m.step = [](const Params& p) { return with(p, "A", P(p, "A") - P(p, "alpha")); };
  m.remainder = [](const Params& p) {
    const double A = P(p, "A"), a = P(p, "alpha");
    return A * A - (A - a) * (A - a);
  };
  m.energy = [](int n, const Params& p) {
    const double A = P(p, "A"), a = P(p, "alpha");
    return A * A - (A - n * a) * (A - n * a);
  };
  m.domain = [](const Params&) { return Domain::real_line(); };
  m.violation = [](const Params& p) -> std::optional<std::string> {
    if (auto v = positive(p, {"A", "alpha"})) return v;
    return nonnegative(p, {"B"});
  };
  m.normalizable = [](const Params& p) { return P(p, "A") > 0.0; };
  m.confining = false;
  return m;
}

// Rosen-Morse II (hyperbolic): W = A tanh(alpha x) + B/A.
SipModel rosen_morse_ii() {
  SipModel m;
  m.name = SipName::rosen_morse_ii;
  m.key = "rosen_morse_ii";
  m.label = "Rosen-Morse II";
  m.parameters = {"A", "B", "alpha", "x0"};
  m.defaults = {{"A", 8.0}, {"B", 4.0}, {"alpha", 1.0}, {"x0", 0.0}};
  m.w = [](double x, const Params& p) {
    const double A = P(p, "A");
    return A * std::tanh(P(p, "alpha") * (x + P(p, "x0"))) + P(p, "B") / A;
  };
  m.dw = [](double x, const Params& p) {
    const double a = P(p, "alpha"), s = sech(a * (x + P(p, "x0")));
    return P(p, "A") * a * s * s;
  };
  m.integral = [](double x, const Params& p) {
    const double A = P(p, "A"), a = P(p, "alpha");
    return A / a * log_cosh(a * (x + P(p, "x0"))) + P(p, "B") / A * x;
  };
  m.v1 = [](double x, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), a = P(p, "alpha"), u = a * (x + P(p, "x0")), s = sech(u);
    return A * A + B * B / (A * A) - A * (A + a) * s * s + 2.0 * B * std::tanh(u);
  };
  m.step = [](const Params& p) { return with(p, "A", P(p, "A") - P(p, "alpha")); };
  m.remainder = [](const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), a = P(p, "alpha"), A2 = A - a;
    return A * A - A2 * A2 + B * B / (A * A) - B * B / (A2 * A2);
  };
  m.energy = [](int n, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), An = A - n * P(p, "alpha");
    return A * A - An * An + B * B / (A * A) - B * B / (An * An);
  };
  m.domain = [](const Params&) { return Domain::real_line(); };
  m.violation = [](const Params& p) -> std::optional<std::string> {
    if (auto v = positive(p, {"A", "alpha"})) return v;
    if (auto v = nonnegative(p, {"B"})) return v;
    if (!(P(p, "B") < P(p, "A") * P(p, "A"))) return std::string("B < A^2");
    return std::nullopt;
  };
  m.normalizable = [](const Params& p) {
    const double A = P(p, "A");
    return A > 0.0 && std::abs(P(p, "B")) < A * A;
  };
  m.confining = false;
  return m;
}

// Eckart: W = -A coth(alpha r) + B/A on the half-line.
SipModel eckart() {
  SipModel m;
  m.name = SipName::eckart;
  m.key = "eckart";
  m.label = "Eckart";
  m.parameters = {"A", "B", "alpha"};
  m.defaults = {{"A", 2.0}, {"B", 30.0}, {"alpha", 1.0}};
  m.w = [](double r, const Params& p) {
    const double A = P(p, "A");
    return -A * coth(P(p, "alpha") * r) + P(p, "B") / A;
  };
  m.dw = [](double r, const Params& p) {
    const double a = P(p, "alpha"), c = cosech(a * r);
    return P(p, "A") * a * c * c;
  };
  m.integral = [](double r, const Params& p) {
    const double A = P(p, "A"), a = P(p, "alpha");
    return -A / a * log_sinh(a * r) + P(p, "B") / A * r;
  };
  m.v1 = [](double r, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), a = P(p, "alpha"), c = cosech(a * r);
    return A * A + B * B / (A * A) - 2.0 * B * coth(a * r) + A * (A - a) * c * c;
  };
  m.step = [](const Params& p) { return with(p, "A", P(p, "A") + P(p, "alpha")); };
  m.remainder = [](const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), A2 = A + P(p, "alpha");
    return A * A - A2 * A2 + B * B / (A * A) - B * B / (A2 * A2);
  };
  m.energy = [](int n, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), An = A + n * P(p, "alpha");
    return A * A - An * An + B * B / (A * A) - B * B / (An * An);
  };
  m.domain = [](const Params&) { return Domain::half_line(); };
  m.violation = [](const Params& p) -> std::optional<std::string> {
    if (auto v = positive(p, {"A", "alpha"})) return v;
    if (!(P(p, "B") > P(p, "A") * P(p, "A"))) return std::string("B > A^2");
    return std::nullopt;
  };
  m.normalizable = [](const Params& p) { return P(p, "A") > 0.0 && P(p, "B") > P(p, "A") * P(p, "A"); };
  m.confining = true;
  return m;
}

// Scarf I (trigonometric): W = A tan(alpha x) - B sec(alpha x), |alpha x| < pi/2.
SipModel scarf_i() {
  SipModel m;
  m.name = SipName::scarf_i;
  m.key = "scarf_i";
  m.label = "Scarf I";
  m.parameters = {"A", "B", "alpha"};
  m.defaults = {{"A", 3.0}, {"B", 1.0}, {"alpha", 1.0}};
  m.w = [](double x, const Params& p) {
    const double u = P(p, "alpha") * x;
    return P(p, "A") * std::tan(u) - P(p, "B") / std::cos(u);
  };
  m.dw = [](double x, const Params& p) {
    const double a = P(p, "alpha"), u = a * x, s = 1.0 / std::cos(u);
    return a * (P(p, "A") * s * s - P(p, "B") * s * std::tan(u));
  };
  m.integral = [](double x, const Params& p) {
    const double a = P(p, "alpha"), u = a * x;
    // ln(sec u + tan u) = ln((1 + sin u)/cos u)
    return (-P(p, "A") * std::log(std::cos(u)) - P(p, "B") * std::log((1.0 + std::sin(u)) / std::cos(u))) / a;
  };
  m.v1 = [](double x, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), a = P(p, "alpha"), u = a * x, s = 1.0 / std::cos(u);
    return -A * A + (A * A + B * B - A * a) * s * s - B * (2.0 * A - a) * std::tan(u) * s;
  };
  m.step = [](const Params& p) { return with(p, "A", P(p, "A") + P(p, "alpha")); };
  m.remainder = [](const Params& p) {
    const double A = P(p, "A"), A2 = A + P(p, "alpha");
    return A2 * A2 - A * A;
  };
  m.energy = [](int n, const Params& p) {
    const double A = P(p, "A"), An = A + n * P(p, "alpha");
    return An * An - A * A;
  };
  m.domain = [](const Params& p) {
    const double half = 0.5 * std::numbers::pi / P(p, "alpha");
    return Domain::interval(-half, half);
  };
  m.violation = [](const Params& p) -> std::optional<std::string> {
    if (auto v = positive(p, {"A", "alpha"})) return v;
    if (auto v = nonnegative(p, {"B"})) return v;
    if (!(P(p, "A") > P(p, "B"))) return std::string("A > B");
    return std::nullopt;
  };
  m.normalizable = [](const Params& p) { return P(p, "A") > std::abs(P(p, "B")); };
  m.confining = true;
  return m;
}

// Poschl-Teller (generalized): W = A coth(alpha r) - B cosech(alpha r), A < B.
SipModel poschl_teller() {
  SipModel m;
  m.name = SipName::poschl_teller;
  m.key = "poschl_teller";
  m.label = "Poschl-Teller";
  m.parameters = {"A", "B", "alpha"};
  m.defaults = {{"A", 6.0}, {"B", 8.0}, {"alpha", 1.0}};
  m.w = [](double r, const Params& p) {
    const double u = P(p, "alpha") * r;
    return P(p, "A") * coth(u) - P(p, "B") * cosech(u);
  };
  m.dw = [](double r, const Params& p) {
    const double a = P(p, "alpha"), u = a * r, c = cosech(u);
    return a * (-P(p, "A") * c * c + P(p, "B") * c * coth(u));
  };
  m.integral = [](double r, const Params& p) {
    const double a = P(p, "alpha"), u = a * r;
    return (P(p, "A") * log_sinh(u) - P(p, "B") * std::log(std::tanh(0.5 * u))) / a;
  };
  m.v1 = [](double r, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), a = P(p, "alpha"), u = a * r, c = cosech(u);
    return A * A + (B * B + A * A + A * a) * c * c - B * (2.0 * A + a) * coth(u) * c;
  };
  m.step = [](const Params& p) { return with(p, "A", P(p, "A") - P(p, "alpha")); };
  m.remainder = [](const Params& p) {
    const double A = P(p, "A"), A2 = A - P(p, "alpha");
    return A * A - A2 * A2;
  };
  m.energy = [](int n, const Params& p) {
    const double A = P(p, "A"), An = A - n * P(p, "alpha");
    return A * A - An * An;
  };
  m.domain = [](const Params&) { return Domain::half_line(); };
  m.violation = [](const Params& p) -> std::optional<std::string> {
    if (auto v = positive(p, {"A", "alpha"})) return v;
    if (!(P(p, "A") < P(p, "B"))) return std::string("A < B");
    return std::nullopt;
  };
  m.normalizable = [](const Params& p) { return P(p, "A") > 0.0 && P(p, "A") < P(p, "B"); };
  m.confining = true;
  return m;
}

// Rosen-Morse I (trigonometric): W = -A cot(alpha x) - B/A on (0, pi/alpha).
SipModel rosen_morse_i() {
  SipModel m;
  m.name = SipName::rosen_morse_i;
  m.key = "rosen_morse_i";
  m.label = "Rosen-Morse I";
  m.parameters = {"A", "B", "alpha"};
  m.defaults = {{"A", 2.0}, {"B", 1.0}, {"alpha", 1.0}};
  m.w = [](double x, const Params& p) {
    const double A = P(p, "A");
    return -A / std::tan(P(p, "alpha") * x) - P(p, "B") / A;
  };
  m.dw = [](double x, const Params& p) {
    const double a = P(p, "alpha"), s = 1.0 / std::sin(a * x);
    return P(p, "A") * a * s * s;
  };
  m.integral = [](double x, const Params& p) {
    const double A = P(p, "A"), a = P(p, "alpha");
    return -A / a * std::log(std::sin(a * x)) - P(p, "B") / A * x;
  };
  m.v1 = [](double x, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), a = P(p, "alpha"), u = a * x, s = 1.0 / std::sin(u);
    return A * (A - a) * s * s + 2.0 * B / std::tan(u) - A * A + B * B / (A * A);
  };
  m.step = [](const Params& p) { return with(p, "A", P(p, "A") + P(p, "alpha")); };
  m.remainder = [](const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), A2 = A + P(p, "alpha");
    return A2 * A2 - A * A + B * B / (A * A) - B * B / (A2 * A2);
  };
  m.energy = [](int n, const Params& p) {
    const double A = P(p, "A"), B = P(p, "B"), An = A + n * P(p, "alpha");
    return An * An - A * A + B * B / (A * A) - B * B / (An * An);
  };
  m.domain = [](const Params& p) { return Domain::interval(0.0, std::numbers::pi / P(p, "alpha")); };
  m.violation = [](const Params& p) -> std::optional<std::string> {
    if (auto v = positive(p, {"A", "alpha"})) return v;
    return nonnegative(p, {"B"});
  };
  m.normalizable = [](const Params& p) { return P(p, "A") > 0.0; };
  m.confining = true;
  return m;
}

std::string lower(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch == '-' || ch == ' ') ch = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

}  // namespace

const std::vector<SipModel>& sip_catalog() {
  static const std::vector<SipModel> table = {shifted_oscillator(), three_d_oscillator(), coulomb(), morse(),
                                              scarf_ii(), rosen_morse_ii(), eckart(), scarf_i(),
                                              poschl_teller(), rosen_morse_i()};
  return table;
}

const SipModel& sip_model(SipName name) {
  for (const auto& m : sip_catalog())
    if (m.name == name) return m;
  throw std::invalid_argument("unknown catalog entry");
}

const SipModel& sip_model(std::string_view key) {
  const std::string k = lower(key);
  for (const auto& m : sip_catalog())
    if (lower(m.key) == k || lower(m.label) == k) return m;
  throw std::invalid_argument("unknown catalog entry '" + std::string(key) + "'");
}

}  // namespace susy
