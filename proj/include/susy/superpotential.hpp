#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "susy/numerics.hpp"

namespace susy {

using Params = std::map<std::string, double>;

/// hbar and 2m. The first-order scale c = hbar/sqrt(2m) multiplies W' in the
/// partner potentials; the kinetic prefactor is c^2 = hbar^2/2m.
struct Units {
  double hbar = 1.0;
  double mass2 = 1.0;

  double scale() const { return hbar / std::sqrt(mass2); }
  double kinetic() const { return hbar * hbar / mass2; }
  bool operator==(const Units&) const = default;
};

/// Open interval (lo, hi). Finite ends are hard walls (Dirichlet); infinite
/// ends are open.
struct Domain {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Domain real_line() { return {}; }
  static Domain half_line() { return {0.0, std::numeric_limits<double>::infinity()}; }
  static Domain interval(double a, double b) { return {a, b}; }

  bool left_wall() const { return std::isfinite(lo); }
  bool right_wall() const { return std::isfinite(hi); }
  bool contains(double x) const { return x > lo && x < hi; }
};

/// A superpotential W(x) with optional closed-form W' and antiderivative.
class Superpotential {
 public:
  struct Definition {
    RealFunction w;
    RealFunction dw{};
    RealFunction integral{};
    Domain domain{};
    Units units{};
    Params params{};
    std::optional<double> w_minus{};
    std::optional<double> w_plus{};
    std::string name{};
  };

  explicit Superpotential(Definition def);

  double operator()(double x) const { return def_.w(x); }
  double derivative(double x) const;
  bool has_closed_derivative() const { return static_cast<bool>(def_.dw); }
  bool has_antiderivative() const { return static_cast<bool>(def_.integral); }
  double antiderivative(double x) const { return def_.integral(x); }

  const Domain& domain() const { return def_.domain; }
  const Units& units() const { return def_.units; }
  const Params& params() const { return def_.params; }
  const std::string& name() const { return def_.name; }
  std::optional<double> w_minus() const { return def_.w_minus; }
  std::optional<double> w_plus() const { return def_.w_plus; }
  const Definition& definition() const { return def_; }

  /// Same function with W -> -W (used to orient the zero mode onto V1).
  Superpotential negated() const;
  Superpotential with_units(Units u) const;

  /// Values on a grid; non-finite results (walls) are left as NaN.
  std::vector<double> sample(const Grid& grid) const;
  std::vector<double> sample_derivative(const Grid& grid) const;

 private:
  Definition def_;
};

/// Superpotential backed by samples; between nodes it interpolates.
Superpotential sampled_superpotential(const SampledFunction& w, Units units = {}, std::string name = "sampled");

enum class Edge { wall, open };

/// Sampled potential plus boundary tags and the kinetic prefactor.
/// At a wall edge the boundary node carries the Dirichlet condition and its
/// potential sample is not used by the solvers.
struct PotentialOnGrid {
  Grid grid;
  std::vector<double> values;
  Edge left = Edge::open;
  Edge right = Edge::open;
  Units units{};

  static PotentialOnGrid sample(const RealFunction& v, const Grid& grid, Edge left, Edge right, Units units = {});
  static PotentialOnGrid sample(const RealFunction& v, const Grid& grid, const Domain& domain, Units units = {});

  std::size_t size() const { return values.size(); }
  /// Lowest value reached at an open edge; +inf when both edges are walls.
  double continuum_edge() const;
  PotentialOnGrid shifted(double c) const;
};

}  // namespace susy
