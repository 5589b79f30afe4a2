#pragma once

#include <string>
#include <vector>

#include "susy/superpotential.hpp"

namespace susy {

enum class Stencil { three_point, numerov };

struct EigenOptions {
  Stencil stencil = Stencil::three_point;
  /// Also solve on the 2h grid (every other sample) and extrapolate.
  bool richardson = true;
  /// Relative bisection tolerance on energies.
  double tolerance = 1e-14;
  /// Required decay |psi(edge)| / max|psi| at open edges.
  double edge_decay = 1e-6;
};

struct EigenPair {
  double energy;
  SampledFunction psi;  ///< normalized, sign fixed so the first significant lobe is positive
  int nodes;
};

struct BoundStates {
  std::vector<EigenPair> states;   ///< energies are the extrapolated values when available
  std::vector<double> fine;        ///< raw energies on the given grid
  std::vector<double> coarse;      ///< raw energies on the 2h grid (empty without Richardson)
  double continuum_edge = 0.0;
  bool truncated = false;          ///< fewer than `count` levels below the continuum edge
  std::vector<std::string> warnings;

  std::vector<double> energies() const;
};

/// Lowest `count` Dirichlet eigenpairs of -c^2 d^2/dx^2 + V on the grid.
BoundStates bound_states(const PotentialOnGrid& v, int count, const EigenOptions& options = {});

struct RadialGrid {
  double r_max;
  std::size_t n_points;
  double r_min = 0.0;  ///< Dirichlet point; 0 puts the wall on the origin node
};

/// Reduced radial problem with V(r) + c^2 l(l+1)/r^2, Dirichlet at r_min and r_max.
BoundStates radial_bound_states(const RealFunction& v, int l, int count, const RadialGrid& grid, Units units = {},
                                const EigenOptions& options = {});

/// Lowest `count` eigenpairs with psi(x+L) = exp(i kL) psi(x) over one period.
/// The grid spans exactly one period; its last sample duplicates the first.
/// kL in {0, pi} returns real eigenvectors; other phases return |psi| only in
/// the `psi` field (energies are exact for the discretization).
std::vector<EigenPair> band_solve(const PotentialOnGrid& one_period, double kL, int count,
                                  const EigenOptions& options = {});

/// Energies only, same discretization as band_solve; O(n) per bisection step.
std::vector<double> band_energies(const PotentialOnGrid& one_period, double kL, int count,
                                  const EigenOptions& options = {});

/// 4th-order finite-difference H psi on the grid (zero outside for Dirichlet,
/// wrapped for periodic/antiperiodic). Returns H psi samples.
std::vector<double> apply_hamiltonian(const PotentialOnGrid& v, std::span<const double> psi, int bloch_sign = 0);

/// max |H psi - E psi| / max |psi| over nodes not adjacent to a wall.
double eigen_residual(const PotentialOnGrid& v, std::span<const double> psi, double energy, int bloch_sign = 0);

/// Sign changes over one period, closing the loop with psi(L) = s psi(0).
int periodic_node_count(std::span<const double> psi, int bloch_sign);

}  // namespace susy
