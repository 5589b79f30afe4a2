#pragma once

#include <string>

#include "susy/superpotential.hpp"

namespace susy {

struct PartnerPair {
  RealFunction v1;
  RealFunction v2;
  Superpotential source;

  PotentialOnGrid sample_v1(const Grid& grid) const;
  PotentialOnGrid sample_v2(const Grid& grid) const;
};

/// V1 = W^2 - c W', V2 = W^2 + c W' with c = hbar/sqrt(2m).
PartnerPair partner_potentials(const Superpotential& w);

/// psi0 ~ exp(-(1/c) int W), normalized on the grid. Wall nodes get 0.
/// Throws NumericError when the result does not decay at an open edge.
SampledFunction ground_state_from_w(const Superpotential& w, const Grid& grid);

/// W = -c psi0'/psi0 from samples. Wall nodes where psi0 vanishes are
/// dropped: the returned superpotential lives on the interior nodes.
Superpotential w_from_ground_state(const SampledFunction& psi0, Units units = {});

/// A psi = c psi' + W psi. Nodes where W is not finite (walls) are set to 0.
SampledFunction apply_A(const Superpotential& w, const SampledFunction& psi);
/// A^dag psi = -c psi' + W psi.
SampledFunction apply_Adag(const Superpotential& w, const SampledFunction& psi);

struct AlgebraReport {
  double q_squared = 0.0;       ///< ||Q^2||
  double anticommutator = 0.0;  ///< ||{Q,Q^dag} - H||
  double commutator = 0.0;      ///< max(||[H,Q]||, ||[H,Q^dag]||)
  double consistency = 0.0;     ///< ||A^T A psi0 - H1_fd psi0||, O(h^2)
  double spacing = 0.0;
  std::size_t dimension = 0;
};

/// Builds the discrete A on the staggered grid (half-point W, Dirichlet ends),
/// H1 = A^T A, H2 = A A^T, Q and Q^dag as 2x2 block matrices, and measures the
/// superalgebra residuals (max-abs entry norm).
AlgebraReport algebra_check(const Superpotential& w, const Grid& grid);

enum class GroundSide { v1, v2, neither };

struct SusyStatus {
  bool broken = true;
  GroundSide ground_state_side = GroundSide::neither;
  double norm_of_candidate = 0.0;  ///< log of the converged norm, 0 when broken
  std::string note;
};

/// Normalizability scan of exp(-+ int W / c) on windows growing toward the
/// domain ends.
SusyStatus detect_breaking(const Superpotential& w);

std::string to_string(GroundSide side);

}  // namespace susy
