#pragma once

#include <utility>

#include "susy/superpotential.hpp"

namespace susy {

/// One-parameter isospectral deformation of a base superpotential.
/// `cumulative` is I(x) = int_{-inf}^x psi0^2 and `complement` is 1 - I(x)
/// computed from the right, so that I + lambda can be formed without
/// cancellation on either side.
class IsoFamily {
 public:
  IsoFamily(Superpotential base_w, SampledFunction base_psi0, SampledFunction cumulative,
            std::vector<double> complement, double lambda);

  /// psi0 from the base superpotential, cumulative norms with tail estimates.
  static IsoFamily make(const Superpotential& base_w, const Grid& grid, double lambda);

  IsoFamily with_lambda(double lambda) const;

  const Superpotential& base_w() const { return base_w_; }
  const SampledFunction& base_psi0() const { return base_psi0_; }
  const SampledFunction& cumulative() const { return cumulative_; }
  const std::vector<double>& complement() const { return complement_; }
  double lambda() const { return lambda_; }
  const Grid& grid() const { return base_psi0_.grid(); }

  /// I(x_i) + lambda, accurate on both tails. lambda = +inf is not allowed here.
  double shifted(std::size_t i) const;

 private:
  Superpotential base_w_;
  SampledFunction base_psi0_;
  SampledFunction cumulative_;
  std::vector<double> complement_;
  double lambda_;
};

/// Running integral of psi0^2 with exponential tail estimates at both ends.
/// Requires int psi0^2 = 1 within 1e-6.
SampledFunction cumulative_norm(const SampledFunction& psi0);

struct DeformedFamily {
  Superpotential w_hat;
  SampledFunction w_hat_samples;
  PotentialOnGrid v_hat;
  SampledFunction psi0_hat;
};

/// W_hat = W + c d/dx ln(I + lambda), V_hat = V1 - 2 c^2 d^2/dx^2 ln(I + lambda),
/// psi0_hat = sqrt(lambda (1 + lambda)) psi0 / (I + lambda). The derivatives of
/// ln(I + lambda) use I' = psi0^2 and psi0' = -W psi0 / c.
DeformedFamily deformed_family(const IsoFamily& fam);

/// (n+1)-th state of V_hat: E^{-1/2} (-c d/dx + W_hat) psi_n^(2), where psi2
/// is a normalized eigenstate of the common partner V2 with energy `energy`.
SampledFunction deformed_excited(const IsoFamily& fam, const SampledFunction& psi2, double energy);

struct Charges {
  double q1;
  double q2;
};

/// Q1 = int (V_hat - V_inf), Q2 = int x (V_hat - V_inf).
Charges conserved_charges(const IsoFamily& fam);

/// Limits lambda = 0 (Pursey) and lambda = -1 (Abraham-Moses) of V_hat.
std::pair<PotentialOnGrid, PotentialOnGrid> pursey_abraham_moses(const IsoFamily& fam);

/// V_hat for any lambda outside (-1, 0), including the endpoints 0 and -1.
PotentialOnGrid deformed_potential(const IsoFamily& fam, double lambda);

}  // namespace susy
