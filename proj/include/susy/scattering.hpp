#pragma once

#include <complex>

#include "susy/superpotential.hpp"

namespace susy {

using Complex = std::complex<double>;

/// Asymptotics exp(ikx) + r exp(-ikx) on the left, t exp(ik'x) on the right.
struct ScatterAmplitudes {
  double k = 0.0;
  double k_prime = 0.0;
  Complex r{};
  Complex t{};

  /// |r|^2 + (k'/k)|t|^2, equal to 1 for real potentials.
  double flux() const { return std::norm(r) + k_prime / k * std::norm(t); }
};

/// Numerov integration from the right edge (pure transmitted wave) to the left,
/// then a least-squares fit of the two plane waves over the leading 5% of the grid.
ScatterAmplitudes numeric_rt(const PotentialOnGrid& v, double energy);

/// Amplitudes of V1 from those of its partner V2.
ScatterAmplitudes partner_rt(const ScatterAmplitudes& r2_t2, const Superpotential& w);

/// prod_{j=1}^{p} (j - ik)/(-j - ik): transmission of p(p+1) sech^2 x.
Complex reflectionless_T(int p, double k);

/// S1 = ((W+ - ik')/(W+ + ik')) S2 for radial partners.
Complex partner_phase_shift(Complex s2, double w_plus, double k_prime);

}  // namespace susy
