#pragma once

#include <string>
#include <vector>

#include "susy/eigensolver.hpp"
#include "susy/superpotential.hpp"

namespace susy {

/// W with period L. phi_L = int_0^L W.
struct PeriodicSuperpotential {
  RealFunction w;
  double period;
  double phi_L;
  RealFunction dw{};  ///< optional closed form; finite differences otherwise
  Units units{};

  /// Checks w(x+L) = w(x) on samples and integrates phi_L (periodic trapezoid).
  static PeriodicSuperpotential make(RealFunction w, double period, RealFunction dw = {}, Units units = {});

  double derivative(double x) const;
  double v1(double x) const;
  double v2(double x) const;
};

enum class ZeroMode { unbroken, broken };
std::string to_string(ZeroMode z);

/// Unbroken iff |phi_L| <= 1e-10.
ZeroMode zero_mode_check(const PeriodicSuperpotential& w);

enum class SelfIsospectral { half_period_antisymmetric, even_reflection, neither };
std::string to_string(SelfIsospectral s);

/// W(x+L/2) + W(x) = 0 or W(-x) - W(x) = 0 on samples (tol 1e-9). A positive
/// answer is confirmed on the potentials: V2(x) = V1(x+L/2) or V2(x) = V1(-x).
/// Throws std::invalid_argument when SUSY is broken.
SelfIsospectral self_isospectral_classify(const PeriodicSuperpotential& w);

struct ShiftScan {
  bool related;
  double best_deviation;  ///< relative max |V2(x) - V1(+-x + s)|
  double shift;
  bool reflected;
};

/// Compares V2 with translates and reflected translates of V1 over `shifts`
/// shifts per period. Both samples span one period with a duplicated endpoint.
ShiftScan shift_scan(const PotentialOnGrid& v1, const PotentialOnGrid& v2, int shifts = 1000, double tol = 1e-8);

struct LameSpec {
  int a;
  double m;

  int p() const { return a * (a + 1); }
  double delta() const;
  /// 2K(m)
  double period() const;
  void validate() const;
};

/// p m sn^2(x, m).
RealFunction lame_function(const LameSpec& spec);
/// Samples over [0, 2K(m)] (last sample duplicates the first).
PotentialOnGrid lame_potential(const LameSpec& spec, std::size_t n_points = 801);
/// Samples over a user window.
PotentialOnGrid lame_potential(const LameSpec& spec, const Grid& window);

enum class PeriodTag { L, twoL };
enum class BandBoundary { bottom, top, continuum_bottom };
std::string to_string(PeriodTag t);
std::string to_string(BandBoundary b);

struct BandEdge {
  double energy;
  PeriodTag period_tag;
  int nodes_per_L;
  BandBoundary which;
};

/// Closed forms for a = 1, 2. Throws std::invalid_argument for a >= 3.
std::vector<BandEdge> lame_band_edges(const LameSpec& spec);

/// Ground-state SUSY pair of a Lame potential, shifted so the lowest edge sits at zero.
/// a = 1: W = m sn cn / dn. a = 2: psi0 = 1 + m + delta - 3 m sn^2, W = -psi0'/psi0.
struct LamePartner {
  LameSpec spec;
  double shift;  ///< V1 = Lame - shift
  PeriodicSuperpotential w;
  PotentialOnGrid v1;
  PotentialOnGrid v2;  ///< -V1 + 2 W^2, same additive convention as V1
  SampledFunction psi0;
};

LamePartner lame_partner(const LameSpec& spec, std::size_t n_points = 801);

/// Union of the kL = 0 and kL = pi spectra, sorted. Tags come from the
/// sector, node counts from the eigenvectors; bottom/top alternate.
std::vector<BandEdge> numeric_band_edges(const PotentialOnGrid& one_period, int count, const EigenOptions& options = {});

/// Numeric edges of a Lame potential: 2a+1 edges, the last tagged continuum_bottom.
std::vector<BandEdge> lame_numeric_band_edges(const LameSpec& spec, std::size_t n_points = 801);

/// Edge i must have (i+1)/2 nodes and tag L when that count is even, 2L when odd.
bool follows_oscillation_pattern(const std::vector<BandEdge>& edges);

/// Trace of the one-period transfer matrix (RK4). |D| <= 2 inside bands.
double hill_discriminant(const RealFunction& v, double period, double energy, int steps = 4000, Units units = {});

/// (kL, E) samples of the lowest `bands` bands over kL in [0, pi].
struct DispersionSample {
  double kL;
  std::vector<double> energies;
};
std::vector<DispersionSample> dispersion(const PotentialOnGrid& one_period, int bands, int k_samples = 21);

/// psi0 = exp(-int W / c) on one period and its reciprocal. Relative
/// residuals of H1 psi0 = 0 and H2 (1/psi0) = 0 with periodic conditions.
struct ZeroModeResiduals {
  double v1;
  double v2;
};
ZeroModeResiduals zero_mode_residuals(const PeriodicSuperpotential& w, std::size_t n_points = 2001);

/// (c d/dx + W) psi with a wrapped 4th-order derivative (bloch_sign = +-1).
std::vector<double> apply_periodic_A(const PeriodicSuperpotential& w, const SampledFunction& psi, int bloch_sign);

}  // namespace susy
