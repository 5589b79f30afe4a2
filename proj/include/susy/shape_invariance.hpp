#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "susy/eigensolver.hpp"
#include "susy/superpotential.hpp"

namespace susy {

enum class SipName {
  shifted_oscillator,
  three_d_oscillator,
  coulomb,
  morse,
  scarf_ii,
  rosen_morse_ii,
  eckart,
  scarf_i,
  poschl_teller,
  rosen_morse_i,
};

/// Analytic data for one catalog row, in units hbar = 2m = 1.
struct SipModel {
  SipName name;
  std::string_view key;    ///< machine name, e.g. "rosen_morse_ii"
  std::string_view label;  ///< display name
  std::vector<std::string_view> parameters;
  Params defaults;
  double (*w)(double x, const Params&);
  double (*dw)(double x, const Params&);
  double (*integral)(double x, const Params&);  ///< an antiderivative of W
  double (*v1)(double x, const Params&);        ///< table column for V1, written out independently of W
  Params (*step)(const Params&);                ///< a1 -> a2
  double (*remainder)(const Params&);           ///< R(a1)
  double (*energy)(int n, const Params&);       ///< closed-form E_n
  Domain (*domain)(const Params&);
  /// Empty when admissible, else the violated condition.
  std::optional<std::string> (*violation)(const Params&);
  /// Ground state of V1(x; a) normalizable (the level survives the chain).
  bool (*normalizable)(const Params&);
  bool confining;  ///< no scattering states
};

const std::vector<SipModel>& sip_catalog();
const SipModel& sip_model(SipName name);
/// Looks up by key or label, case-insensitive; throws std::invalid_argument.
const SipModel& sip_model(std::string_view key);

class SipEntry {
 public:
  SipEntry(const SipModel& model, Params params);

  const SipModel& model() const { return *model_; }
  SipName name() const { return model_->name; }
  const Params& params() const { return params_; }

  Superpotential superpotential() const;
  Domain domain() const { return model_->domain(params_); }
  double w(double x) const { return model_->w(x, params_); }
  double dw(double x) const { return model_->dw(x, params_); }
  double v1(double x) const { return model_->v1(x, params_); }
  double v2(double x) const;
  double remainder() const { return model_->remainder(params_); }
  double energy(int n) const { return model_->energy(n, params_); }
  SipEntry next() const;
  /// Number of bound states; -1 when infinite.
  int bound_state_count() const;

  /// max |V2(x;a1) - V1(x;a2) - R(a1)| and max |V1 column - (W^2 - W')| on the grid.
  double shape_invariance_residual(const Grid& grid) const;

  /// A grid suited to numerics for the lowest `levels` states.
  Grid default_grid(int levels, std::size_t n_points) const;

 private:
  const SipModel* model_;
  Params params_;
};

/// Merges defaults, checks the constraint column and the defining residual.
SipEntry sip_lookup(SipName name, const Params& params = {});
SipEntry sip_lookup(std::string_view key, const Params& params = {});

struct SipSpectrum {
  std::vector<double> energies;
  bool truncated = false;
};

/// E_n = sum_{k<=n} R(a_k), cross-checked against the closed form.
SipSpectrum sip_spectrum(const SipEntry& entry, int n_max);

/// psi_n via the exact chain A^dag(a1)...A^dag(a_n) psi0(a_{n+1}), normalized.
SampledFunction sip_eigenfunction(const SipEntry& entry, int n, const Grid& grid);

enum class HierarchyConvention {
  cumulative,         ///< V1(x; a_s) + sum_{k<s} R(a_k): H_s starts at E_{s-1}
  partner_of_zeroed,  ///< V_s is the partner of V_{s-1} after its ground level is shifted to zero
};

/// Potential of the s-th Hamiltonian in the hierarchy.
RealFunction hierarchy_function(const SipEntry& base, int s,
                                HierarchyConvention convention = HierarchyConvention::cumulative);
PotentialOnGrid hierarchy_potential(const SipEntry& base, int s, const Grid& grid,
                                    HierarchyConvention convention = HierarchyConvention::cumulative);
/// Generic base: successive numeric ground states. Accurate where psi0 is
/// well above roundoff; in far tails W_s is extrapolated linearly.
PotentialOnGrid hierarchy_potential(const Superpotential& base, int s, const Grid& grid,
                                    HierarchyConvention convention = HierarchyConvention::cumulative);

struct ScatterPair {
  std::complex<double> r;
  std::complex<double> t;
};

/// Reflection/transmission of V1(x;a1) at momentum k from the recursion,
/// ending at a member with constant V1 (free propagation).
ScatterPair sip_scatter_recursion(const SipEntry& entry, double k, int n_steps);

}  // namespace susy
