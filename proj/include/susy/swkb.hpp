#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "susy/shape_invariance.hpp"
#include "susy/superpotential.hpp"

namespace susy {

enum class QuantizationMode { wkb, swkb_v1, swkb_v2 };

/// WKB uses the potential V; SWKB uses W^2 and requires W to change sign
/// across the well.
class QuantizationProblem {
 public:
  static QuantizationProblem wkb(RealFunction v, Domain domain, Units units = {});
  static QuantizationProblem swkb(const Superpotential& w, QuantizationMode mode = QuantizationMode::swkb_v1);

  QuantizationMode mode() const { return mode_; }
  const Domain& domain() const { return domain_; }
  const Units& units() const { return units_; }
  /// V for WKB, W^2 for SWKB.
  double profile(double x) const { return profile_(x); }
  /// Bottom of the profile and its location.
  std::pair<double, double> minimum() const;
  /// nħπ, (n+1)ħπ or (n+1/2)ħπ.
  double target(int n) const;
  const std::optional<Superpotential>& superpotential() const { return w_; }

  /// Hint for the bracket search: [e_lo, e_lo + width] (e.g. from catalog remainders).
  std::optional<std::pair<double, double>> bracket_hint;

 private:
  QuantizationProblem() = default;
  QuantizationMode mode_ = QuantizationMode::wkb;
  RealFunction profile_;
  Domain domain_;
  Units units_;
  std::optional<Superpotential> w_;
};

/// Classical turning points a < b where the profile equals E. Requires exactly two.
std::pair<double, double> turning_points(const QuantizationProblem& problem, double energy);

/// int_a^b sqrt(2m (E - profile)) dx with x = mid + half sin(theta).
double action_integral(const QuantizationProblem& problem, double energy);

/// Energy solving action(E) = target(n).
double quantize(const QuantizationProblem& problem, int n);

/// (hbar/2) int_a^b W' / sqrt(E - W^2) dx, the O(hbar) SWKB term.
double swkb_subleading_term(const QuantizationProblem& problem, double energy);

struct AuditRow {
  std::string entry;
  int n;
  double exact;
  double swkb;
  double swkb_error;  ///< relative, |E_swkb - E| / max(1, |E|)
  bool swkb_pass;
  std::optional<double> wkb;  ///< empty when WKB is not applicable
  std::optional<double> wkb_error;
  std::string note;
};

/// Per entry, per level n <= min(n_max, bound states - 1): SWKB vs closed form,
/// plus ordinary WKB on V1 for contrast.
std::vector<AuditRow> exactness_audit(const std::vector<SipEntry>& catalog, int n_max = 5);

}  // namespace susy
