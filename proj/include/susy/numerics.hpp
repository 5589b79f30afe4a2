#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace susy {

/// Raised when a numerical procedure cannot produce a trustworthy result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RealFunction = std::function<double(double)>;

/// Uniform grid x_i = x_min + i h, i = 0..n-1.
class Grid {
 public:
  Grid(double x_min, double x_max, std::size_t n_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double spacing() const { return h_; }
  std::size_t size() const { return n_; }
  double operator[](std::size_t i) const { return i + 1 == n_ ? x_max_ : x_min_ + static_cast<double>(i) * h_; }
  std::vector<double> points() const;

  /// Same interval, every other point. Requires an odd point count.
  Grid coarsened() const;
  /// Same interval, one extra point between each pair.
  Grid refined() const;

  bool operator==(const Grid&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double h_;
};

/// Real samples on a grid. Non-finite values are rejected.
class SampledFunction {
 public:
  SampledFunction(Grid grid, std::vector<double> values);
  static SampledFunction from(const Grid& grid, const RealFunction& f);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& data() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Piecewise-cubic (Catmull-Rom) interpolation; clamps outside the grid.
  double interpolate(double x) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  Bracket(double lo, double hi, double f_lo, double f_hi);
  static Bracket of(const RealFunction& f, double lo, double hi);
};

/// Composite Simpson; for an even point count the last three intervals use
/// the 3/8 rule so the error stays O(h^4).
double integrate(const SampledFunction& f);
double integrate(const Grid& grid, std::span<const double> values);

/// Running integral from x_min, fourth order at every node.
std::vector<double> cumulative_integral(const Grid& grid, std::span<const double> values);

/// First derivative: 4th-order central stencil inside, 2nd-order one-sided at the ends.
std::vector<double> derivative(const Grid& grid, std::span<const double> values);
/// Second derivative: 4th-order central stencil inside, 2nd-order at the ends.
std::vector<double> second_derivative(const Grid& grid, std::span<const double> values);

/// Central 4th-order derivative of a function at a point.
double derivative_at(const RealFunction& f, double x, double step = 1e-3);

double erfc(double x);

/// Complete elliptic integral of the first kind, parameter convention K(m).
double elliptic_K(double m);

struct JacobiElliptic {
  double sn;
  double cn;
  double dn;
};

JacobiElliptic jacobi_sn_cn_dn(double x, double m);

double bisect_root(const RealFunction& f, Bracket bracket, double tol = 1e-12);

/// Count of sign changes, ignoring samples with |v| <= threshold * max|v|.
int count_sign_changes(std::span<const double> values, double threshold = 1e-9);

}  // namespace susy
