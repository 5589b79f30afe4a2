#include "susy/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace susy {

Grid::Grid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points), h_(0.0) {
  if (n_points < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
    throw std::invalid_argument("grid needs finite x_min < x_max");
  h_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

std::vector<double> Grid::points() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = (*this)[i];
  return x;
}

Grid Grid::coarsened() const {
  if (n_ % 2 == 0 || n_ < 5) throw std::invalid_argument("coarsening needs an odd point count >= 5");
  return Grid(x_min_, x_max_, (n_ + 1) / 2);
}

Grid Grid::refined() const { return Grid(x_min_, x_max_, 2 * n_ - 1); }

SampledFunction::SampledFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("sample count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample value");
}

SampledFunction SampledFunction::from(const Grid& grid, const RealFunction& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  return SampledFunction(grid, std::move(v));
}

double SampledFunction::interpolate(double x) const {
  const std::size_t n = values_.size();
  const double h = grid_.spacing();
  double s = (x - grid_.x_min()) / h;
  if (s <= 0.0) return values_.front();
  if (s >= static_cast<double>(n - 1)) return values_.back();
  auto i = static_cast<std::size_t>(s);
  const double t = s - static_cast<double>(i);
  const double p1 = values_[i];
  const double p2 = values_[i + 1];
  const double p0 = i > 0 ? values_[i - 1] : 2.0 * p1 - p2;
  const double p3 = i + 2 < n ? values_[i + 2] : 2.0 * p2 - p1;
  return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
}

Bracket::Bracket(double lo_, double hi_, double f_lo_, double f_hi_) : lo(lo_), hi(hi_), f_lo(f_lo_), f_hi(f_hi_) {
  if (!(lo < hi)) throw std::invalid_argument("bracket needs lo < hi");
  if (!(f_lo * f_hi <= 0.0)) throw std::invalid_argument("bracket has no sign change");
}

Bracket Bracket::of(const RealFunction& f, double lo, double hi) { return Bracket(lo, hi, f(lo), f(hi)); }

double integrate(const Grid& grid, std::span<const double> v) {
  const std::size_t n = v.size();
  if (n < 3) throw std::invalid_argument("integration needs at least 3 points");
  if (n != grid.size()) throw std::invalid_argument("sample count does not match grid");
  const double h = grid.spacing();
  // Simpson over an even number of intervals, then a 3/8 tail if one is left over.
  std::size_t simpson_end = (n % 2 == 1) ? n - 1 : n - 4;
  double sum = 0.0;
  if (simpson_end > 0) {
    double s = v[0] + v[simpson_end];
    for (std::size_t i = 1; i < simpson_end; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
    sum = s * h / 3.0;
  }
  if (n % 2 == 0) {
    const std::size_t j = n - 4;
    sum += 3.0 * h / 8.0 * (v[j] + 3.0 * v[j + 1] + 3.0 * v[j + 2] + v[j + 3]);
  }
  return sum;
}

double integrate(const SampledFunction& f) { return integrate(f.grid(), f.values()); }

std::vector<double> cumulative_integral(const Grid& grid, std::span<const double> v) {
  const std::size_t n = v.size();
  if (n < 4) throw std::invalid_argument("cumulative integral needs at least 4 points");
  if (n != grid.size()) throw std::invalid_argument("sample count does not match grid");
  const double h = grid.spacing();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double piece;
    if (i == 0)
      piece = (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3]) / 24.0;
    else if (i + 2 == n)
      piece = (v[n - 4] - 5.0 * v[n - 3] + 19.0 * v[n - 2] + 9.0 * v[n - 1]) / 24.0;
    else
      piece = (-v[i - 1] + 13.0 * v[i] + 13.0 * v[i + 1] - v[i + 2]) / 24.0;
    out[i + 1] = out[i] + h * piece;
  }
  return out;
}

std::vector<double> derivative(const Grid& grid, std::span<const double> v) {
  const std::size_t n = v.size();
  if (n < 5) throw std::invalid_argument("derivative needs at least 5 points");
  const double h = grid.spacing();
  std::vector<double> d(n);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[1] = (v[2] - v[0]) / (2.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
  d[n - 2] = (v[n - 1] - v[n - 3]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> second_derivative(const Grid& grid, std::span<const double> v) {
  const std::size_t n = v.size();
  if (n < 5) throw std::invalid_argument("derivative needs at least 5 points");
  const double h2 = grid.spacing() * grid.spacing();
  std::vector<double> d(n);
  d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
  d[1] = (v[0] - 2.0 * v[1] + v[2]) / h2;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h2);
  d[n - 2] = (v[n - 3] - 2.0 * v[n - 2] + v[n - 1]) / h2;
  d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
  return d;
}

double derivative_at(const RealFunction& f, double x, double step) {
  return (f(x - 2.0 * step) - 8.0 * f(x - step) + 8.0 * f(x + step) - f(x + 2.0 * step)) / (12.0 * step);
}

double bisect_root(const RealFunction& f, Bracket b, double tol) {
  double lo = b.lo, hi = b.hi, flo = b.f_lo;
  if (!std::isfinite(b.f_lo) || !std::isfinite(b.f_hi)) throw NumericError("bisect_root: non-finite function value");
  if (b.f_lo == 0.0) return lo;
  if (b.f_hi == 0.0) return hi;
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (!std::isfinite(fm)) throw NumericError("bisect_root: non-finite function value");
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

int count_sign_changes(std::span<const double> values, double threshold) {
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  const double cut = threshold * vmax;
  int changes = 0;
  int last = 0;
  for (double v : values) {
    if (std::abs(v) <= cut) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace susy
