#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dagcut/piecewise.hpp"
#include "dagcut/rational.hpp"

namespace dagcut {

// Continuous label density on [0,1] with exact piecewise-polynomial
// representation. Immutable; evaluation, sampling, and inversion are
// const and thread-safe.
class LabelDensity {
 public:
  LabelDensity(std::string name, PiecewisePoly density);

  const std::string& name() const { return name_; }
  const PiecewisePoly& density() const { return density_; }
  const PiecewisePoly& cdf() const { return cdf_; }

  double density_at(double x) const { return density_.eval(x); }
  double cdf_at(double x) const { return cdf_.eval(x); }

  // Inverse CDF by table-bracketed bisection to 1e-12. u outside [0,1] is
  // clamped.
  double inverse_cdf(double u) const;

  double sample(std::mt19937_64& rng) const;

 private:
  std::string name_;
  PiecewisePoly density_;
  PiecewisePoly cdf_;
  std::vector<double> quantile_table_;  // inverse CDF at i/(table_size-1)
};

// Constant density 1 on [0,1].
LabelDensity uniform_density();

// Density 2/3 + (23/3)(1-2x)^22 on [0,1], expanded to exact rational
// monomial coefficients.
LabelDensity poly_density();

// Exact CDF of Z = X - Y for X, Y i.i.d. with the given density, as a
// piecewise polynomial on [-1, 1]. Computed by symbolic convolution:
// F(t) = integral over y of d(y) * D(clamp(y+t, 0, 1)) dy, split at every t
// where the y-region structure changes.
PiecewisePoly difference_cdf(const LabelDensity& d);

struct SupRatioResult {
  double maximizer = 0.0;
  double value = 0.0;
};

// Maximum of F(t)/(t+1) over [-1,1] for a difference CDF F. Candidates are
// the piece endpoints plus the roots of the derivative numerator
// f'(t)(t+1) - f(t), isolated by exact-sign bisection to width 1e-12. The
// result is certified against a 1e6-point grid (no grid value may exceed
// value + 1e-9). F(-1)=0 is required so the t=-1 candidate is evaluated as
// the limit via exact division by (t+1).
SupRatioResult sup_ratio(const PiecewisePoly& F);

// Uniform atomic label distribution on {0, 1/r, ..., 1}.
class DiscreteLabels {
 public:
  explicit DiscreteLabels(int r);

  int r() const { return r_; }

  // P[l(v) - l(u) <= threshold] by exact enumeration over (r+1)^2 pairs.
  Rational cut_probability(const Rational& threshold) const;

  double sample(std::mt19937_64& rng) const;

 private:
  int r_;
};

}  // namespace dagcut
