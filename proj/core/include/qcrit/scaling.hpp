// scaling.hpp
// Numerical differentiation on grids, peak location, logarithmic growth fits
// and finite-size data collapse of curves f_N(lambda).

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qcrit::scaling {

struct Curve {
  std::vector<double> grid;    // strictly increasing
  std::vector<double> values;
  std::string quantity;
  std::size_t n = 0;           // system size label

  // Throws std::invalid_argument on size mismatch or a non-increasing grid.
  void validate() const;
};

// Finite-difference weights for derivative `order` at x0 from the stencil
// points x (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> x, int order);

// Three-point central differences inside, one-sided second-order stencils at
// the ends (three points for order 1, four for order 2). Needs >= 5 points.
Curve finite_diff(const Curve& c, int order);

struct Peak {
  double position = 0.0;
  double value = 0.0;
  std::size_t index = 0;  // discrete maximum
};

// Quadratic refinement through the discrete maximum and its neighbours.
// std::domain_error if the maximum is on the grid edge or the curve is flat there.
Peak find_peak(const Curve& c);

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

// Least squares for y = slope ln N + intercept; >= 4 distinct positive N.
LogFit logfit(std::span<const double> ns, std::span<const double> ys);

struct CollapseOptions {
  // Scaled-variable half width kept around the peak.
  double window = 5.0;
  std::size_t grid_points = 401;
};

struct CollapsedCurve {
  std::size_t n = 0;
  double lambda_m = 0.0;
  double peak = 0.0;
  std::vector<double> values;  // f - f(lambda_m) on the common grid
};

struct CollapseReport {
  double nu = 1.0;
  std::vector<double> x;              // common scaled grid N^(1/nu)(lambda - lambda_m)
  std::vector<CollapsedCurve> curves; // sorted by N
  double quality = 0.0;
};

// Curves are shifted by their own peak value and rescaled in lambda. Quality
// is the RMS over the common grid of the across-curve standard deviation,
// divided by the mean peak height. Needs >= 3 curves.
CollapseReport collapse(std::span<const Curve> curves, double nu,
                        const CollapseOptions& opts = {});

// Piecewise-linear interpolation; x must lie inside the grid.
double interpolate(const Curve& c, double x);

}  // namespace qcrit::scaling
