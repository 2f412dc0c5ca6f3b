#pragma once

#include <vector>

#include "adpt/errors.hpp"

namespace adpt::harness {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;  // in log space
  double residual = 0.0;   // rms of log residuals
  int points_used = 0;
  bool dropped_largest = false;
};

// Least squares of log y against log x.  Requires >= 3 positive points.
SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Same, but refits without the largest-x point when the full fit shows
// curvature (residual above the threshold) and enough points remain.
SlopeFit fit_slope_drop(const std::vector<double>& xs, const std::vector<double>& ys,
                        double residual_threshold = 0.1);

}  // namespace adpt::harness
