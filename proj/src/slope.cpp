#include "adpt/slope.hpp"

#include <algorithm>
#include <cmath>

namespace adpt::harness {

SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw ConfigError("fit_slope: need at least 3 points");
  for (size_t i = 0; i < xs.size(); ++i)
    if (!(xs[i] > 0) || !(ys[i] > 0))
      throw ConfigError("fit_slope: inputs must be positive");
  const int n = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  SlopeFit f;
  double denom = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (int i = 0; i < n; ++i) {
    double r = std::log(ys[i]) - (f.intercept + f.slope * std::log(xs[i]));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  f.points_used = n;
  return f;
}

SlopeFit fit_slope_drop(const std::vector<double>& xs, const std::vector<double>& ys,
                        double residual_threshold) {
  SlopeFit full = fit_slope(xs, ys);
  if (full.residual <= residual_threshold || xs.size() < 4) return full;
  size_t imax = 0;
  for (size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[imax]) imax = i;
  std::vector<double> x2, y2;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i == imax) continue;
    x2.push_back(xs[i]);
    y2.push_back(ys[i]);
  }
  SlopeFit red = fit_slope(x2, y2);
  if (red.residual < full.residual) {
    red.dropped_largest = true;
    return red;
  }
  return full;
}

}  // namespace adpt::harness
