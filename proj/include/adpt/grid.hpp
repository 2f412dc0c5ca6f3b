#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "adpt/errors.hpp"
#include "adpt/symbol.hpp"

namespace adpt::qbench {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Periodic 1D grid: q in [-L/2, L/2), n points (a power of two), fiber
// dimension m, semiclassical parameter eps.  Momentum lattice
// p_k = 2 pi eps k / L for k in [-n/2, n/2).
struct Grid1D {
  int n = 128;
  double L = 8.0;
  int m = 2;
  double eps = 0.125;

  Grid1D() = default;
  Grid1D(int n_, double L_, int m_, double eps_);

  double dx() const { return L / n; }
  double dp() const { return 2.0 * M_PI * eps / L; }
  double x(int i) const { return -0.5 * L + i * dx(); }
  double p(int k) const { return dp() * k; }          // k in [-n/2, n/2)
  double p_max() const { return dp() * (n / 2); }
  int dim() const { return n * m; }                   // flattened index i*m + s
};

// Fiber-valued wavefunction, L2-normalized with weight dx.
struct WaveFn {
  VectorXcd values;  // flattened (grid-major, fiber-minor)

  double norm(const Grid1D& g) const { return std::sqrt(g.dx()) * values.norm(); }
  WaveFn normalized(const Grid1D& g) const;
};

// Gaussian wave packet exp(i p0 x / eps) exp(-(x-q0)^2 / (2 sigma^2 eps))
// in the given fiber direction, normalized.
WaveFn gaussian_packet(const Grid1D& g, double q0, double p0, double sigma,
                       const VectorXcd& fiber);

}  // namespace adpt::qbench
