#include "adpt/grid.hpp"

#include <cmath>

namespace adpt::qbench {

Grid1D::Grid1D(int n_, double L_, int m_, double eps_) : n(n_), L(L_), m(m_), eps(eps_) {
  if (n < 2 || (n & (n - 1)) != 0) throw ConfigError("Grid1D: n_points must be a power of two");
  if (L <= 0 || eps <= 0 || m < 1) throw ConfigError("Grid1D: bad parameters");
}

WaveFn WaveFn::normalized(const Grid1D& g) const {
  WaveFn w = *this;
  double nn = norm(g);
  if (nn == 0) throw NumericError("WaveFn: zero norm");
  w.values /= nn;
  return w;
}

WaveFn gaussian_packet(const Grid1D& g, double q0, double p0, double sigma,
                       const VectorXcd& fiber) {
  WaveFn w;
  w.values = VectorXcd::Zero(g.dim());
  for (int i = 0; i < g.n; ++i) {
    double x = g.x(i);
    // wrap the envelope once around the torus so tails stay smooth
    double best = x - q0;
    for (int wrap = -1; wrap <= 1; ++wrap) {
      double dxq = x - q0 + wrap * g.L;
      if (std::abs(dxq) < std::abs(best)) best = dxq;
    }
    Cplx env = std::exp(Cplx(-best * best / (2.0 * sigma * sigma * g.eps), p0 * x / g.eps));
    for (int s = 0; s < g.m; ++s) w.values[i * g.m + s] = env * fiber[s];
  }
  return w.normalized(g);
}

}  // namespace adpt::qbench
