#include "adpt/wigner.hpp"

#include <cmath>

#include "adpt/quantize.hpp"

namespace adpt::qbench {

namespace {

// trigonometric interpolation of each fiber component onto the 2n half grid
std::vector<VectorXcd> half_grid_samples(const WaveFn& psi, const Grid1D& g) {
  const int n = g.n, m = g.m;
  std::vector<VectorXcd> out(m, VectorXcd::Zero(2 * n));
  for (int s = 0; s < m; ++s) {
    // DFT coefficients c_k, k in [-n/2, n/2)
    VectorXcd c = VectorXcd::Zero(n);
    for (int k = 0; k < n; ++k) {
      Cplx acc = 0;
      for (int i = 0; i < n; ++i) {
        double ph = -2.0 * M_PI * static_cast<double>(k - n / 2) * i / n;
        acc += psi.values[i * m + s] * Cplx(std::cos(ph), std::sin(ph));
      }
      c[k] = acc / static_cast<double>(n);
    }
    for (int h = 0; h < 2 * n; ++h) {
      Cplx acc = 0;
      for (int k = 0; k < n; ++k) {
        double ph = 2.0 * M_PI * static_cast<double>(k - n / 2) * (0.5 * h) / n;
        acc += c[k] * Cplx(std::cos(ph), std::sin(ph));
      }
      out[s][h] = acc;
    }
  }
  return out;
}

}  // namespace

WignerArray wigner(const WaveFn& psi, const Grid1D& g) {
  const int n = g.n, m = g.m;
  auto half = half_grid_samples(psi, g);
  WignerArray W;
  W.n = n;
  W.m = m;
  W.w.assign(n * n, MatrixXcd::Zero(m, m));
  const double pref = g.dx() / (2.0 * M_PI * g.eps);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      MatrixXcd acc = MatrixXcd::Zero(m, m);
      for (int l = -n / 2; l < n / 2; ++l) {
        int hp = ((2 * i + l) % (2 * n) + 2 * n) % (2 * n);
        int hm = ((2 * i - l) % (2 * n) + 2 * n) % (2 * n);
        double ph = 2.0 * M_PI * static_cast<double>(l) * (k - n / 2) / n;
        Cplx phase(std::cos(ph), std::sin(ph));
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) acc(a, b) += phase * half[a][hp] * std::conj(half[b][hm]);
      }
      W.w[i * n + k] = pref * acc;
    }
  }
  return W;
}

double WignerArray::total_trace(const Grid1D& g) const {
  Cplx acc = 0;
  for (const auto& mat : w) acc += mat.trace();
  return (acc * g.dx() * g.dp()).real();
}

Cplx wigner_pair(const WignerArray& W, const GridSymbol& a0, const Grid1D& g) {
  Cplx acc = 0;
  for (int i = 0; i < g.n; ++i)
    for (int k = 0; k < g.n; ++k)
      acc += (a0(g.x(i), g.p(k - g.n / 2)) * W.at(i, k)).trace();
  return acc * g.dx() * g.dp();
}

}  // namespace adpt::qbench
