#pragma once

#include "adpt/grid.hpp"
#include "adpt/quantize.hpp"

namespace adpt::qbench {

// Discrete Wigner transform of a fiber-valued wavefunction:
//   W[i][k] = (dx / (2 pi eps)) sum_l e^{2 pi i l k / n}
//             psi(x_i + l dx/2) (x) psi*(x_i - l dx/2),
// with the half-grid samples obtained by trigonometric interpolation
// (band-limited states).  Diagnostic output; satisfies the quantization
// duality and lattice normalization for states away from the wrap.
struct WignerArray {
  int n = 0, m = 0;
  std::vector<MatrixXcd> w;  // index i * n + k, each m x m

  const MatrixXcd& at(int i, int k) const { return w[i * n + k]; }
  double total_trace(const Grid1D& g) const;  // sum Tr W dq dp
};

WignerArray wigner(const WaveFn& psi, const Grid1D& g);

// sum_{ik} Tr(a0(x_i, p_k) W[i][k]) dq dp  (duality pairing)
Cplx wigner_pair(const WignerArray& W, const GridSymbol& a0, const Grid1D& g);

}  // namespace adpt::qbench
