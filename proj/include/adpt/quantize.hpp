#pragma once

#include "adpt/grid.hpp"

namespace adpt::qbench {

// Sampler for an m x m matrix symbol on the grid's phase space.
using GridSymbol = std::function<MatrixXcd(double q, double p)>;

GridSymbol grid_symbol(const MatrixSymbol& A);
GridSymbol grid_symbol_scalar(const std::function<double(double, double)>& f);

// How far the symbol is from being smooth across the momentum wrap:
// the maximal jump between the two Nyquist-adjacent momentum samples plus
// the relative tail mass of the kernel at large offsets.
struct AliasReport {
  double wrap_jump = 0.0;   // max_q |A(q, p_max - dp) - A(q, -p_max)|
  double tail_mass = 0.0;   // relative kernel mass at offsets |r| > n/4
  bool ok(double tol) const { return wrap_jump <= tol; }
};

AliasReport alias_check(const GridSymbol& A, const Grid1D& g);

enum class AliasPolicy { Check, Ignore };

// Discrete Weyl quantization: matrix of the integral operator with kernel
//   K_A(x,y) = (1/L) sum_k A((x+y)/2, p_k) e^{2 pi i k (i-j)/n},
// acting with quadrature weight dx.  Hermitian symbols yield hermitian
// matrices.  Throws AliasingError under AliasPolicy::Check when the symbol
// carries non-negligible mass at the Nyquist wrap.
MatrixXcd weyl_quantize(const GridSymbol& A, const Grid1D& g,
                        AliasPolicy policy = AliasPolicy::Check, double alias_tol = 1e-6,
                        int threads = 0);

// Straightforward serial reference (triple loop), kept for the consistency
// tests and the benchmark target.
MatrixXcd weyl_quantize_reference(const GridSymbol& A, const Grid1D& g);

// Fourier-multiplier operator g(p) (diagonal in the momentum basis); used as
// an independent oracle for symbols depending on p alone.
MatrixXcd fourier_multiplier(const std::function<MatrixXcd(double)>& gp, const Grid1D& g);

}  // namespace adpt::qbench
