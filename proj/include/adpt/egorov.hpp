#pragma once

#include "adpt/flow.hpp"

namespace adpt {

// Heisenberg observable at leading order:
//   a0(z,t) = D*(z,t) a0(Phi^t(z)) D(z,t).
MatrixXcd egorov_evolve(const MatrixSymbol& a0, const MatrixSymbol& Er, const MatrixSymbol& h1,
                        const PhasePoint& z, double t, double dt = 1e-3);

// First-order correction, Duhamel form a1(t) = int_0^t U(t-s) I1(s) ds with
//   I1(s) = -(1/2)({h1, a0(s)} - {a0(s), h1}) + i [h2, a0(s)],
// composite-Simpson quadrature over the stored trajectory grid, with the
// transport group realized through the stored D via the composition law.
// When the principal observable is a scalar multiple of the identity the
// [h2, a0(s)] term vanishes identically and h2 may be omitted; requesting
// the correction for a matrix-valued principal without h2 is an error.
MatrixXcd egorov_correct(const MatrixSymbol& a0, const MatrixSymbol& Er, const MatrixSymbol& h1,
                         const MatrixSymbol* h2_or_null, const PhasePoint& z, double t,
                         double dt = 1e-3);

// Residual of the leading transport equation at (z, t):
//   d a0(t)/dt - {E_r 1, a0(t)} - i [h1, a0(t)],
// with the time derivative and brackets taken by central differences of the
// transported observable.  Diagnostic for tests.
double egorov_residual(const MatrixSymbol& a0, const MatrixSymbol& Er, const MatrixSymbol& h1,
                       const PhasePoint& z, double t, double dt = 1e-3, double h = 1e-4);

}  // namespace adpt
