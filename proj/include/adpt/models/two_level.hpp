#pragma once

#include "adpt/expansion.hpp"
#include "adpt/symbol.hpp"

namespace adpt::models {

// Canonical two-level benchmark on d=1, n=2:
//   H0(q,p) = e(q,p) 1 + cos(theta) sigma3 + sin(theta) sigma1,
//   theta   = a sin(2 pi q / L) + b tanh(p),
//   e       = c_amp cos(2 pi q / L) + d_amp p^2/(1+p^2),
// eigenvalues e(q,p) +- 1, gap exactly 2, L-periodic in q.
//
// Options:
//  * twist g: rotates the Bloch vector out of the x-z plane by the phase
//    phi = g tanh(p) sin(2 pi q / L); g = 0 is the plain benchmark.  With a
//    twist the band has a nonvanishing Berry term, so h1 != 0.
//  * momentum window (p_cut, sharp): multiplies every p-dependence by
//    chi(p) = 1/(1+exp(sharp (p^2-p_cut^2))), making the symbol constant in
//    p near the grid's Nyquist momentum.  Used by the quantum-grid harness,
//    where symbols must be negligible near the momentum wrap; the windowed
//    symbol agrees with the plain one to ~exp(-sharp p_cut^2) in the bulk.
struct TwoLevelParams {
  double a = 1.0;
  double b = 0.5;
  double c_amp = 0.3;
  double d_amp = 0.5;
  double L = 8.0;
  double twist = 0.0;
  bool windowed = false;
  double p_cut = 0.0;
  double sharp = 0.0;
};

class TwoLevel {
public:
  explicit TwoLevel(TwoLevelParams params = {});

  const TwoLevelParams& params() const { return prm_; }

  const FormalSymbol& H() const { return H_; }        // H1 = 0
  const MatrixSymbol& H0() const { return H_.term(0); }
  const MatrixSymbol& pi0() const { return pi0_; }    // upper band, closed form
  const MatrixSymbol& Er() const { return Er_; }      // e + 1
  const MatrixSymbol& u0() const { return u0_; }      // rows <psi_+|, <psi_-|

  // Context for the upper band with closed-form (exact-jet) ingredients.
  ExpansionContext context() const;

  BandSpec band() const { return BandSpec::index(1, 1, 1.0); }

  // Closed-form upper-band subprincipal block,
  //   h1 = sin^2(theta/2) {e, phi} + (1/2) sin(theta) {theta, phi},
  // with the scalar bracket {f,g} = f_p g_q - f_q g_p.  Vanishes without the
  // twist; oracle for the engine's h1 in the grid experiments.
  const MatrixSymbol& h1_upper() const { return h1_; }

private:
  TwoLevelParams prm_;
  FormalSymbol H_;
  MatrixSymbol pi0_, Er_, u0_, h1_;
};

}  // namespace adpt::models
