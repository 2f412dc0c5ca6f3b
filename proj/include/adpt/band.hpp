#pragma once

#include <optional>
#include <vector>

#include "adpt/symbol.hpp"

namespace adpt {

// Selection of the relevant band: either a window of sorted-eigenvalue
// indices [first, first+ell) or an energy window [e_lo, e_hi].
struct BandSpec {
  enum class Mode { Index, Energy };
  Mode mode = Mode::Index;
  int first = 0;
  int ell = 1;
  double e_lo = 0.0, e_hi = 0.0;
  double gap_floor = 1e-6;
  double degeneracy_rel_tol = 1e-8;

  static BandSpec index(int first, int ell, double gap_floor = 1e-6);
  static BandSpec energy(double lo, double hi, int ell, double gap_floor = 1e-6);
};

// Pointwise spectral data of the principal symbol at z.
struct EigFrame {
  PhasePoint z;
  double E_r = 0.0;
  MatrixXcd pi0;    // rank-ell orthogonal projector
  MatrixXcd basis;  // n x ell, column-orthonormal, H0 basis = E_r basis
  double gap = 0.0; // distance from the band to the rest of the spectrum
};

EigFrame eig_frame(const MatrixSymbol& H0, const PhasePoint& z, const BandSpec& band);

MatrixXcd spectral_projector(const MatrixSymbol& H0, const PhasePoint& z, const BandSpec& band);

double band_energy(const MatrixSymbol& H0, const PhasePoint& z, const BandSpec& band);

// R0(E_r)(z) = (H0(z) - E_r)^{-1} (1 - pi0(z)); satisfies R0 pi0 = pi0 R0 = 0.
MatrixXcd reduced_resolvent(const MatrixSymbol& H0, const PhasePoint& z, const BandSpec& band);

struct GapReport {
  double min_gap = 0.0;
  PhasePoint argmin;
  double band_width_sup = 0.0;  // sup over samples of the band's spread
  std::vector<PhasePoint> violations;
  bool ok(double floor) const { return min_gap >= floor && violations.empty(); }
};

GapReport gap_check(const MatrixSymbol& H0, const BandSpec& band,
                    const std::vector<PhasePoint>& samples);

// Sz.-Nagy intertwiner: w pi_b w* = pi_a, unitary whenever ||pi_a-pi_b|| < 1.
MatrixXcd nagy_transport(const MatrixXcd& pi_a, const MatrixXcd& pi_b);

// Gauge-fixed eigenbasis jets: the frame at a stencil point z' is defined by
// transporting the frame at z with nagy_transport(pi0(z'), pi0(z)), which
// removes the eigensolver's arbitrary per-point gauge.  Central differences
// of the transported frame then converge to honest derivatives.
MatJet smooth_frame(const MatrixSymbol& H0, const BandSpec& band, const PhasePoint& z, int K,
                    double fd_h0 = 1e-4, double fd_c = 3.0);

// pi0 / E_r as symbols backed by the pointwise eigensolver (FD jets).
MatrixSymbol spectral_projector_symbol(const MatrixSymbol& H0, const BandSpec& band);
MatrixSymbol band_energy_symbol(const MatrixSymbol& H0, const BandSpec& band);

// Generic u0(z): a fixed eigenframe at the anchor point rotated to every z by
// Nagy transport, so u0(z) pi0(z) u0(z)* = diag(1_ell, 0) =: pi_r everywhere
// the transport is defined.
MatrixSymbol anchored_frame_unitary(const MatrixSymbol& H0, const BandSpec& band,
                                    const PhasePoint& anchor);

}  // namespace adpt
