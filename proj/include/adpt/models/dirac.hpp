#pragma once

#include "adpt/expansion.hpp"
#include "adpt/symbol.hpp"

namespace adpt::models {

// Dirac symbol on d=3, n=4:
//   H_D(q,p) = c alpha.(p - (e/c)A(q)) + beta m c^2 + e phi(q),
// with smooth bounded potentials.  Closed forms shipped as oracles:
// p0, E+-, P+-, the spin-basis eigenvectors psi+-, the Foldy-Wouthuysen
// u0, the velocity v, gamma = p0/(mc), the precession vector Omega and
// h_{e,1} = -(hbar/2) sigma.Omega.
struct DiracParams {
  double hbar = 1.0, c = 1.0, m = 1.0, e = 1.0;
  // trigonometric field amplitudes (bounded with bounded derivatives)
  double a_amp = 0.3, phi_amp = 0.4, k_field = 0.7;
};

class Dirac {
public:
  explicit Dirac(DiracParams prm = {});

  const DiracParams& params() const { return prm_; }
  const FormalSymbol& H() const { return H_; }
  const MatrixSymbol& pi0() const { return pi0_; }  // electron band P_+
  const MatrixSymbol& Er() const { return Er_; }    // E_+ = c p0 + e phi
  const MatrixSymbol& u0() const { return u0_; }    // Foldy-Wouthuysen
  ExpansionContext context() const;                 // moyal_scale = hbar

  Eigen::Vector3d A_field(const Eigen::Vector3d& q) const;
  double phi_field(const Eigen::Vector3d& q) const;
  Eigen::Vector3d B_field(const Eigen::Vector3d& q) const;  // curl A
  Eigen::Vector3d E_field(const Eigen::Vector3d& q) const;  // -grad phi

  double p0(const PhasePoint& z) const;
  Eigen::Vector3d velocity(const PhasePoint& z) const;
  double gamma(const PhasePoint& z) const;
  Eigen::Vector3d Omega(const PhasePoint& z) const;           // (ODef) form
  Eigen::Vector3d Omega_h1d_form(const PhasePoint& z) const;  // (h1D) inner form
  MatrixXcd h1_closed(const PhasePoint& z) const;  // -(hbar/2) sigma.Omega

  MatrixXcd P_plus(const PhasePoint& z) const;
  MatrixXcd P_minus(const PhasePoint& z) const;
  MatrixXcd psi_pm(const PhasePoint& z) const;  // 4 x 2 electron eigenvectors

private:
  DiracParams prm_;
  FormalSymbol H_;
  MatrixSymbol pi0_, Er_, u0_;
};

// One-dimensional Dirac variant for the grid harness (d=1, n=2):
//   H = c sigma1 (p - A(q)) + sigma3 m c^2 + phi(q).
struct Dirac1D {
  double c = 1.0, m = 1.0;
  double a_amp = 0.2, phi_amp = 0.3, L = 8.0;  // L-periodic fields
  bool windowed = false;
  double p_cut = 0.0, sharp = 0.0;

  FormalSymbol H() const;
  MatrixSymbol Er_plus() const;  // phi + c sqrt(m^2 c^2 + k^2)
};

}  // namespace adpt::models
