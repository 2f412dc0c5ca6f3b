#pragma once

#include "adpt/expansion.hpp"
#include "adpt/symbol.hpp"

namespace adpt::models {

// Born-Oppenheimer type symbol H(q,p) = kappa(p) 1 + V(q) with a banded
// matrix potential.  kappa is p^2/2, or the mollified p^2/(2(1+eta p^2))
// which is bounded with bounded derivatives (the energy-cutoff surrogate).
//
// Shipped potentials (all with closed-form q-dependent eigenframes, so the
// Berry potential A(q) = i <psi_a, grad_q psi_b> and the second-order block
// have independent oracles):
//   Real2      n=2 real symmetric, ell=1: real frame, A = 0
//   Complex2   n=2 hermitian b(q).sigma + trace part, ell=1: scalar A != 0
//   Real3Deg   n=3 real symmetric with a 2-fold degenerate band, ell=2:
//              matrix-valued A != 0
struct BOParams {
  enum class Potential { Real2, Complex2, Real3Deg };
  Potential potential = Potential::Complex2;
  int d = 1;              // slow degrees of freedom
  bool mollified = false; // kinetic mollifier
  double eta = 0.05;
  double gap = 1.0;       // minimum eigenvalue separation scale of V
  double amp = 0.6;       // angle amplitude of the frame rotation
};

class BornOppenheimer {
public:
  explicit BornOppenheimer(BOParams prm = {});

  const BOParams& params() const { return prm_; }
  int n() const { return n_; }
  int ell() const { return ell_; }

  const FormalSymbol& H() const { return H_; }
  const MatrixSymbol& pi0() const { return pi0_; }
  const MatrixSymbol& Er() const { return Er_; }   // kappa(p) + e_r(q)
  const MatrixSymbol& u0() const { return u0_; }
  ExpansionContext context() const;

  // Berry potential components A_j(q) (ell x ell hermitian), j < d.
  std::vector<MatrixXcd> berry_potential(const VectorXd& q) const;

  // Closed-form second-order band block:
  //   (1/2) sum A.A + (1/2)<grad psi,(1-pi0) grad psi> - <p.grad psi, R0 p.grad psi>
  MatrixXcd h2_closed(const PhasePoint& z) const;

  // Second-order effective symbol assembled through the square completion:
  //   (1/2)(p - eps A(q))^2 + e_r(q) + eps^2 (curvature - resolvent terms).
  MatrixXcd assembled_symbol(const PhasePoint& z, double eps) const;

  // max |kappa_raw - kappa_mollified| over |p| <= p_window (diagnostic).
  double mollifier_agreement(double p_window, int samples = 200) const;

private:
  BOParams prm_;
  int n_ = 2, ell_ = 1;
  FormalSymbol H_;
  MatrixSymbol pi0_, Er_, u0_;
};

}  // namespace adpt::models
