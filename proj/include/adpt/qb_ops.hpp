#pragma once

#include "adpt/grid.hpp"

namespace adpt::qbench {

enum class TimeMode { Microscopic, Macroscopic };

// Cached hermitian eigendecomposition; exp(-iHt) to machine precision.
class Propagator {
public:
  Propagator(const MatrixXcd& H, double eps);

  // microscopic s: exp(-iHs); macroscopic t: exp(-iHt/eps)
  MatrixXcd at(double time, TimeMode mode) const;
  VectorXcd apply(const VectorXcd& psi, double time, TimeMode mode) const;
  const Eigen::VectorXd& eigenvalues() const { return evals_; }

private:
  double eps_;
  Eigen::VectorXd evals_;
  MatrixXcd evecs_;
};

WaveFn propagate(const MatrixXcd& H, const WaveFn& psi, double s, const Grid1D& g);

// operator 2-norm (largest singular value)
double op_norm(const MatrixXcd& M);

// Spectral purification of an almost-projector: sum of eigenprojections
// with eigenvalue > 1/2.  Requires the spectrum clustered near {0,1}
// (no eigenvalue inside [1/4, 3/4]); the distance of pi_hat to the result
// is reported through *dist when non-null.
MatrixXcd project_spectral(const MatrixXcd& pi_hat, double* dist = nullptr);

// True unitary from an almost-unitary: U = W u_hat (u_hat* u_hat)^{-1/2},
// where W is the Nagy rotation taking U_tilde Pi U_tilde* to Pi_r, so that
// U Pi U* = Pi_r holds to machine precision.  ||U - u_hat|| reported via
// *dist when non-null.
MatrixXcd unitarize(const MatrixXcd& u_hat, const MatrixXcd& Pi, const MatrixXcd& Pi_r,
                    double* dist = nullptr);

// ||(1 - proj) exp(-iH tau) proj|| with tau = time (microscopic) or
// time/eps (macroscopic).
double leakage(const Propagator& prop, const MatrixXcd& proj, double time, TimeMode mode);

// || exp(i h t/eps) W(a0) exp(-i h t/eps) - W(a0(t)) ||
double egorov_error(const Propagator& heff, const MatrixXcd& a0_hat, const MatrixXcd& a0t_hat,
                    double t);

}  // namespace adpt::qbench
