#include "adpt/qb_ops.hpp"

#include <Eigen/Eigenvalues>

namespace adpt::qbench {

Propagator::Propagator(const MatrixXcd& H, double eps) : eps_(eps) {
  double herm = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-9 * std::max(1.0, H.norm()))
    throw NumericError("Propagator: operator not hermitian (defect " + std::to_string(herm) + ")");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (H + H.adjoint()));
  if (es.info() != Eigen::Success) throw NumericError("Propagator: eigensolver failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

MatrixXcd Propagator::at(double time, TimeMode mode) const {
  double tau = mode == TimeMode::Microscopic ? time : time / eps_;
  Eigen::VectorXcd phases = ((Cplx(0, -1) * tau) * evals_.cast<Cplx>().array()).exp();
  return evecs_ * phases.asDiagonal() * evecs_.adjoint();
}

VectorXcd Propagator::apply(const VectorXcd& psi, double time, TimeMode mode) const {
  double tau = mode == TimeMode::Microscopic ? time : time / eps_;
  Eigen::VectorXcd phases = ((Cplx(0, -1) * tau) * evals_.cast<Cplx>().array()).exp();
  return evecs_ * (phases.asDiagonal() * (evecs_.adjoint() * psi));
}

WaveFn propagate(const MatrixXcd& H, const WaveFn& psi, double s, const Grid1D& g) {
  Propagator prop(H, g.eps);
  WaveFn out;
  out.values = prop.apply(psi.values, s, TimeMode::Microscopic);
  return out;
}

double op_norm(const MatrixXcd& M) {
  if (M.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(M.adjoint() * M);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

MatrixXcd project_spectral(const MatrixXcd& pi_hat, double* dist) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(pi_hat);
  const auto& ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > 0.25 && ev[i] < 0.75)
      throw ClusterError("project_spectral: eigenvalue " + std::to_string(ev[i]) +
                         " inside [1/4, 3/4]; spectrum not clustered near {0,1}");
  }
  MatrixXcd Pi = MatrixXcd::Zero(pi_hat.rows(), pi_hat.cols());
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > 0.5) Pi += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  if (dist) *dist = op_norm(Pi - pi_hat);
  return Pi;
}

namespace {

MatrixXcd inv_sqrt_psd(const MatrixXcd& M) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(M);
  Eigen::VectorXd w = es.eigenvalues();
  if (w.minCoeff() <= 0)
    throw NumericError("unitarize: u_hat* u_hat not positive definite");
  Eigen::VectorXd ws = w.array().rsqrt();
  return es.eigenvectors() * ws.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd nagy_pair(const MatrixXcd& a, const MatrixXcd& b) {
  const int n = static_cast<int>(a.rows());
  MatrixXcd one = MatrixXcd::Identity(n, n);
  MatrixXcd diff = a - b;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(diff);
  double dn = es.eigenvalues().cwiseAbs().maxCoeff();
  if (dn >= 1.0) throw TransportDomainError("unitarize: ||U Pi U* - Pi_r|| >= 1");
  Eigen::VectorXd w = (1.0 - es.eigenvalues().array().square()).rsqrt();
  MatrixXcd root = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  return root * (a * b + (one - a) * (one - b));
}

}  // namespace

MatrixXcd unitarize(const MatrixXcd& u_hat, const MatrixXcd& Pi, const MatrixXcd& Pi_r,
                    double* dist) {
  const int n = static_cast<int>(u_hat.rows());
  MatrixXcd gram = u_hat.adjoint() * u_hat;
  double gd = (gram - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (gd >= 1.0) throw NumericError("unitarize: ||u_hat* u_hat - 1|| >= 1");
  MatrixXcd Ut = u_hat * inv_sqrt_psd(gram);
  MatrixXcd rotated = Ut * Pi * Ut.adjoint();
  MatrixXcd W = nagy_pair(Pi_r, rotated);  // W rotated W* = Pi_r
  MatrixXcd U = W * Ut;
  if (dist) *dist = op_norm(U - u_hat);
  return U;
}

double leakage(const Propagator& prop, const MatrixXcd& proj, double time, TimeMode mode) {
  const int n = static_cast<int>(proj.rows());
  MatrixXcd evolved = prop.at(time, mode) * proj;
  MatrixXcd blocked = evolved - proj * evolved;
  return op_norm(blocked);
}

double egorov_error(const Propagator& heff, const MatrixXcd& a0_hat, const MatrixXcd& a0t_hat,
                    double t) {
  MatrixXcd U = heff.at(t, TimeMode::Macroscopic);
  MatrixXcd evolved = U.adjoint() * a0_hat * U;
  return op_norm(evolved - a0t_hat);
}

}  // namespace adpt::qbench
