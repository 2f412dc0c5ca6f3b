#include "adpt/flow.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace adpt {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// z as a flat vector (q, p)
VectorXd pack(const PhasePoint& z) {
  VectorXd v(2 * z.dim());
  v.head(z.dim()) = z.q;
  v.tail(z.dim()) = z.p;
  return v;
}

PhasePoint unpack(const VectorXd& v) {
  PhasePoint z;
  int d = static_cast<int>(v.size()) / 2;
  z.q = v.head(d);
  z.p = v.tail(d);
  return z;
}

// Hamiltonian vector field (dq, dp) = (dEr/dp, -dEr/dq)
VectorXd field(const MatrixSymbol& Er, const VectorXd& v) {
  PhasePoint z = unpack(v);
  int d = z.dim();
  MatJet j = Er.jet(z, 1);
  VectorXd f(2 * d);
  for (int k = 0; k < d; ++k) {
    f[k] = j.deriv(d + k).value()(0, 0).real();
    f[d + k] = -j.deriv(k).value()(0, 0).real();
  }
  return f;
}

// J Hess(Er), the right-hand side matrix of the variational equation
MatrixXd tangent_rhs(const MatrixSymbol& Er, const VectorXd& v) {
  PhasePoint z = unpack(v);
  int d = z.dim();
  MatJet j = Er.jet(z, 2);
  MatrixXd hess(2 * d, 2 * d);
  for (int a = 0; a < 2 * d; ++a) {
    MatJet da = j.deriv(a);
    for (int b = a; b < 2 * d; ++b) {
      double val = da.deriv(b).value()(0, 0).real();
      hess(a, b) = val;
      hess(b, a) = val;
    }
  }
  MatrixXd J = MatrixXd::Zero(2 * d, 2 * d);
  J.topRightCorner(d, d) = MatrixXd::Identity(d, d);
  J.bottomLeftCorner(d, d) = -MatrixXd::Identity(d, d);
  return J * hess;
}

}  // namespace

double Trajectory::energy_drift() const {
  double e0 = energy.front(), worst = 0.0;
  for (double e : energy) worst = std::max(worst, std::abs(e - e0));
  return worst;
}

int Trajectory::index_of(double t) const {
  int k = static_cast<int>(std::llround(t / dt));
  if (k < 0 || k >= static_cast<int>(times.size()) || std::abs(times[k] - t) > 1e-9 * std::max(1.0, std::abs(t)))
    throw Error("Trajectory::index_of: time not on the stored grid");
  return k;
}

PhasePoint flow_step(const MatrixSymbol& Er, const PhasePoint& z, double dt) {
  VectorXd y = pack(z);
  VectorXd k1 = field(Er, y);
  VectorXd k2 = field(Er, y + 0.5 * dt * k1);
  VectorXd k3 = field(Er, y + 0.5 * dt * k2);
  VectorXd k4 = field(Er, y + dt * k3);
  return unpack(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

Trajectory classical_flow(const MatrixSymbol& Er, const PhasePoint& z0, double T, double dt,
                          FlowOptions opts) {
  int steps = static_cast<int>(std::llround(T / dt));
  Trajectory tr;
  tr.dt = dt;
  tr.times.reserve(steps + 1);
  tr.points.reserve(steps + 1);
  tr.energy.reserve(steps + 1);
  const int d = z0.dim();
  VectorXd y = pack(z0);
  MatrixXd M = MatrixXd::Identity(2 * d, 2 * d);
  auto record = [&](int k) {
    PhasePoint z = unpack(y);
    if (!z.finite()) throw NumericError("classical_flow: state not finite at step " + std::to_string(k));
    if (opts.gap_ok && !opts.gap_ok(z)) {
      // diagnostic only; the flow itself continues
    }
    tr.times.push_back(k * dt);
    tr.points.push_back(z);
    tr.energy.push_back(Er(z)(0, 0).real());
    if (opts.with_tangent) tr.tangent.push_back(M);
  };
  record(0);
  for (int k = 0; k < steps; ++k) {
    VectorXd k1 = field(Er, y);
    VectorXd k2 = field(Er, y + 0.5 * dt * k1);
    VectorXd k3 = field(Er, y + 0.5 * dt * k2);
    VectorXd k4 = field(Er, y + dt * k3);
    if (opts.with_tangent) {
      MatrixXd a1 = tangent_rhs(Er, y) * M;
      MatrixXd a2 = tangent_rhs(Er, y + 0.5 * dt * k1) * (M + 0.5 * dt * a1);
      MatrixXd a3 = tangent_rhs(Er, y + 0.5 * dt * k2) * (M + 0.5 * dt * a2);
      MatrixXd a4 = tangent_rhs(Er, y + dt * k3) * (M + dt * a3);
      M += (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    }
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    record(k + 1);
  }
  return tr;
}

double SpinFrame::unitarity_defect() const {
  double worst = 0.0;
  if (D.empty()) return worst;
  MatrixXcd one = MatrixXcd::Identity(D[0].rows(), D[0].cols());
  for (const auto& m : D) worst = std::max(worst, (m.adjoint() * m - one).cwiseAbs().maxCoeff());
  return worst;
}

SpinFrame spin_transport(const MatrixSymbol& h1, const MatrixSymbol& Er, const Trajectory& traj) {
  SpinFrame f;
  f.traj = &traj;
  const int ell = h1.n();
  f.D.reserve(traj.times.size());
  MatrixXcd D = MatrixXcd::Identity(ell, ell);
  f.D.push_back(D);
  for (int k = 0; k < traj.steps(); ++k) {
    PhasePoint mid = flow_step(Er, traj.points[k], 0.5 * traj.dt);
    MatrixXcd h = h1(mid);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    Eigen::VectorXcd phases =
        ((Cplx(0, -1) * traj.dt) * es.eigenvalues().cast<Cplx>().array()).exp();
    MatrixXcd step = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    D = step * D;
    f.D.push_back(D);
  }
  return f;
}

double SpinVector::norm_drift() const {
  double n0 = s.front().norm(), worst = 0.0;
  for (const auto& v : s) worst = std::max(worst, std::abs(v.norm() - n0));
  return worst;
}

SpinVector bmt_evolve(const std::function<Eigen::Vector3d(double)>& Omega_along,
                      const Eigen::Vector3d& s0, double T, double dt) {
  SpinVector out;
  int steps = static_cast<int>(std::llround(T / dt));
  out.times.reserve(steps + 1);
  out.s.reserve(steps + 1);
  Eigen::Vector3d s = s0;
  out.times.push_back(0.0);
  out.s.push_back(s);
  for (int k = 0; k < steps; ++k) {
    Eigen::Vector3d Om = Omega_along((k + 0.5) * dt);
    double w = Om.norm();
    // ds/dt = -s x Om = Om x s: exact rotation about Om by angle w dt
    if (w > 0) {
      Eigen::Vector3d axis = Om / w;
      double ang = w * dt;
      s = s * std::cos(ang) + axis.cross(s) * std::sin(ang) +
          axis * (axis.dot(s)) * (1.0 - std::cos(ang));
    }
    out.times.push_back((k + 1) * dt);
    out.s.push_back(s);
  }
  return out;
}

}  // namespace adpt
