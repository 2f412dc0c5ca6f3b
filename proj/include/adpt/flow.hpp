#pragma once

#include <optional>
#include <vector>

#include "adpt/symbol.hpp"

namespace adpt {

// Classical flow samples of the scalar Hamiltonian E_r, integrated with the
// classic 4th-order one-step method.  Optionally carries the tangent flow
// D\Phi^t (variational equation driven by the Hessian of E_r).
struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<PhasePoint> points;
  std::vector<double> energy;
  std::vector<Eigen::MatrixXd> tangent;  // 2d x 2d, empty when not requested

  int steps() const { return static_cast<int>(times.size()) - 1; }
  const PhasePoint& at(int k) const { return points[k]; }
  double energy_drift() const;
  int index_of(double t) const;  // k with times[k] ~= t
};

struct FlowOptions {
  bool with_tangent = false;
  // warn hook, called when the gap check callback reports a violation
  std::function<bool(const PhasePoint&)> gap_ok;
};

Trajectory classical_flow(const MatrixSymbol& Er, const PhasePoint& z0, double T, double dt,
                          FlowOptions opts = {});

// One 4th-order step of the Hamiltonian flow of Er from z (dt may be negative).
PhasePoint flow_step(const MatrixSymbol& Er, const PhasePoint& z, double dt);

// Unitary transport matrix D(q,p,t) along a trajectory:
//   dD/dt = -i h1(Phi^t(z)) D,   D(0) = 1,
// realized as the exponential of the midpoint-frozen generator, so every
// step is exactly unitary.
struct SpinFrame {
  const Trajectory* traj = nullptr;
  std::vector<MatrixXcd> D;  // per time sample
  double unitarity_defect() const;
};

SpinFrame spin_transport(const MatrixSymbol& h1, const MatrixSymbol& Er, const Trajectory& traj);

// Spin vector under ds/dt = -s x Omega(t), with exact-rotation
// (norm-preserving) midpoint steps.
struct SpinVector {
  std::vector<double> times;
  std::vector<Eigen::Vector3d> s;
  double norm_drift() const;
};

SpinVector bmt_evolve(const std::function<Eigen::Vector3d(double)>& Omega_along,
                      const Eigen::Vector3d& s0, double T, double dt);

}  // namespace adpt
