#pragma once

#include <functional>

#include "adpt/expansion.hpp"
#include "adpt/symbol.hpp"

namespace adpt::models {

// Two-level avoided-crossing family for the time-adiabatic theory:
//   H(t) = zeta(t) sigma3 + delta sigma1 + trace(t) 1,
//   zeta(t) = drive * tanh(rate * t),
// with gap 2 sqrt(zeta^2 + delta^2) >= 2 delta.  All closed forms are
// AD-able, so the Howland symbol K(t, eta) = eta + H(t) has exact jets.
struct AvoidedCrossingParams {
  double delta = 0.4;
  double drive = 1.0;
  double rate = 0.8;
  double trace_amp = 0.2;
};

class AvoidedCrossing {
public:
  explicit AvoidedCrossing(AvoidedCrossingParams prm = {});

  MatrixXcd H(double t) const;
  MatrixXcd dH(double t) const;
  double e_lower(double t) const;        // band energy e_r(t), lower level
  MatrixXcd pi0(double t) const;
  MatJet H_jet(double t, int K) const;   // jets in t (variable 0 of 2)
  MatJet pi0_jet(double t, int K) const;

  const AvoidedCrossingParams& params() const { return prm_; }

private:
  AvoidedCrossingParams prm_;
};

// Kato transport along t: solves d/dt u0*(t) = [dpi0/dt, pi0] u0*(t),
// u0*(0) = 1, with unitary midpoint-exponential steps.  u0(t) pi0(t) u0*(t)
// = pi0(0) for all t.
class KatoFrame {
public:
  KatoFrame(const AvoidedCrossing& model, double t_max, double dt = 1e-3);

  MatrixXcd u0(double t) const;        // interpolating integration cache
  MatrixXcd u0_star(double t) const { return u0(t).adjoint(); }
  MatrixXcd pi_r() const { return pir_; }
  double unitarity_defect() const;     // max over stored steps

  // t-jets of u0 lifted through the transport ODE.
  MatJet u0_jet(double t, int K) const;

  const AvoidedCrossing& model() const { return model_; }

private:
  const AvoidedCrossing model_;
  double dt_;
  std::vector<MatrixXcd> fwd_, bwd_;  // u0*(k dt) forward / backward
  MatrixXcd pir_;
  MatrixXcd u0_star_at(double t) const;
};

// Extended-phase-space context: K(t,eta) = eta + H(t) on d=1 with q := t,
// p := eta.  The eta dependence is affine, so all constructed terms are
// functions of t alone.
ExpansionContext howland_context(const std::shared_ptr<KatoFrame>& frame);

// Explicit effective Hamiltonian through second order:
//   h(t) = e_r(t) - i eps <phi, phidot> + (eps^2/2) <phidot, R0 phidot> + ...
// returned as the three coefficient matrices (ell x ell) at time t.
struct TimeAdiabaticH {
  MatrixXcd h0, h1, h2;
};
TimeAdiabaticH time_adiabatic_h(const KatoFrame& frame, double t);

}  // namespace adpt::models
