#include "adpt/models/howland.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace adpt::models {

namespace {

template <class S>
struct ACFields {
  AvoidedCrossingParams prm;
  void at(const S& t, S& zeta, S& r, S& tr) const {
    zeta = prm.drive * tanh(prm.rate * t);
    r = sqrt(zeta * zeta + prm.delta * prm.delta);
    tr = prm.trace_amp * cos(0.7 * t);
  }
  GenMat<S> H(const S& t) const {
    S zeta, r, tr;
    at(t, zeta, r, tr);
    GenMat<S> m(2, 2);
    m(0, 0) = tr + zeta;
    m(1, 1) = tr - zeta;
    m(0, 1) = prm.delta + 0.0 * t;
    m(1, 0) = m(0, 1);
    return m;
  }
  // lower level projector (1 - n.sigma)/2, n = (delta, 0, zeta)/r
  GenMat<S> pi0(const S& t) const {
    S zeta, r, tr;
    at(t, zeta, r, tr);
    GenMat<S> m(2, 2);
    m(0, 0) = 0.5 * (1.0 - zeta / r);
    m(1, 1) = 0.5 * (1.0 + zeta / r);
    m(0, 1) = -0.5 * prm.delta / r;
    m(1, 0) = m(0, 1);
    return m;
  }
};

MatrixXcd to_mat(const GenMat<Cplx>& g) {
  MatrixXcd m(g.rows, g.cols);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) m(i, j) = g(i, j);
  return m;
}

MatJet to_jet(const GenMat<Taylor>& g) {
  MatJet j(g(0, 0).table(), g(0, 0).order(), g.rows, g.cols);
  for (int i = 0; i < g.rows; ++i)
    for (int jj = 0; jj < g.cols; ++jj) j.set_entry(i, jj, g(i, jj));
  return j;
}

MatrixXcd expm_antihermitian(const MatrixXcd& C, double dt) {
  // C antihermitian: diagonalize iC
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(Cplx(0, 1) * C);
  Eigen::VectorXcd phases =
      ((Cplx(0, -1) * dt) * es.eigenvalues().cast<Cplx>().array()).exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

AvoidedCrossing::AvoidedCrossing(AvoidedCrossingParams prm) : prm_(prm) {}

MatrixXcd AvoidedCrossing::H(double t) const {
  ACFields<Cplx> f{prm_};
  return to_mat(f.H(Cplx(t)));
}

MatrixXcd AvoidedCrossing::dH(double t) const { return H_jet(t, 1).deriv(0).value(); }

double AvoidedCrossing::e_lower(double t) const {
  double zeta = prm_.drive * std::tanh(prm_.rate * t);
  double r = std::hypot(zeta, prm_.delta);
  return prm_.trace_amp * std::cos(0.7 * t) - r;
}

MatrixXcd AvoidedCrossing::pi0(double t) const {
  ACFields<Cplx> f{prm_};
  return to_mat(f.pi0(Cplx(t)));
}

MatJet AvoidedCrossing::H_jet(double t, int K) const {
  auto mis = MultiIndexSet::get(2, K);
  Taylor tt = Taylor::variable(mis, K, 0, t);
  ACFields<Taylor> f{prm_};
  return to_jet(f.H(tt));
}

MatJet AvoidedCrossing::pi0_jet(double t, int K) const {
  auto mis = MultiIndexSet::get(2, K);
  Taylor tt = Taylor::variable(mis, K, 0, t);
  ACFields<Taylor> f{prm_};
  return to_jet(f.pi0(tt));
}

KatoFrame::KatoFrame(const AvoidedCrossing& model, double t_max, double dt)
    : model_(model), dt_(dt) {
  pir_ = model_.pi0(0.0);
  auto commutator = [this](double t) -> MatrixXcd {
    MatJet pj = model_.pi0_jet(t, 1);
    MatrixXcd pdot = pj.deriv(0).value();
    MatrixXcd p = pj.value();
    return pdot * p - p * pdot;
  };
  int steps = static_cast<int>(std::ceil(t_max / dt_)) + 1;
  fwd_.resize(steps + 1);
  bwd_.resize(steps + 1);
  fwd_[0] = bwd_[0] = MatrixXcd::Identity(2, 2);
  for (int k = 0; k < steps; ++k) {
    double tm = (k + 0.5) * dt_;
    fwd_[k + 1] = expm_antihermitian(commutator(tm), dt_) * fwd_[k];
    bwd_[k + 1] = expm_antihermitian(commutator(-tm), -dt_) * bwd_[k];
  }
}

MatrixXcd KatoFrame::u0_star_at(double t) const {
  const auto& bank = t >= 0 ? fwd_ : bwd_;
  double at = std::abs(t);
  int k = static_cast<int>(std::floor(at / dt_ + 1e-12));
  k = std::min<int>(k, static_cast<int>(bank.size()) - 1);
  double rem = at - k * dt_;
  MatrixXcd u = bank[k];
  if (std::abs(rem) > 1e-14) {
    double sign = t >= 0 ? 1.0 : -1.0;
    double tm = sign * (k * dt_ + 0.5 * rem);
    MatJet pj = model_.pi0_jet(tm, 1);
    MatrixXcd pdot = pj.deriv(0).value();
    MatrixXcd p = pj.value();
    u = expm_antihermitian(pdot * p - p * pdot, sign * rem) * u;
  }
  return u;
}

MatrixXcd KatoFrame::u0(double t) const { return u0_star_at(t).adjoint(); }

double KatoFrame::unitarity_defect() const {
  double worst = 0.0;
  MatrixXcd one = MatrixXcd::Identity(2, 2);
  for (const auto& u : fwd_) worst = std::max(worst, (u.adjoint() * u - one).norm());
  for (const auto& u : bwd_) worst = std::max(worst, (u.adjoint() * u - one).norm());
  return worst;
}

MatJet KatoFrame::u0_jet(double t, int K) const {
  // lift the transport ODE: (m+1) U*_{m+1} = sum_{i+j=m} C_i U*_j,
  // all coefficients pure powers of t (variable 0), eta-independent.
  auto mis = MultiIndexSet::get(2, K);
  MatJet pj = model_.pi0_jet(t, K + 1);
  MatJet C = pj.deriv(0) * pj - pj * pj.deriv(0);  // order K
  // positions of t^m
  std::vector<int> tpow(K + 2, -1);
  for (int m = 0; m <= K; ++m) {
    std::vector<int> g(2, 0);
    g[0] = m;
    tpow[m] = mis->find(g);
  }
  auto cmis = C.table();
  std::vector<int> ctpow(K + 1, -1);
  for (int m = 0; m <= K; ++m) {
    std::vector<int> g(2, 0);
    g[0] = m;
    ctpow[m] = cmis->find(g);
  }
  std::vector<MatrixXcd> ustar(K + 1);
  ustar[0] = u0_star_at(t);
  for (int m = 0; m + 1 <= K; ++m) {
    MatrixXcd acc = MatrixXcd::Zero(2, 2);
    for (int i = 0; i <= m; ++i) {
      if (ctpow[i] < C.ncoeff() && ctpow[i] >= 0) acc += C.coeff(ctpow[i]) * ustar[m - i];
    }
    ustar[m + 1] = acc / (m + 1);
  }
  MatJet out(mis, K, 2, 2);
  for (int m = 0; m <= K; ++m) out.coeff(tpow[m]) = ustar[m].adjoint();
  return out;
}

namespace {

struct KEval {
  AvoidedCrossingParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    ACFields<S> f{prm};
    GenMat<S> m = f.H(q[0]);
    m(0, 0) = m(0, 0) + p[0];
    m(1, 1) = m(1, 1) + p[0];
    return m;
  }
};

struct HowPiEval {
  AvoidedCrossingParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    ACFields<S> f{prm};
    (void)p;
    return f.pi0(q[0]);
  }
};

struct HowErEval {
  AvoidedCrossingParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    ACFields<S> f{prm};
    S zeta, r, tr;
    f.at(q[0], zeta, r, tr);
    GenMat<S> m(1, 1);
    m(0, 0) = p[0] + tr - r;
    return m;
  }
};

}  // namespace

ExpansionContext howland_context(const std::shared_ptr<KatoFrame>& frame) {
  const AvoidedCrossingParams prm = frame->model().params();

  ExpansionContext ctx;
  ctx.H = FormalSymbol::principal(make_ad_symbol(1, 2, true, KEval{prm}));
  ctx.pi0 = make_ad_symbol(1, 2, true, HowPiEval{prm});
  ctx.Er = make_ad_symbol(1, 1, true, HowErEval{prm});
  auto fr = frame;
  auto u0_eval = [fr](const PhasePoint& z) { return fr->u0(z.q[0]); };
  auto u0_jets = [fr](const PhasePoint& z, int K) { return fr->u0_jet(z.q[0], K); };
  ctx.u0 = MatrixSymbol(1, 2, false, u0_eval, u0_jets, 8);
  ctx.ell = 1;
  ctx.gap_floor = prm.delta;
  ctx.pi_r = frame->pi_r();
  return ctx;
}

TimeAdiabaticH time_adiabatic_h(const KatoFrame& frame, double t) {
  const AvoidedCrossing& model = frame.model();
  MatrixXcd pr = frame.pi_r();
  // phi(0): eigenvector of pi0(0) with eigenvalue 1
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(pr);
  Eigen::VectorXcd phi0 = es.eigenvectors().col(1);  // ascending order: 0 then 1
  MatrixXcd ustar = frame.u0(t).adjoint();
  Eigen::VectorXcd phi = ustar * phi0;
  MatJet pj = model.pi0_jet(t, 1);
  MatrixXcd pdot = pj.deriv(0).value();
  MatrixXcd p = pj.value();
  Eigen::VectorXcd phidot = (pdot * p - p * pdot) * phi;

  double er = model.e_lower(t);
  MatrixXcd H = model.H(t);
  MatrixXcd one = MatrixXcd::Identity(2, 2);
  MatrixXcd R0 = (H - er * one + p).partialPivLu().inverse() * (one - p);

  TimeAdiabaticH out;
  out.h0 = MatrixXcd::Constant(1, 1, er);
  out.h1 = MatrixXcd::Constant(1, 1, Cplx(0, -1) * (phi.adjoint() * phidot)(0, 0));
  out.h2 = MatrixXcd::Constant(1, 1, 0.5 * (phidot.adjoint() * (R0 * phidot))(0, 0));
  return out;
}

}  // namespace adpt::models
