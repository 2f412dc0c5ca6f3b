#include "adpt/models/dirac.hpp"

#include <cmath>

namespace adpt::models {

namespace {

// bounded smooth fields with bounded derivatives
template <class S>
std::array<S, 3> a_field(const DiracParams& prm, const std::vector<S>& q) {
  double k = prm.k_field;
  return {prm.a_amp * sin(k * q[2]) + 0.5 * prm.a_amp * cos(k * q[1]),
          prm.a_amp * cos(k * q[0]) - 0.3 * prm.a_amp * sin(k * q[2]),
          prm.a_amp * sin(k * q[1] + 0.4) + 0.2 * prm.a_amp * cos(k * q[0])};
}

template <class S>
S phi_fn(const DiracParams& prm, const std::vector<S>& q) {
  double k = prm.k_field;
  return prm.phi_amp * (cos(k * q[0]) + 0.6 * sin(k * q[1] + 0.2) + 0.4 * cos(k * q[2] + 0.9));
}

template <class S>
std::array<S, 3> kinetic_momentum(const DiracParams& prm, const std::vector<S>& q,
                                  const std::vector<S>& p) {
  auto A = a_field(prm, q);
  std::array<S, 3> kk{p[0] - (prm.e / prm.c) * A[0], p[1] - (prm.e / prm.c) * A[1],
                      p[2] - (prm.e / prm.c) * A[2]};
  return kk;
}

template <class S>
S p0_of(const DiracParams& prm, const std::array<S, 3>& k) {
  return sqrt(prm.m * prm.m * prm.c * prm.c + k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
}

// 2x2 blocks: sigma.k
template <class S>
GenMat<S> sigma_dot(const std::array<S, 3>& k) {
  GenMat<S> m(2, 2);
  m(0, 0) = k[2];
  m(1, 1) = -k[2];
  m(0, 1) = k[0] - Cplx(0, 1) * k[1];
  m(1, 0) = k[0] + Cplx(0, 1) * k[1];
  return m;
}

struct HEval {
  DiracParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    auto k = kinetic_momentum(prm, q, p);
    auto sk = sigma_dot(k);
    S ph = phi_fn(prm, q);
    double mc2 = prm.m * prm.c * prm.c;
    GenMat<S> m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = 0.0 * q[0];
    for (int i = 0; i < 2; ++i) {
      m(i, i) = prm.e * ph + mc2;
      m(2 + i, 2 + i) = prm.e * ph - mc2;
      for (int j = 0; j < 2; ++j) {
        m(i, 2 + j) = m(i, 2 + j) + prm.c * sk(i, j);
        m(2 + i, j) = m(2 + i, j) + prm.c * sk(i, j);
      }
    }
    return m;
  }
};

struct PiEval {
  DiracParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    auto k = kinetic_momentum(prm, q, p);
    S p0 = p0_of(prm, k);
    auto sk = sigma_dot(k);
    double mc = prm.m * prm.c;
    GenMat<S> m(4, 4);
    // P_+ = (1 + (alpha.k + beta m c)/p0) / 2
    for (int i = 0; i < 2; ++i) {
      m(i, i) = 0.5 * (1.0 + mc / p0);
      m(2 + i, 2 + i) = 0.5 * (1.0 - mc / p0);
      for (int j = 0; j < 2; ++j) {
        m(i, 2 + j) = 0.5 * sk(i, j) / p0;
        m(2 + i, j) = 0.5 * sk(i, j) / p0;
      }
    }
    return m;
  }
};

struct ErEval {
  DiracParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    auto k = kinetic_momentum(prm, q, p);
    GenMat<S> m(1, 1);
    m(0, 0) = prm.c * p0_of(prm, k) + prm.e * phi_fn(prm, q);
    return m;
  }
};

// u0 = ((p0 + mc) 1 + beta alpha.k) / sqrt(2 p0 (p0 + mc)); rows 1,2 are the
// spin-basis electron bras <psi_+|, <psi_-| (Foldy-Wouthuysen with fields).
struct U0Eval {
  DiracParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    auto k = kinetic_momentum(prm, q, p);
    S p0 = p0_of(prm, k);
    double mc = prm.m * prm.c;
    S nrm = 1.0 / sqrt(2.0 * p0 * (p0 + mc));
    auto sk = sigma_dot(k);
    GenMat<S> m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = 0.0 * q[0];
    // beta alpha = [[0, sigma],[-sigma, 0]]
    for (int i = 0; i < 2; ++i) {
      m(i, i) = (p0 + mc) * nrm;
      m(2 + i, 2 + i) = (p0 + mc) * nrm;
      for (int j = 0; j < 2; ++j) {
        m(i, 2 + j) = sk(i, j) * nrm;
        m(2 + i, j) = -sk(i, j) * nrm;
      }
    }
    return m;
  }
};

}  // namespace

Dirac::Dirac(DiracParams prm) : prm_(prm) {
  H_ = FormalSymbol::principal(make_ad_symbol(3, 4, true, HEval{prm_}));
  pi0_ = make_ad_symbol(3, 4, true, PiEval{prm_});
  Er_ = make_ad_symbol(3, 1, true, ErEval{prm_});
  u0_ = make_ad_symbol(3, 4, false, U0Eval{prm_});
}

ExpansionContext Dirac::context() const {
  ExpansionContext ctx;
  ctx.H = H_;
  ctx.pi0 = pi0_;
  ctx.Er = Er_;
  ctx.u0 = u0_;
  ctx.ell = 2;
  ctx.gap_floor = prm_.m * prm_.c * prm_.c;
  MatrixXcd pr = MatrixXcd::Zero(4, 4);
  pr(0, 0) = pr(1, 1) = 1.0;
  ctx.pi_r = pr;
  ctx.moyal_scale = prm_.hbar;
  return ctx;
}

namespace {
std::vector<Cplx> to_cvec(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }
}  // namespace

Eigen::Vector3d Dirac::A_field(const Eigen::Vector3d& q) const {
  auto a = a_field(prm_, to_cvec(q));
  return {a[0].real(), a[1].real(), a[2].real()};
}

double Dirac::phi_field(const Eigen::Vector3d& q) const {
  return phi_fn(prm_, to_cvec(q)).real();
}

Eigen::Vector3d Dirac::B_field(const Eigen::Vector3d& q) const {
  auto mis = MultiIndexSet::get(6, 1);
  std::vector<Taylor> qt(3), pt(3);
  for (int i = 0; i < 3; ++i) {
    qt[i] = Taylor::variable(mis, 1, i, q[i]);
    pt[i] = Taylor::constant(mis, 1, 0.0);
  }
  auto A = a_field(prm_, qt);
  auto d = [&](int comp, int var) { return A[comp].deriv(var).value().real(); };
  return {d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)};
}

Eigen::Vector3d Dirac::E_field(const Eigen::Vector3d& q) const {
  auto mis = MultiIndexSet::get(6, 1);
  std::vector<Taylor> qt(3);
  for (int i = 0; i < 3; ++i) qt[i] = Taylor::variable(mis, 1, i, q[i]);
  Taylor ph = phi_fn(prm_, qt);
  return {-ph.deriv(0).value().real(), -ph.deriv(1).value().real(), -ph.deriv(2).value().real()};
}

double Dirac::p0(const PhasePoint& z) const {
  std::vector<Cplx> q = to_cvec(z.q), p = to_cvec(z.p);
  return p0_of(prm_, kinetic_momentum(prm_, q, p)).real();
}

Eigen::Vector3d Dirac::velocity(const PhasePoint& z) const {
  std::vector<Cplx> q = to_cvec(z.q), p = to_cvec(z.p);
  auto k = kinetic_momentum(prm_, q, p);
  double pz = p0(z);
  return {prm_.c * k[0].real() / pz, prm_.c * k[1].real() / pz, prm_.c * k[2].real() / pz};
}

double Dirac::gamma(const PhasePoint& z) const { return p0(z) / (prm_.m * prm_.c); }

Eigen::Vector3d Dirac::Omega(const PhasePoint& z) const {
  Eigen::Vector3d B = B_field(z.q), E = E_field(z.q), v = velocity(z);
  double g = gamma(z);
  return (prm_.e / (prm_.m * prm_.c)) *
         (B / g - v.cross(E) / (prm_.c * (1.0 + g)));
}

Eigen::Vector3d Dirac::Omega_h1d_form(const PhasePoint& z) const {
  Eigen::Vector3d B = B_field(z.q), E = E_field(z.q), v = velocity(z);
  double pz = p0(z);
  double mc = prm_.m * prm_.c;
  return (prm_.e / pz) * (B - (pz / (prm_.c * (pz + mc))) * v.cross(E));
}

MatrixXcd Dirac::h1_closed(const PhasePoint& z) const {
  Eigen::Vector3d Om = Omega(z);
  MatrixXcd s(2, 2);
  s(0, 0) = Om[2];
  s(1, 1) = -Om[2];
  s(0, 1) = Cplx(Om[0], -Om[1]);
  s(1, 0) = Cplx(Om[0], Om[1]);
  return -0.5 * prm_.hbar * s;
}

MatrixXcd Dirac::P_plus(const PhasePoint& z) const { return pi0_(z); }

MatrixXcd Dirac::P_minus(const PhasePoint& z) const {
  return MatrixXcd::Identity(4, 4) - pi0_(z);
}

MatrixXcd Dirac::psi_pm(const PhasePoint& z) const {
  MatrixXcd u = u0_(z);
  return u.adjoint().leftCols(2);
}

// --- 1D variant ------------------------------------------------------------

namespace {

struct H1DEval {
  Dirac1D prm;
  template <class S>
  S window(const S& p) const {
    if (!prm.windowed) return 1.0 + 0.0 * p;
    return logistic_neg(prm.sharp * (p * p - prm.p_cut * prm.p_cut));
  }
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    S chi = window(p[0]);
    S A = prm.a_amp * sin(q[0] * (2.0 * M_PI / prm.L));
    S ph = prm.phi_amp * cos(q[0] * (2.0 * M_PI / prm.L));
    S k = (p[0] - A) * chi;
    GenMat<S> m(2, 2);
    double mc2 = prm.m * prm.c * prm.c;
    m(0, 0) = ph + mc2;
    m(1, 1) = ph - mc2;
    m(0, 1) = prm.c * k;
    m(1, 0) = prm.c * k;
    return m;
  }
};

struct Er1DEval {
  Dirac1D prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    H1DEval h{prm};
    S chi = h.window(p[0]);
    S A = prm.a_amp * sin(q[0] * (2.0 * M_PI / prm.L));
    S ph = prm.phi_amp * cos(q[0] * (2.0 * M_PI / prm.L));
    S k = (p[0] - A) * chi;
    GenMat<S> m(1, 1);
    m(0, 0) = ph + prm.c * sqrt(prm.m * prm.m * prm.c * prm.c + k * k);
    return m;
  }
};

}  // namespace

FormalSymbol Dirac1D::H() const {
  return FormalSymbol::principal(make_ad_symbol(1, 2, true, H1DEval{*this}));
}

MatrixSymbol Dirac1D::Er_plus() const { return make_ad_symbol(1, 1, true, Er1DEval{*this}); }

}  // namespace adpt::models
