#include "adpt/models/born_oppenheimer.hpp"

#include <cmath>

namespace adpt::models {

namespace {

// q-dependent scalars driving the shipped potentials
template <class S>
struct Angles {
  S alpha, beta, phi, trace, lo, hi;
};

template <class S>
Angles<S> angles_at(const BOParams& prm, const std::vector<S>& q) {
  Angles<S> a;
  S s0 = sin(q[0]);
  S c0 = cos(q[0]);
  S mix = 0.0 * q[0];
  for (size_t j = 1; j < q.size(); ++j) mix = mix + sin(q[j] * (0.7 + 0.3 * j));
  a.alpha = prm.amp * (s0 + 0.4 * mix) + 0.3;
  a.beta = prm.amp * (cos(q[0] * 1.3 + 0.4) + 0.3 * mix);
  a.phi = 0.8 * prm.amp * c0;
  a.trace = 0.15 * c0;
  a.lo = -0.5 * prm.gap - 0.2 * c0;
  a.hi = 0.5 * prm.gap + 0.2 * sin(q[0] + 0.3);
  return a;
}

template <class S>
S kinetic(const BOParams& prm, const std::vector<S>& p) {
  S p2 = 0.0 * p[0];
  for (const auto& pj : p) p2 = p2 + pj * pj;
  if (!prm.mollified) return 0.5 * p2;
  return 0.5 * p2 / (1.0 + prm.eta * p2);
}

// n=2 real symmetric: V = R(alpha) diag(lo, hi) R(alpha)^T
template <class S>
GenMat<S> v_real2(const BOParams& prm, const std::vector<S>& q) {
  auto a = angles_at(prm, q);
  S c = cos(a.alpha), s = sin(a.alpha);
  GenMat<S> m(2, 2);
  m(0, 0) = c * c * a.lo + s * s * a.hi;
  m(1, 1) = s * s * a.lo + c * c * a.hi;
  m(0, 1) = c * s * (a.lo - a.hi);
  m(1, 0) = m(0, 1);
  return m;
}

// n=2 hermitian: V = trace 1 + r(q) n(q).sigma, lower band has a Berry phase
template <class S>
GenMat<S> v_complex2(const BOParams& prm, const std::vector<S>& q) {
  auto a = angles_at(prm, q);
  S r = 0.5 * prm.gap + 0.1 * (1.0 + sin(q[0]) * sin(q[0]));
  S st = sin(a.alpha), ct = cos(a.alpha);
  S cp = cos(a.phi), sp = sin(a.phi);
  GenMat<S> m(2, 2);
  m(0, 0) = a.trace + r * ct;
  m(1, 1) = a.trace - r * ct;
  m(0, 1) = r * st * (cp - Cplx(0, 1) * sp);
  m(1, 0) = r * st * (cp + Cplx(0, 1) * sp);
  return m;
}

// n=3 real symmetric with a two-fold degenerate lower level:
// V = W diag(lo, lo, hi) W^T, W = G23(beta) G12(alpha)
template <class S>
GenMat<S> givens_frame(const BOParams& prm, const std::vector<S>& q) {
  auto a = angles_at(prm, q);
  S ca = cos(a.alpha), sa = sin(a.alpha), cb = cos(a.beta), sb = sin(a.beta);
  GenMat<S> w(3, 3);
  // G12(alpha): rotate columns 1,2 ; then G23(beta)
  // W = G23 * G12
  w(0, 0) = ca;        w(0, 1) = -sa;       w(0, 2) = 0.0 * ca;
  w(1, 0) = cb * sa;   w(1, 1) = cb * ca;   w(1, 2) = -sb;
  w(2, 0) = sb * sa;   w(2, 1) = sb * ca;   w(2, 2) = cb;
  return w;
}

template <class S>
GenMat<S> v_real3(const BOParams& prm, const std::vector<S>& q) {
  auto a = angles_at(prm, q);
  GenMat<S> w = givens_frame(prm, q);
  GenMat<S> m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      S acc = w(i, 0) * w(j, 0) * a.lo + w(i, 1) * w(j, 1) * a.lo + w(i, 2) * w(j, 2) * a.hi;
      m(i, j) = acc;
    }
  return m;
}

struct HEval {
  BOParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    GenMat<S> v;
    switch (prm.potential) {
      case BOParams::Potential::Real2: v = v_real2(prm, q); break;
      case BOParams::Potential::Complex2: v = v_complex2(prm, q); break;
      case BOParams::Potential::Real3Deg: v = v_real3(prm, q); break;
    }
    S kin = kinetic(prm, p);
    for (int i = 0; i < v.rows; ++i) v(i, i) = v(i, i) + kin;
    return v;
  }
};

// band frame columns (n x ell) for each potential; lower band everywhere
struct FrameEval {
  BOParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& /*p*/) const {
    switch (prm.potential) {
      case BOParams::Potential::Real2: {
        auto a = angles_at(prm, q);
        GenMat<S> f(2, 1);
        f(0, 0) = cos(a.alpha);
        f(1, 0) = sin(a.alpha);
        return f;
      }
      case BOParams::Potential::Complex2: {
        auto a = angles_at(prm, q);
        S c = cos(0.5 * a.alpha), s = sin(0.5 * a.alpha);
        S em = cos(a.phi) - Cplx(0, 1) * sin(a.phi);
        GenMat<S> f(2, 1);
        f(0, 0) = -em * s;
        f(1, 0) = c;
        return f;
      }
      case BOParams::Potential::Real3Deg: {
        GenMat<S> w = givens_frame(prm, q);
        GenMat<S> f(3, 2);
        for (int i = 0; i < 3; ++i) {
          f(i, 0) = w(i, 0);
          f(i, 1) = w(i, 1);
        }
        return f;
      }
    }
    throw Error("unreachable");
  }
};

struct U0Eval {
  BOParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    switch (prm.potential) {
      case BOParams::Potential::Real2: {
        auto a = angles_at(prm, q);
        S c = cos(a.alpha), s = sin(a.alpha);
        GenMat<S> u(2, 2);
        u(0, 0) = c; u(0, 1) = s;
        u(1, 0) = -s; u(1, 1) = c;
        return u;
      }
      case BOParams::Potential::Complex2: {
        auto a = angles_at(prm, q);
        S c = cos(0.5 * a.alpha), s = sin(0.5 * a.alpha);
        S ep = cos(a.phi) + Cplx(0, 1) * sin(a.phi);
        S em = cos(a.phi) - Cplx(0, 1) * sin(a.phi);
        GenMat<S> u(2, 2);
        // rows: <psi_minus|, <psi_plus|
        u(0, 0) = -ep * s; u(0, 1) = c;
        u(1, 0) = c;       u(1, 1) = em * s;
        return u;
      }
      case BOParams::Potential::Real3Deg: {
        GenMat<S> w = givens_frame(prm, q);
        GenMat<S> u(3, 3);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) u(i, j) = w(j, i);
        return u;
      }
    }
    throw Error("unreachable");
  }
};

struct ErEval {
  BOParams prm;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    auto a = angles_at(prm, q);
    GenMat<S> m(1, 1);
    if (prm.potential == BOParams::Potential::Complex2) {
      S r = 0.5 * prm.gap + 0.1 * (1.0 + sin(q[0]) * sin(q[0]));
      m(0, 0) = kinetic(prm, p) + a.trace - r;
    } else {
      m(0, 0) = kinetic(prm, p) + a.lo;
    }
    return m;
  }
};

}  // namespace

BornOppenheimer::BornOppenheimer(BOParams prm) : prm_(prm) {
  n_ = prm_.potential == BOParams::Potential::Real3Deg ? 3 : 2;
  ell_ = prm_.potential == BOParams::Potential::Real3Deg ? 2 : 1;
  const int d = prm_.d;
  H_ = FormalSymbol::principal(make_ad_symbol(d, n_, true, HEval{prm_}));
  Er_ = make_ad_symbol(d, 1, true, ErEval{prm_});
  u0_ = make_ad_symbol(d, n_, false, U0Eval{prm_});
  // pi0 from the frame columns
  FrameEval fe{prm_};
  int n = n_, ell = ell_;
  auto pi_eval = [fe, n, ell](const auto& q, const auto& p) {
    auto f = fe(q, p);
    using S = std::decay_t<decltype(f(0, 0))>;
    GenMat<S> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        S acc = f(i, 0) * conj_of(f(j, 0));
        for (int c = 1; c < ell; ++c) acc = acc + f(i, c) * conj_of(f(j, c));
        m(i, j) = acc;
      }
    return m;
  };
  pi0_ = make_ad_symbol(d, n_, true, pi_eval);
}

ExpansionContext BornOppenheimer::context() const {
  ExpansionContext ctx;
  ctx.H = H_;
  ctx.pi0 = pi0_;
  ctx.Er = Er_;
  ctx.u0 = u0_;
  ctx.ell = ell_;
  ctx.gap_floor = 0.3 * prm_.gap;
  MatrixXcd pr = MatrixXcd::Zero(n_, n_);
  for (int i = 0; i < ell_; ++i) pr(i, i) = 1.0;
  ctx.pi_r = pr;
  return ctx;
}

std::vector<MatrixXcd> BornOppenheimer::berry_potential(const VectorXd& q) const {
  PhasePoint z;
  z.q = q;
  z.p = VectorXd::Zero(prm_.d);
  FrameEval fe{prm_};
  MatrixSymbol frame = make_ad_symbol(prm_.d, n_, false, fe);
  MatJet psi = frame.jet(z, 1);
  std::vector<MatrixXcd> A(prm_.d);
  for (int j = 0; j < prm_.d; ++j) {
    A[j] = Cplx(0, 1) * (psi.value().adjoint() * psi.deriv(j).value());
  }
  return A;
}

MatrixXcd BornOppenheimer::h2_closed(const PhasePoint& z) const {
  FrameEval fe{prm_};
  MatrixSymbol frame = make_ad_symbol(prm_.d, n_, false, fe);
  MatJet psi = frame.jet(z, 1);
  MatrixXcd pi = pi0_(z);
  MatrixXcd one = MatrixXcd::Identity(n_, n_);
  // R0 at z from the model band data
  MatrixXcd H0v = H_.term(0)(z);
  double er = Er_(z)(0, 0).real();
  MatrixXcd R0 = (H0v - er * one + pi).partialPivLu().inverse() * (one - pi);

  auto A = berry_potential(z.q);
  MatrixXcd t1 = MatrixXcd::Zero(ell_, ell_);
  for (int j = 0; j < prm_.d; ++j) t1 += 0.5 * A[j] * A[j];
  MatrixXcd t2 = MatrixXcd::Zero(ell_, ell_);
  for (int j = 0; j < prm_.d; ++j) {
    MatrixXcd dpsi = psi.deriv(j).value();
    t2 += 0.5 * dpsi.adjoint() * (one - pi) * dpsi;
  }
  MatrixXcd pdpsi = MatrixXcd::Zero(n_, ell_);
  for (int j = 0; j < prm_.d; ++j) pdpsi += z.p[j] * psi.deriv(j).value();
  MatrixXcd t3 = -pdpsi.adjoint() * R0 * pdpsi;
  return t1 + t2 + t3;
}

MatrixXcd BornOppenheimer::assembled_symbol(const PhasePoint& z, double eps) const {
  auto A = berry_potential(z.q);
  MatrixXcd one = MatrixXcd::Identity(ell_, ell_);
  MatrixXcd sq = MatrixXcd::Zero(ell_, ell_);
  for (int j = 0; j < prm_.d; ++j) {
    MatrixXcd m = z.p[j] * one - eps * A[j];
    sq += 0.5 * m * m;
  }
  double er_q;  // electronic level alone (subtract the kinetic part)
  {
    PhasePoint z0 = z;
    z0.p.setZero();
    er_q = Er_(z0)(0, 0).real();
  }
  // curvature and resolvent terms from h2_closed minus the A^2/2 piece
  MatrixXcd h2 = h2_closed(z);
  MatrixXcd a2 = MatrixXcd::Zero(ell_, ell_);
  for (int j = 0; j < prm_.d; ++j) a2 += 0.5 * A[j] * A[j];
  // kinetic correction when mollified: (p - eps A)^2/2 assumes raw kinetic
  double kin_raw = 0.5 * z.p.squaredNorm();
  double kin = Er_(z)(0, 0).real() - er_q;
  return sq + (er_q + (kin - kin_raw)) * one + eps * eps * (h2 - a2);
}

double BornOppenheimer::mollifier_agreement(double p_window, int samples) const {
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    double p = -p_window + 2.0 * p_window * i / samples;
    double p2 = p * p;
    double raw = 0.5 * p2;
    double mol = 0.5 * p2 / (1.0 + prm_.eta * p2);
    worst = std::max(worst, std::abs(raw - mol));
  }
  return worst;
}

}  // namespace adpt::models
