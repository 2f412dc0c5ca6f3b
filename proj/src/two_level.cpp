#include "adpt/models/two_level.hpp"

#include <cmath>

namespace adpt::models {

namespace {

struct Fields {
  TwoLevelParams prm;

  template <class S>
  S window(const S& p) const {
    if (!prm.windowed) return 1.0 + 0.0 * p;
    return logistic_neg(prm.sharp * (p * p - prm.p_cut * prm.p_cut));
  }

  template <class S>
  void angles(const std::vector<S>& q, const std::vector<S>& p, S& theta, S& phi, S& e) const {
    using std::sin;
    using std::cos;
    using std::tanh;
    S chi = window(p[0]);
    S sq = sin(q[0] * (2.0 * M_PI / prm.L));
    S cq = cos(q[0] * (2.0 * M_PI / prm.L));
    S tp = tanh(p[0]) * chi;
    theta = prm.a * sq + prm.b * tp;
    phi = prm.twist * tp * sq;
    e = prm.c_amp * cq + prm.d_amp * (p[0] * p[0] / (1.0 + p[0] * p[0])) * chi;
  }
};

struct HEval {
  Fields f;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    S th, ph, e;
    f.angles(q, p, th, ph, e);
    S st = sin(th), ct = cos(th), cp = cos(ph), sp = sin(ph);
    // n = (sin th cos ph, sin th sin ph, cos th)
    GenMat<S> m(2, 2);
    m(0, 0) = e + ct;
    m(1, 1) = e - ct;
    m(0, 1) = st * (cp - Cplx(0, 1) * sp);
    m(1, 0) = st * (cp + Cplx(0, 1) * sp);
    return m;
  }
};

struct Pi0Eval {
  Fields f;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    S th, ph, e;
    f.angles(q, p, th, ph, e);
    S st = sin(th), ct = cos(th), cp = cos(ph), sp = sin(ph);
    GenMat<S> m(2, 2);
    m(0, 0) = 0.5 * (1.0 + ct);
    m(1, 1) = 0.5 * (1.0 - ct);
    m(0, 1) = 0.5 * st * (cp - Cplx(0, 1) * sp);
    m(1, 0) = 0.5 * st * (cp + Cplx(0, 1) * sp);
    return m;
  }
};

struct ErEval {
  Fields f;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    S th, ph, e;
    f.angles(q, p, th, ph, e);
    GenMat<S> m(1, 1);
    m(0, 0) = e + 1.0;
    return m;
  }
};

// frame psi_+ = (cos(th/2), e^{i phi} sin(th/2)), psi_- = (-e^{-i phi} sin, cos);
// u0 rows are the frame bras, so u0 pi0 u0* = diag(1, 0).
struct U0Eval {
  Fields f;
  template <class S>
  GenMat<S> operator()(const std::vector<S>& q, const std::vector<S>& p) const {
    S th, ph, e;
    f.angles(q, p, th, ph, e);
    S c = cos(0.5 * th), s = sin(0.5 * th);
    S ep = cos(ph) + Cplx(0, 1) * sin(ph);   // e^{+i phi}
    S em = cos(ph) - Cplx(0, 1) * sin(ph);   // e^{-i phi}
    GenMat<S> m(2, 2);
    m(0, 0) = c;
    m(0, 1) = em * s;
    m(1, 0) = -ep * s;
    m(1, 1) = c;
    return m;
  }
};

}  // namespace

TwoLevel::TwoLevel(TwoLevelParams params) : prm_(params) {
  Fields f{prm_};
  H_ = FormalSymbol::principal(make_ad_symbol(1, 2, true, HEval{f}));
  pi0_ = make_ad_symbol(1, 2, true, Pi0Eval{f});
  Er_ = make_ad_symbol(1, 1, true, ErEval{f});
  u0_ = make_ad_symbol(1, 2, false, U0Eval{f});
  // h1 needs first derivatives of the angle fields; evaluate them by running
  // the field functions on a one-order-deeper jet and contracting brackets.
  TwoLevelParams prm = prm_;
  auto h1_jet = [prm](const PhasePoint& z, int K) -> MatJet {
    Fields ff{prm};
    auto mis = MultiIndexSet::get(2, K + 1);
    std::vector<Taylor> q{Taylor::variable(mis, K + 1, 0, z.q[0])};
    std::vector<Taylor> p{Taylor::variable(mis, K + 1, 1, z.p[0])};
    Taylor th, ph, e;
    ff.angles(q, p, th, ph, e);
    auto bracket = [](const Taylor& a, const Taylor& b) {
      return a.deriv(1) * b.deriv(0) - a.deriv(0) * b.deriv(1);
    };
    Taylor s2 = sin(0.5 * th);
    Taylor h1 = s2 * s2 * bracket(e, ph) + 0.5 * sin(th) * bracket(th, ph);
    return MatJet::from_taylor(h1.truncated(K));
  };
  auto h1_eval = [h1_jet](const PhasePoint& z) { return h1_jet(z, 0).value(); };
  h1_ = MatrixSymbol(1, 1, true, h1_eval, h1_jet, 7);
}

ExpansionContext TwoLevel::context() const {
  ExpansionContext ctx;
  ctx.H = H_;
  ctx.pi0 = pi0_;
  ctx.Er = Er_;
  ctx.u0 = u0_;
  ctx.ell = 1;
  ctx.gap_floor = 1.0;
  MatrixXcd pr = MatrixXcd::Zero(2, 2);
  pr(0, 0) = 1.0;
  ctx.pi_r = pr;
  return ctx;
}

}  // namespace adpt::models
