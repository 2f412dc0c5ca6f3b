#include "adpt/experiments.hpp"

#include <cmath>

namespace adpt::harness {

namespace {

struct Logi {
  double v, d1, d2;  // sigma(-x(p)) and p-derivatives, x = k(p^2 - pc^2)
};

Logi window(double p, bool on, double pc, double k) {
  if (!on) return {1.0, 0.0, 0.0};
  double x = k * (p * p - pc * pc);
  double sg;  // sigma(-x) = 1/(1+e^x), overflow-safe
  if (x > 0) {
    double e = std::exp(-x);
    sg = e / (1.0 + e);
  } else {
    sg = 1.0 / (1.0 + std::exp(x));
  }
  double sp = sg * (1.0 - sg);        // d/d(-x) sigma(-x)
  double spp = sp * (1.0 - 2.0 * sg); // second derivative wrt (-x)
  // chain rule: d(-x)/dp = -2kp
  double u1 = -2.0 * k * p;
  double u2 = -2.0 * k;
  return {sg, sp * u1, spp * u1 * u1 + sp * u2};
}

}  // namespace

TwoLevelFast::Scal TwoLevelFast::theta(double q, double p) const {
  double al = 2.0 * M_PI / L;
  Logi chi = window(p, windowed, p_cut, sharp);
  double th = std::tanh(p), th1 = 1.0 - th * th, th2 = -2.0 * th * th1;
  double T = th * chi.v, T1 = th1 * chi.v + th * chi.d1,
         T2 = th2 * chi.v + 2.0 * th1 * chi.d1 + th * chi.d2;
  Scal s;
  s.v = a * std::sin(al * q) + b * T;
  s.dq = a * al * std::cos(al * q);
  s.dp = b * T1;
  s.dqq = -a * al * al * std::sin(al * q);
  s.dqp = 0.0;
  s.dpp = b * T2;
  return s;
}

TwoLevelFast::Scal TwoLevelFast::phi(double q, double p) const {
  double al = 2.0 * M_PI / L;
  Logi chi = window(p, windowed, p_cut, sharp);
  double th = std::tanh(p), th1 = 1.0 - th * th, th2 = -2.0 * th * th1;
  double T = th * chi.v, T1 = th1 * chi.v + th * chi.d1,
         T2 = th2 * chi.v + 2.0 * th1 * chi.d1 + th * chi.d2;
  double sq = std::sin(al * q), cq = std::cos(al * q);
  Scal s;
  s.v = twist * T * sq;
  s.dq = twist * T * al * cq;
  s.dp = twist * T1 * sq;
  s.dqq = -twist * T * al * al * sq;
  s.dqp = twist * T1 * al * cq;
  s.dpp = twist * T2 * sq;
  return s;
}

TwoLevelFast::Scal TwoLevelFast::e(double q, double p) const {
  double al = 2.0 * M_PI / L;
  Logi chi = window(p, windowed, p_cut, sharp);
  double den = 1.0 + p * p;
  double w = p * p / den, w1 = 2.0 * p / (den * den), w2 = (2.0 - 6.0 * p * p) / (den * den * den);
  double W = w * chi.v, W1 = w1 * chi.v + w * chi.d1, W2 = w2 * chi.v + 2.0 * w1 * chi.d1 + w * chi.d2;
  Scal s;
  s.v = c_amp * std::cos(al * q) + d_amp * W;
  s.dq = -c_amp * al * std::sin(al * q);
  s.dp = d_amp * W1;
  s.dqq = -c_amp * al * al * std::cos(al * q);
  s.dqp = 0.0;
  s.dpp = d_amp * W2;
  return s;
}

void TwoLevelFast::flow_field(double q, double p, double& fq, double& fp) const {
  Scal se = e(q, p);
  fq = se.dp;
  fp = -se.dq;
}

void TwoLevelFast::flow_jacobian(double q, double p, double J[2][2]) const {
  Scal se = e(q, p);
  J[0][0] = se.dqp;
  J[0][1] = se.dpp;
  J[1][0] = -se.dqq;
  J[1][1] = -se.dqp;
}

void TwoLevelFast::h1_grad(double q, double p, double& v, double& dq, double& dp) const {
  Scal st = theta(q, p), sp = phi(q, p), se = e(q, p);
  double Be = se.dp * sp.dq - se.dq * sp.dp;
  double Bt = st.dp * sp.dq - st.dq * sp.dp;
  double Be_q = se.dqp * sp.dq + se.dp * sp.dqq - se.dqq * sp.dp - se.dq * sp.dqp;
  double Be_p = se.dpp * sp.dq + se.dp * sp.dqp - se.dqp * sp.dp - se.dq * sp.dpp;
  double Bt_q = st.dqp * sp.dq + st.dp * sp.dqq - st.dqq * sp.dp - st.dq * sp.dqp;
  double Bt_p = st.dpp * sp.dq + st.dp * sp.dqp - st.dqp * sp.dp - st.dq * sp.dpp;
  double sh = std::sin(0.5 * st.v), ch = std::cos(0.5 * st.v);
  double s2 = sh * sh;                  // sin^2(theta/2)
  double sth = std::sin(st.v), cth = std::cos(st.v);
  v = s2 * Be + 0.5 * sth * Bt;
  dq = sh * ch * st.dq * Be + s2 * Be_q + 0.5 * cth * st.dq * Bt + 0.5 * sth * Bt_q;
  dp = sh * ch * st.dp * Be + s2 * Be_p + 0.5 * cth * st.dp * Bt + 0.5 * sth * Bt_p;
}

}  // namespace adpt::harness
