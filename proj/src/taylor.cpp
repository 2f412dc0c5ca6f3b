#include "adpt/taylor.hpp"

#include <cmath>
#include <stdexcept>

namespace adpt {

Taylor::Taylor(std::shared_ptr<const MultiIndexSet> mis, int ord, Cplx value)
    : mis_(std::move(mis)), ord_(ord) {
  if (ord_ > mis_->kmax()) throw std::invalid_argument("Taylor: order beyond table");
  c_ = Eigen::VectorXcd::Zero(mis_->size_up_to(ord_));
  c_[0] = value;
}

Taylor Taylor::variable(std::shared_ptr<const MultiIndexSet> mis, int ord, int var, double value) {
  Taylor t(std::move(mis), ord, value);
  if (ord >= 1) {
    std::vector<int> g(t.mis_->nvars(), 0);
    g[var] = 1;
    t.c_[t.mis_->find(g)] = 1.0;
  }
  return t;
}

Cplx Taylor::derivative(const std::vector<int>& gamma) const {
  int pos = mis_->find(gamma);
  if (pos < 0 || pos >= c_.size()) return 0.0;
  return c_[pos] * mis_->factorial(pos);
}

Taylor Taylor::truncated(int new_ord) const {
  Taylor r;
  r.mis_ = mis_;
  r.ord_ = std::min(new_ord, ord_);
  r.c_ = c_.head(mis_->size_up_to(r.ord_));
  return r;
}

Taylor Taylor::operator-() const {
  Taylor r = *this;
  r.c_ = -r.c_;
  return r;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  if (!mis_) { *this = o; return *this; }
  if (o.ord_ < ord_) { *this = truncated(o.ord_); }
  c_ += o.c_.head(c_.size());
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  if (!mis_) { *this = -o; return *this; }
  if (o.ord_ < ord_) { *this = truncated(o.ord_); }
  c_ -= o.c_.head(c_.size());
  return *this;
}

Taylor Taylor::mul(const Taylor& a, const Taylor& b) {
  const auto& mis = *a.mis_;
  Taylor r;
  r.mis_ = a.mis_;
  r.ord_ = std::min(a.ord_, b.ord_);
  int nout = mis.size_up_to(r.ord_);
  r.c_ = Eigen::VectorXcd::Zero(nout);
  for (const auto& s : mis.splits()) {
    if (s.out >= nout) break;
    if (s.lhs < a.c_.size() && s.rhs < b.c_.size()) r.c_[s.out] += a.c_[s.lhs] * b.c_[s.rhs];
  }
  return r;
}

Taylor Taylor::compose(const Taylor& a, const std::vector<Cplx>& fc) {
  // Horner in the nilpotent part (a - a0).
  Taylor x = a;
  x.c_[0] = 0.0;
  Taylor r = Taylor::constant(a.mis_, a.ord_, fc.empty() ? Cplx(0) : fc.back());
  for (int k = static_cast<int>(fc.size()) - 2; k >= 0; --k) {
    r = mul(r, x);
    r += fc[k];
  }
  return r;
}

Taylor Taylor::inv(const Taylor& a) {
  Cplx u0 = a.value();
  if (std::abs(u0) == 0.0) throw std::domain_error("Taylor::inv at zero");
  int K = a.ord_;
  // series[k] = (-1)^k / u0^{k+1}
  std::vector<Cplx> series(K + 1);
  Cplx q = Cplx(1.0) / u0;
  for (int k = 0; k <= K; ++k) {
    series[k] = (k % 2 ? -q : q);
    q /= u0;
  }
  return compose(a, series);
}

Taylor Taylor::deriv(int var) const {
  Taylor r;
  r.mis_ = mis_;
  r.ord_ = ord_ - 1;
  if (r.ord_ < 0) throw std::domain_error("Taylor::deriv: order exhausted");
  int nout = mis_->size_up_to(r.ord_);
  r.c_ = Eigen::VectorXcd::Zero(nout);
  for (int pos = 0; pos < nout; ++pos) {
    int up = mis_->bump(pos, var);
    if (up >= 0 && up < c_.size()) {
      r.c_[pos] = c_[up] * static_cast<double>(mis_->exponents(up)[var]);
    }
  }
  return r;
}

namespace {

std::vector<Cplx> sin_series(Cplx u0, int K) {
  std::vector<Cplx> fc(K + 1);
  Cplx s = std::sin(u0), c = std::cos(u0);
  double kf = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) kf *= k;
    switch (k % 4) {
      case 0: fc[k] = s / kf; break;
      case 1: fc[k] = c / kf; break;
      case 2: fc[k] = -s / kf; break;
      default: fc[k] = -c / kf; break;
    }
  }
  return fc;
}

// ODE-propagated univariate series for tanh: y' = 1 - y^2.
std::vector<Cplx> tanh_series(Cplx u0, int K) {
  std::vector<Cplx> y(K + 1);
  y[0] = std::tanh(u0);
  for (int k = 0; k < K; ++k) {
    Cplx conv = 0.0;
    for (int j = 0; j <= k; ++j) conv += y[j] * y[k - j];
    y[k + 1] = ((k == 0 ? Cplx(1.0) : Cplx(0.0)) - conv) / static_cast<double>(k + 1);
  }
  return y;
}

std::vector<Cplx> exp_series(Cplx u0, int K) {
  std::vector<Cplx> fc(K + 1);
  Cplx e = std::exp(u0);
  double kf = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) kf *= k;
    fc[k] = e / kf;
  }
  return fc;
}

std::vector<Cplx> sqrt_series(Cplx u0, int K) {
  Cplx r0 = std::sqrt(u0);
  std::vector<Cplx> fc(K + 1);
  fc[0] = r0;
  // f^(k)(u) = (1/2)(1/2-1)...(1/2-k+1) u^{1/2-k}
  Cplx coef = 0.5;
  Cplx upow = r0 / u0;  // u0^{-1/2}
  double kf = 1.0;
  for (int k = 1; k <= K; ++k) {
    kf *= k;
    fc[k] = coef * upow / kf;
    coef *= (0.5 - k);
    upow /= u0;
  }
  return fc;
}

std::vector<Cplx> atan_series(Cplx u0, int K) {
  // y = atan(u); y' = 1/(1+u^2); propagate series of 1/(1+u^2) and integrate.
  std::vector<Cplx> g(K + 1);  // series of (1+(u0+x)^2)^{-1}
  // (1 + (u0+x)^2) = (1+u0^2) + 2 u0 x + x^2 ; invert as univariate series
  std::vector<Cplx> q(K + 1, 0.0);
  q[0] = 1.0 + u0 * u0;
  if (K >= 1) q[1] = 2.0 * u0;
  if (K >= 2) q[2] = 1.0;
  g[0] = Cplx(1.0) / q[0];
  for (int k = 1; k <= K; ++k) {
    Cplx acc = 0.0;
    for (int j = 1; j <= std::min(k, 2); ++j) acc += q[j] * g[k - j];
    g[k] = -acc / q[0];
  }
  std::vector<Cplx> fc(K + 1);
  fc[0] = std::atan(u0.real());
  for (int k = 1; k <= K; ++k) fc[k] = g[k - 1] / static_cast<double>(k);
  return fc;
}

}  // namespace

Taylor sin(const Taylor& a) { return Taylor::compose(a, sin_series(a.value(), a.order())); }

Taylor cos(const Taylor& a) {
  auto fc = sin_series(a.value() + Cplx(M_PI / 2.0), a.order());
  return Taylor::compose(a, fc);
}

Taylor tan(const Taylor& a) { return sin(a) / cos(a); }

Taylor exp(const Taylor& a) { return Taylor::compose(a, exp_series(a.value(), a.order())); }

Taylor tanh(const Taylor& a) { return Taylor::compose(a, tanh_series(a.value(), a.order())); }

Taylor sqrt(const Taylor& a) { return Taylor::compose(a, sqrt_series(a.value(), a.order())); }

Taylor atan(const Taylor& a) { return Taylor::compose(a, atan_series(a.value(), a.order())); }

Taylor pow2(const Taylor& a) { return Taylor::mul(a, a); }

Taylor conj_of(const Taylor& a) {
  Taylor r = a;
  r.coeffs() = r.coeffs().conjugate();
  return r;
}

}  // namespace adpt
