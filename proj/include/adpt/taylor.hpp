#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "adpt/multi_index.hpp"

namespace adpt {

using Cplx = std::complex<double>;

// Truncated multivariate Taylor polynomial (forward-mode jet scalar).
// Coefficients are Taylor coefficients: value of d^gamma f / gamma! at the
// expansion point.  Arithmetic is exact truncated polynomial algebra, so a
// model evaluator run on Taylor inputs yields machine-precision jets.
class Taylor {
public:
  Taylor() : ord_(0) {}
  Taylor(std::shared_ptr<const MultiIndexSet> mis, int ord, Cplx value);

  static Taylor constant(std::shared_ptr<const MultiIndexSet> mis, int ord, Cplx value) {
    return Taylor(std::move(mis), ord, value);
  }
  // Seed for the coordinate `var` centered at `value`.
  static Taylor variable(std::shared_ptr<const MultiIndexSet> mis, int ord, int var, double value);

  const std::shared_ptr<const MultiIndexSet>& table() const { return mis_; }
  int order() const { return ord_; }
  Cplx value() const { return c_.size() ? c_[0] : Cplx(0); }
  // Raw derivative d^gamma f at the center (coefficient times gamma!).
  Cplx derivative(const std::vector<int>& gamma) const;

  const Eigen::VectorXcd& coeffs() const { return c_; }
  Eigen::VectorXcd& coeffs() { return c_; }

  Taylor truncated(int new_ord) const;

  Taylor operator-() const;
  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator+=(Cplx s) { if (c_.size()) c_[0] += s; return *this; }
  Taylor& operator-=(Cplx s) { if (c_.size()) c_[0] -= s; return *this; }
  Taylor& operator*=(Cplx s) { c_ *= s; return *this; }

  friend Taylor operator+(Taylor a, const Taylor& b) { a += b; return a; }
  friend Taylor operator-(Taylor a, const Taylor& b) { a -= b; return a; }
  friend Taylor operator+(Taylor a, Cplx s) { a += s; return a; }
  friend Taylor operator+(Cplx s, Taylor a) { a += s; return a; }
  friend Taylor operator+(Taylor a, double s) { a += Cplx(s); return a; }
  friend Taylor operator+(double s, Taylor a) { a += Cplx(s); return a; }
  friend Taylor operator-(Taylor a, Cplx s) { a -= s; return a; }
  friend Taylor operator-(Cplx s, const Taylor& a) { Taylor r = -a; r += s; return r; }
  friend Taylor operator-(Taylor a, double s) { a -= Cplx(s); return a; }
  friend Taylor operator-(double s, const Taylor& a) { Taylor r = -a; r += Cplx(s); return r; }
  friend Taylor operator*(Taylor a, Cplx s) { a *= s; return a; }
  friend Taylor operator*(Cplx s, Taylor a) { a *= s; return a; }
  friend Taylor operator*(Taylor a, double s) { a *= Cplx(s); return a; }
  friend Taylor operator*(double s, Taylor a) { a *= Cplx(s); return a; }
  friend Taylor operator*(const Taylor& a, const Taylor& b) { return mul(a, b); }
  friend Taylor operator/(const Taylor& a, const Taylor& b) { return mul(a, inv(b)); }
  friend Taylor operator/(Taylor a, Cplx s) { a *= Cplx(1.0) / s; return a; }
  friend Taylor operator/(Taylor a, double s) { a *= Cplx(1.0 / s); return a; }
  friend Taylor operator/(Cplx s, const Taylor& b) { Taylor r = inv(b); r *= s; return r; }
  friend Taylor operator/(double s, const Taylor& b) { Taylor r = inv(b); r *= Cplx(s); return r; }

  static Taylor mul(const Taylor& a, const Taylor& b);
  static Taylor inv(const Taylor& a);

  // Compose g(x) = f(u0 + x) given the univariate Taylor coefficients of f
  // at u0 = a.value(), i.e. fc[k] = f^(k)(u0)/k!.
  static Taylor compose(const Taylor& a, const std::vector<Cplx>& fc);

  // d/d var; result order drops by one.
  Taylor deriv(int var) const;

private:
  std::shared_ptr<const MultiIndexSet> mis_;
  int ord_;
  Eigen::VectorXcd c_;
};

Taylor sin(const Taylor& a);
Taylor cos(const Taylor& a);
Taylor tan(const Taylor& a);
Taylor exp(const Taylor& a);
Taylor tanh(const Taylor& a);
Taylor sqrt(const Taylor& a);
Taylor atan(const Taylor& a);
Taylor pow2(const Taylor& a);

// Overloads so generic model evaluators compile for plain complex scalars.
inline Cplx pow2(Cplx a) { return a * a; }

// Jet of the complex conjugate function (valid for real expansion points:
// derivatives with respect to real variables commute with conjugation).
Taylor conj_of(const Taylor& a);
inline Cplx conj_of(Cplx a) { return std::conj(a); }

// Overflow-safe logistic 1/(1+e^x), branching on the center value.
inline Cplx logistic_neg(Cplx x) {
  if (x.real() > 0) {
    Cplx e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}
inline Taylor logistic_neg(const Taylor& x) {
  if (x.value().real() > 0) {
    Taylor e = exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + exp(x));
}

}  // namespace adpt
