#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "adpt/multi_index.hpp"
#include "adpt/taylor.hpp"

namespace adpt {

using Eigen::MatrixXcd;

// Matrix-valued truncated Taylor polynomial at a phase-space point.
// Coefficient matrices are Taylor coefficients (derivative / gamma!),
// position-aligned with a shared MultiIndexSet over 2d variables
// (q_0..q_{d-1}, p_0..p_{d-1}).
class MatJet {
public:
  MatJet() : ord_(-1), rows_(0), cols_(0) {}
  MatJet(std::shared_ptr<const MultiIndexSet> mis, int ord, int rows, int cols);
  static MatJet constant(std::shared_ptr<const MultiIndexSet> mis, int ord, const MatrixXcd& m);
  static MatJet from_taylor(const Taylor& t);  // 1x1

  const std::shared_ptr<const MultiIndexSet>& table() const { return mis_; }
  int order() const { return ord_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return ord_ < 0; }

  const MatrixXcd& coeff(int pos) const { return c_[pos]; }
  MatrixXcd& coeff(int pos) { return c_[pos]; }
  int ncoeff() const { return static_cast<int>(c_.size()); }

  const MatrixXcd& value() const { return c_[0]; }
  // Raw derivative matrix d^gamma A (coefficient times gamma!).
  MatrixXcd derivative(const std::vector<int>& gamma) const;

  Taylor entry(int i, int j) const;
  void set_entry(int i, int j, const Taylor& t);

  MatJet truncated(int new_ord) const;
  MatJet adjoint() const;
  MatJet transpose_() const;
  MatJet deriv(int var) const;
  // Iterated derivative d_q^alpha d_p^beta with alpha, beta multi-indices
  // over the d position / momentum variables.
  MatJet deriv_multi(const std::vector<int>& alpha, const std::vector<int>& beta) const;

  MatJet operator-() const;
  MatJet& operator+=(const MatJet& o);
  MatJet& operator-=(const MatJet& o);
  MatJet& operator*=(Cplx s);
  friend MatJet operator+(MatJet a, const MatJet& b) { a += b; return a; }
  friend MatJet operator-(MatJet a, const MatJet& b) { a -= b; return a; }
  friend MatJet operator*(MatJet a, Cplx s) { a *= s; return a; }
  friend MatJet operator*(Cplx s, MatJet a) { a *= s; return a; }
  friend MatJet operator*(const MatJet& a, const MatJet& b) { return mul(a, b); }

  static MatJet mul(const MatJet& a, const MatJet& b);
  // Order-by-order inverse; value() must be invertible.
  static MatJet inverse(const MatJet& a);

  MatJet block(int i0, int j0, int nr, int nc) const;
  // Largest coefficient norm, a convenient defect measure.
  double max_coeff_norm() const;

private:
  std::shared_ptr<const MultiIndexSet> mis_;
  int ord_;
  int rows_, cols_;
  std::vector<MatrixXcd> c_;
};

// Poisson bracket on jets, paper convention:
// {A,B} = sum_j d_{p_j}A d_{q_j}B - d_{q_j}A d_{p_j}B.  Order drops by one.
MatJet poisson(const MatJet& a, const MatJet& b, int d);

// k-th Moyal coefficient of the product of two formal series of jets,
// with deformation scale kappa (the product is a series in kappa*eps):
//   (A # B)_k = kappa^k (2i)^{-k} sum_{|a|+|b|+j+l=k}
//               ((-1)^{|a|} / a! b!) (d_q^a d_p^b A_j)(d_p^a d_q^b B_l).
MatJet moyal_term_jets(const std::vector<MatJet>& A, const std::vector<MatJet>& B, int k, int d,
                       double kappa = 1.0);

// Truncated series product; result term k is moyal_term_jets(A,B,k).
std::vector<MatJet> moyal_mul_jets(const std::vector<MatJet>& A, const std::vector<MatJet>& B,
                                   int N, int d, double kappa = 1.0);

std::vector<MatJet> series_adjoint(const std::vector<MatJet>& A);
std::vector<MatJet> series_sub(const std::vector<MatJet>& A, const std::vector<MatJet>& B);

}  // namespace adpt
