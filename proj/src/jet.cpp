#include "adpt/jet.hpp"

#include <stdexcept>

namespace adpt {

MatJet::MatJet(std::shared_ptr<const MultiIndexSet> mis, int ord, int rows, int cols)
    : mis_(std::move(mis)), ord_(ord), rows_(rows), cols_(cols) {
  if (ord_ > mis_->kmax()) throw std::invalid_argument("MatJet: order beyond table");
  c_.assign(mis_->size_up_to(ord_), MatrixXcd::Zero(rows_, cols_));
}

MatJet MatJet::constant(std::shared_ptr<const MultiIndexSet> mis, int ord, const MatrixXcd& m) {
  MatJet j(std::move(mis), ord, static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  j.c_[0] = m;
  return j;
}

MatJet MatJet::from_taylor(const Taylor& t) {
  MatJet j(t.table(), t.order(), 1, 1);
  for (int pos = 0; pos < j.ncoeff(); ++pos) j.c_[pos](0, 0) = t.coeffs()[pos];
  return j;
}

MatrixXcd MatJet::derivative(const std::vector<int>& gamma) const {
  int pos = mis_->find(gamma);
  if (pos < 0 || pos >= ncoeff()) return MatrixXcd::Zero(rows_, cols_);
  return c_[pos] * mis_->factorial(pos);
}

Taylor MatJet::entry(int i, int j) const {
  Taylor t = Taylor::constant(mis_, ord_, 0.0);
  for (int pos = 0; pos < ncoeff(); ++pos) t.coeffs()[pos] = c_[pos](i, j);
  return t;
}

void MatJet::set_entry(int i, int j, const Taylor& t) {
  int n = std::min<int>(ncoeff(), static_cast<int>(t.coeffs().size()));
  for (int pos = 0; pos < n; ++pos) c_[pos](i, j) = t.coeffs()[pos];
}

MatJet MatJet::truncated(int new_ord) const {
  if (new_ord >= ord_) return *this;
  MatJet j(mis_, new_ord, rows_, cols_);
  for (int pos = 0; pos < j.ncoeff(); ++pos) j.c_[pos] = c_[pos];
  return j;
}

MatJet MatJet::adjoint() const {
  MatJet j(mis_, ord_, cols_, rows_);
  for (int pos = 0; pos < ncoeff(); ++pos) j.c_[pos] = c_[pos].adjoint();
  return j;
}

MatJet MatJet::transpose_() const {
  MatJet j(mis_, ord_, cols_, rows_);
  for (int pos = 0; pos < ncoeff(); ++pos) j.c_[pos] = c_[pos].transpose();
  return j;
}

MatJet MatJet::deriv(int var) const {
  if (ord_ < 1) throw std::domain_error("MatJet::deriv: order exhausted");
  MatJet j(mis_, ord_ - 1, rows_, cols_);
  for (int pos = 0; pos < j.ncoeff(); ++pos) {
    int up = mis_->bump(pos, var);
    if (up >= 0 && up < ncoeff()) {
      j.c_[pos] = c_[up] * static_cast<double>(mis_->exponents(up)[var]);
    }
  }
  return j;
}

MatJet MatJet::deriv_multi(const std::vector<int>& alpha, const std::vector<int>& beta) const {
  int d = static_cast<int>(alpha.size());
  MatJet j = *this;
  for (int v = 0; v < d; ++v)
    for (int r = 0; r < alpha[v]; ++r) j = j.deriv(v);
  for (int v = 0; v < d; ++v)
    for (int r = 0; r < beta[v]; ++r) j = j.deriv(d + v);
  return j;
}

MatJet MatJet::operator-() const {
  MatJet j = *this;
  for (auto& m : j.c_) m = -m;
  return j;
}

MatJet& MatJet::operator+=(const MatJet& o) {
  if (empty()) { *this = o; return *this; }
  if (o.ord_ < ord_) *this = truncated(o.ord_);
  for (int pos = 0; pos < ncoeff(); ++pos) c_[pos] += o.c_[pos];
  return *this;
}

MatJet& MatJet::operator-=(const MatJet& o) {
  if (empty()) { *this = -o; return *this; }
  if (o.ord_ < ord_) *this = truncated(o.ord_);
  for (int pos = 0; pos < ncoeff(); ++pos) c_[pos] -= o.c_[pos];
  return *this;
}

MatJet& MatJet::operator*=(Cplx s) {
  for (auto& m : c_) m *= s;
  return *this;
}

MatJet MatJet::mul(const MatJet& a, const MatJet& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("MatJet::mul: shape mismatch");
  MatJet j(a.mis_, std::min(a.ord_, b.ord_), a.rows_, b.cols_);
  int nout = j.ncoeff();
  for (const auto& s : a.mis_->splits()) {
    if (s.out >= nout) break;
    if (s.lhs < a.ncoeff() && s.rhs < b.ncoeff()) j.c_[s.out].noalias() += a.c_[s.lhs] * b.c_[s.rhs];
  }
  return j;
}

MatJet MatJet::inverse(const MatJet& a) {
  if (a.rows_ != a.cols_) throw std::invalid_argument("MatJet::inverse: not square");
  MatrixXcd inv0 = a.value().partialPivLu().inverse();
  MatJet x(a.mis_, a.ord_, a.rows_, a.cols_);
  const auto& mis = *a.mis_;
  x.c_[0] = inv0;
  // order-by-order: X_g = -A_0^{-1} sum_{0 < g1 <= g} A_{g1} X_{g-g1}
  for (int pos = 1; pos < x.ncoeff(); ++pos) {
    MatrixXcd acc = MatrixXcd::Zero(a.rows_, a.cols_);
    for (const auto& s : mis.splits()) {
      if (s.out != pos) continue;
      if (s.lhs == 0) continue;  // the A_0 X_g term is the unknown
      if (s.lhs < a.ncoeff()) acc.noalias() += a.c_[s.lhs] * x.c_[s.rhs];
    }
    x.c_[pos] = -inv0 * acc;
  }
  return x;
}

MatJet MatJet::block(int i0, int j0, int nr, int nc) const {
  MatJet j(mis_, ord_, nr, nc);
  for (int pos = 0; pos < ncoeff(); ++pos) j.coeff(pos) = c_[pos].block(i0, j0, nr, nc);
  return j;
}

double MatJet::max_coeff_norm() const {
  double m = 0.0;
  for (const auto& mat : c_) m = std::max(m, mat.cwiseAbs().maxCoeff());
  return m;
}

MatJet poisson(const MatJet& a, const MatJet& b, int d) {
  MatJet r;
  for (int j = 0; j < d; ++j) {
    MatJet term = MatJet::mul(a.deriv(d + j), b.deriv(j)) - MatJet::mul(a.deriv(j), b.deriv(d + j));
    if (r.empty()) r = term; else r += term;
  }
  return r;
}

namespace {

// all multi-indices over d vars with given total degree
void degree_multis(int d, int deg, std::vector<std::vector<int>>& out) {
  std::vector<int> c(d, 0);
  c[0] = deg;
  while (true) {
    out.push_back(c);
    int i = d - 2;
    while (i >= 0 && c[i] == 0) --i;
    if (i < 0) break;
    --c[i];
    int rest = deg;
    for (int j = 0; j <= i; ++j) rest -= c[j];
    c[i + 1] = rest;
    for (int j = i + 2; j < d; ++j) c[j] = 0;
  }
}

double multi_factorial(const std::vector<int>& g) {
  double f = 1.0;
  for (int e : g)
    for (int j = 2; j <= e; ++j) f *= j;
  return f;
}

}  // namespace

MatJet moyal_term_jets(const std::vector<MatJet>& A, const std::vector<MatJet>& B, int k, int d,
                       double kappa) {
  MatJet r;
  const Cplx half_i_inv = Cplx(0.0, -0.5);  // 1/(2i)
  for (int j = 0; j < static_cast<int>(A.size()); ++j) {
    for (int l = 0; l < static_cast<int>(B.size()); ++l) {
      int m = k - j - l;
      if (m < 0) continue;
      if (A[j].empty() || B[l].empty()) continue;
      // derivative-degree prefactor (2i)^{-m} kappa^m
      Cplx pref = 1.0;
      for (int t = 0; t < m; ++t) pref *= half_i_inv * kappa;
      for (int da = 0; da <= m; ++da) {
        int db = m - da;
        std::vector<std::vector<int>> alphas, betas;
        degree_multis(d, da, alphas);
        degree_multis(d, db, betas);
        for (const auto& alpha : alphas) {
          for (const auto& beta : betas) {
            double sign = (da % 2 ? -1.0 : 1.0);
            double w = sign / (multi_factorial(alpha) * multi_factorial(beta));
            MatJet lhs = A[j].deriv_multi(alpha, beta);
            MatJet rhs = B[l].deriv_multi(beta, alpha);
            MatJet term = MatJet::mul(lhs, rhs);
            term *= pref * w;
            if (r.empty()) r = term; else r += term;
          }
        }
      }
    }
  }
  return r;
}

std::vector<MatJet> moyal_mul_jets(const std::vector<MatJet>& A, const std::vector<MatJet>& B,
                                   int N, int d, double kappa) {
  std::vector<MatJet> out;
  out.reserve(N + 1);
  for (int k = 0; k <= N; ++k) out.push_back(moyal_term_jets(A, B, k, d, kappa));
  return out;
}

std::vector<MatJet> series_adjoint(const std::vector<MatJet>& A) {
  std::vector<MatJet> out;
  out.reserve(A.size());
  for (const auto& a : A) out.push_back(a.empty() ? a : a.adjoint());
  return out;
}

std::vector<MatJet> series_sub(const std::vector<MatJet>& A, const std::vector<MatJet>& B) {
  std::vector<MatJet> out(std::max(A.size(), B.size()));
  for (size_t i = 0; i < out.size(); ++i) {
    if (i < A.size() && !A[i].empty()) out[i] = A[i];
    if (i < B.size() && !B[i].empty()) {
      if (out[i].empty()) out[i] = -B[i]; else out[i] -= B[i];
    }
  }
  return out;
}

}  // namespace adpt
