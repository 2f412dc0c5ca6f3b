#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adpt/errors.hpp"
#include "adpt/jet.hpp"

namespace adpt {

using Eigen::VectorXd;

struct PhasePoint {
  VectorXd q, p;

  PhasePoint() {}
  PhasePoint(VectorXd q_, VectorXd p_) : q(std::move(q_)), p(std::move(p_)) {}
  static PhasePoint of(std::initializer_list<double> qs, std::initializer_list<double> ps);
  int dim() const { return static_cast<int>(q.size()); }
  double coord(int var) const { return var < q.size() ? q[var] : p[var - q.size()]; }
  PhasePoint shifted(int var, double h) const;
  bool finite() const;
};

// Matrix-valued phase-space symbol queried through values and Taylor jets.
// A symbol may carry an analytic jet evaluator (exact, from Taylor-mode AD
// or a closed form); otherwise jets fall back to central finite differences
// with per-order steps h_m = fd_h0 * fd_c^m.
class MatrixSymbol {
public:
  using Eval = std::function<MatrixXcd(const PhasePoint&)>;
  using JetEval = std::function<MatJet(const PhasePoint&, int)>;

  MatrixSymbol() : d_(0), n_(0) {}
  MatrixSymbol(int d, int n, bool hermitian, Eval eval, JetEval jet = nullptr,
               int max_jet_order = 4);

  static MatrixSymbol constant(int d, const MatrixXcd& value);

  int d() const { return d_; }
  int n() const { return n_; }
  bool hermitian() const { return herm_; }
  int max_jet_order() const { return max_jet_; }
  bool has_analytic_jet() const { return static_cast<bool>(jet_); }

  MatrixXcd operator()(const PhasePoint& z) const;
  MatJet jet(const PhasePoint& z, int K) const;

  // Finite-difference step policy (used only on the fallback path).
  double fd_h0 = 1e-4;
  double fd_c = 3.0;

  MatrixSymbol adjointed() const;
  MatrixSymbol scaled(Cplx s) const;

private:
  int d_, n_;
  bool herm_ = false;
  int max_jet_ = 4;
  Eval eval_;
  JetEval jet_;

  MatJet fd_jet(const PhasePoint& z, int K) const;
};

// Truncated power series sum_j eps^j terms[j] of symbols sharing (d, n).
class FormalSymbol {
public:
  FormalSymbol() {}
  explicit FormalSymbol(std::vector<MatrixSymbol> terms);
  static FormalSymbol principal(MatrixSymbol h0) { return FormalSymbol({std::move(h0)}); }

  int order() const { return static_cast<int>(terms_.size()) - 1; }
  int d() const { return terms_.at(0).d(); }
  int n() const { return terms_.at(0).n(); }
  const MatrixSymbol& term(int j) const { return terms_.at(j); }
  const std::vector<MatrixSymbol>& terms() const { return terms_; }

  // Jets of terms 0..min(order, jmax) at z, term j to order K - j.
  std::vector<MatJet> jets(const PhasePoint& z, int K, int jmax = -1) const;

private:
  std::vector<MatrixSymbol> terms_;
};

// --- truncated Moyal algebra (public operations) -------------------------

MatrixXcd poisson_bracket(const MatrixSymbol& A, const MatrixSymbol& B, const PhasePoint& z);

MatrixXcd moyal_term(const FormalSymbol& A, const FormalSymbol& B, int k, const PhasePoint& z,
                     double kappa = 1.0);

FormalSymbol moyal_mul(const FormalSymbol& A, const FormalSymbol& B, int N, double kappa = 1.0);

FormalSymbol moyal_commutator(const FormalSymbol& A, const FormalSymbol& B, int N,
                              double kappa = 1.0);

// --- helpers for building symbols from generic (AD-able) evaluators ------

template <class S>
struct GenMat {
  int rows = 0, cols = 0;
  std::vector<S> a;
  GenMat() {}
  GenMat(int r, int c) : rows(r), cols(c), a(r * c) {}
  S& operator()(int i, int j) { return a[i * cols + j]; }
  const S& operator()(int i, int j) const { return a[i * cols + j]; }
};

// F must provide: template operator()(vector<S> q, vector<S> p) -> GenMat<S>
// for S in {Cplx, Taylor}.  The resulting symbol has exact jets.
template <class F>
MatrixSymbol make_ad_symbol(int d, int n, bool hermitian, F f, int max_jet = 8) {
  auto eval = [f, n](const PhasePoint& z) -> MatrixXcd {
    std::vector<Cplx> q(z.q.size()), p(z.p.size());
    for (int i = 0; i < z.q.size(); ++i) q[i] = z.q[i];
    for (int i = 0; i < z.p.size(); ++i) p[i] = z.p[i];
    GenMat<Cplx> m = f(q, p);
    MatrixXcd out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
    return out;
  };
  auto jet = [f, d, n](const PhasePoint& z, int K) -> MatJet {
    auto mis = MultiIndexSet::get(2 * d, K);
    std::vector<Taylor> q(d), p(d);
    for (int i = 0; i < d; ++i) q[i] = Taylor::variable(mis, K, i, z.q[i]);
    for (int i = 0; i < d; ++i) p[i] = Taylor::variable(mis, K, d + i, z.p[i]);
    GenMat<Taylor> m = f(q, p);
    MatJet out(mis, K, m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) out.set_entry(i, j, m(i, j));
    return out;
  };
  return MatrixSymbol(d, n, hermitian, eval, jet, max_jet);
}

// Symbol wrapper around a jet evaluator (e.g. an expansion-engine term).
MatrixSymbol symbol_from_jet_fn(int d, int n, bool hermitian, MatrixSymbol::JetEval jets,
                                int max_jet = 6);

}  // namespace adpt
