#include "adpt/quantize.hpp"

#include <cmath>

#include "adpt/parallel.hpp"

namespace adpt::qbench {

GridSymbol grid_symbol(const MatrixSymbol& A) {
  return [A](double q, double p) { return A(PhasePoint::of({q}, {p})); };
}

GridSymbol grid_symbol_scalar(const std::function<double(double, double)>& f) {
  return [f](double q, double p) {
    MatrixXcd m(1, 1);
    m(0, 0) = f(q, p);
    return m;
  };
}

AliasReport alias_check(const GridSymbol& A, const Grid1D& g) {
  AliasReport rep;
  double tail = 0.0, total = 0.0;
  const int n = g.n;
  for (int s = 0; s < 2 * n - 1; s += std::max(1, n / 8)) {
    double mid = g.x(0) + 0.5 * s * g.dx();
    std::vector<MatrixXcd> vals(n);
    for (int k = 0; k < n; ++k) vals[k] = A(mid, g.p(k - n / 2));
    rep.wrap_jump = std::max(rep.wrap_jump, (vals[n - 1] - vals[0]).cwiseAbs().maxCoeff());
    // q-mode content of the symbol at this momentum: tail = high-mode share
    for (int r = 0; r < n; ++r) {
      MatrixXcd kr = MatrixXcd::Zero(g.m, g.m);
      for (int k = 0; k < n; ++k) {
        double ph = 2.0 * M_PI * static_cast<double>(k - n / 2) * r / n;
        kr += vals[k] * Cplx(std::cos(ph), std::sin(ph));
      }
      double mass = kr.cwiseAbs().maxCoeff() / n;
      total += mass;
      int rr = r <= n / 2 ? r : n - r;
      if (rr > n / 4) tail += mass;
    }
  }
  rep.tail_mass = total > 0 ? tail / total : 0.0;
  return rep;
}

namespace {

// Momentum-representation Weyl matrix elements on the ring:
//   <k'| W(A) |k> = Ahat_{k'-k}( p_{(k+k')/2} ),
// the q-Fourier coefficient of A at the (possibly half-integer) momentum
// midpoint.  This is the exact evaluation of the midpoint/momentum kernel
//   K_A(x,y) = (1/L) sum_k A((x+y)/2, p_k) e^{i p_k (x-y)/eps}
// for band-limited symbols; naive integer-lattice sampling of the momentum
// argument loses the half-integer midpoints of odd q-modes and breaks the
// O(eps) term of the product calculus.
MatrixXcd momentum_rep(const GridSymbol& A, const Grid1D& g, int threads) {
  const int n = g.n, m = g.m;
  // Ahat[t][mode]: q-Fourier coefficients at half-momentum index t,
  // p_t = dp * (t - (n-1)) / 2  for t = 0 .. 2n-2  (i.e. (k+k')/2 lattice)
  std::vector<std::vector<MatrixXcd>> Ahat(2 * n);
  parallel_for(2 * n, threads, [&](std::int64_t t) {
    double p = 0.5 * g.dp() * (static_cast<double>(t) - n);
    std::vector<MatrixXcd> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = A(g.x(i), p);
    auto& slice = Ahat[t];
    slice.assign(n, MatrixXcd::Zero(m, m));
    for (int mode = -n / 2; mode < n / 2; ++mode) {
      MatrixXcd acc = MatrixXcd::Zero(m, m);
      for (int i = 0; i < n; ++i) {
        // e^{-2 pi i mode x_i / L}, x_i = -L/2 + i dx
        double ph = -2.0 * M_PI * mode * (static_cast<double>(i) / n - 0.5);
        acc += vals[i] * Cplx(std::cos(ph), std::sin(ph));
      }
      slice[mode + n / 2] = acc / static_cast<double>(n);
    }
  });

  MatrixXcd Mt = MatrixXcd::Zero(n * m, n * m);
  for (int kp = -n / 2; kp < n / 2; ++kp) {
    for (int k = -n / 2; k < n / 2; ++k) {
      int mode = kp - k;
      if (mode >= n / 2) mode -= n;
      if (mode < -n / 2) mode += n;
      // momentum midpoint on the torus: p = dp (2k + mode)/2 rewrapped,
      // so couplings across the Nyquist wrap sample the symbol there
      int h = 2 * k + mode;
      int hp = ((h + n) % (2 * n) + 2 * n) % (2 * n) - n;
      int t = hp + n;  // p_t = dp (t - n)/2
      Mt.block((kp + n / 2) * m, (k + n / 2) * m, m, m) = Ahat[t][mode + n / 2];
    }
  }
  return Mt;
}

// unitary DFT: position basis from momentum basis, F[i, k] = e^{i p_k x_i / eps}/sqrt(n)
MatrixXcd dft_matrix(const Grid1D& g) {
  const int n = g.n;
  MatrixXcd F(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double ph = 2.0 * M_PI * (k - n / 2) * (static_cast<double>(i) / n - 0.5);
      F(i, k) = Cplx(std::cos(ph), std::sin(ph)) / std::sqrt(static_cast<double>(n));
    }
  return F;
}

MatrixXcd to_position_rep(const MatrixXcd& Mt, const Grid1D& g) {
  const int n = g.n, m = g.m;
  MatrixXcd F = dft_matrix(g);
  MatrixXcd out(n * m, n * m);
  // conjugate blockwise per fiber pair: out = (F (x) 1) Mt (F (x) 1)^*
  for (int s = 0; s < m; ++s)
    for (int sp = 0; sp < m; ++sp) {
      MatrixXcd slice(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) slice(a, b) = Mt(a * m + s, b * m + sp);
      MatrixXcd pos = F * slice * F.adjoint();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out(a * m + s, b * m + sp) = pos(a, b);
    }
  return out;
}

}  // namespace

MatrixXcd weyl_quantize(const GridSymbol& A, const Grid1D& g, AliasPolicy policy,
                        double alias_tol, int threads) {
  const int n = g.n;
  if (policy == AliasPolicy::Check) {
    double jump = 0.0;
    for (int s = 0; s < 2 * n - 1; s += std::max(1, n / 16)) {
      double mid = g.x(0) + 0.5 * s * g.dx();
      jump = std::max(jump,
                      (A(mid, g.p(n / 2 - 1)) - A(mid, g.p(-n / 2))).cwiseAbs().maxCoeff());
    }
    if (jump > alias_tol)
      throw AliasingError("symbol has mass at the Nyquist momentum (wrap jump " +
                              std::to_string(jump) + ")",
                          jump);
  }
  MatrixXcd Mt = momentum_rep(A, g, threads);
  return to_position_rep(Mt, g);
}

MatrixXcd weyl_quantize_reference(const GridSymbol& A, const Grid1D& g) {
  const int n = g.n, m = g.m;
  // same matrix elements, assembled with plain loops and no threading
  MatrixXcd Mt = MatrixXcd::Zero(n * m, n * m);
  for (int kp = -n / 2; kp < n / 2; ++kp) {
    for (int k = -n / 2; k < n / 2; ++k) {
      int mode = kp - k;
      if (mode >= n / 2) mode -= n;
      if (mode < -n / 2) mode += n;
      int h = 2 * k + mode;
      int hp = ((h + n) % (2 * n) + 2 * n) % (2 * n) - n;
      double p = 0.5 * g.dp() * hp;
      MatrixXcd acc = MatrixXcd::Zero(m, m);
      for (int i = 0; i < n; ++i) {
        double ph = -2.0 * M_PI * mode * (static_cast<double>(i) / n - 0.5);
        acc += A(g.x(i), p) * Cplx(std::cos(ph), std::sin(ph));
      }
      Mt.block((kp + n / 2) * m, (k + n / 2) * m, m, m) = acc / static_cast<double>(n);
    }
  }
  MatrixXcd F = dft_matrix(g);
  MatrixXcd out(n * m, n * m);
  for (int s = 0; s < m; ++s)
    for (int sp = 0; sp < m; ++sp) {
      MatrixXcd slice(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) slice(a, b) = Mt(a * m + s, b * m + sp);
      MatrixXcd pos = F * slice * F.adjoint();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out(a * m + s, b * m + sp) = pos(a, b);
    }
  return out;
}

MatrixXcd fourier_multiplier(const std::function<MatrixXcd(double)>& gp, const Grid1D& g) {
  const int n = g.n, m = g.m;
  MatrixXcd Mt = MatrixXcd::Zero(n * m, n * m);
  for (int k = -n / 2; k < n / 2; ++k)
    Mt.block((k + n / 2) * m, (k + n / 2) * m, m, m) = gp(g.p(k));
  return to_position_rep(Mt, g);
}

}  // namespace adpt::qbench
