#pragma once

#include <memory>
#include <vector>

#include "adpt/band.hpp"
#include "adpt/symbol.hpp"

namespace adpt {

// Everything the order-by-order constructions need.  pi0 / Er / u0 may come
// from a model's closed forms (exact jets) or from the generic eigensolver
// path (finite-difference jets, Nagy-gauged).
struct ExpansionContext {
  FormalSymbol H;      // hermitian; H.term(0) is the principal symbol
  MatrixSymbol pi0;    // band spectral projector of H0
  MatrixSymbol Er;     // 1x1 band energy
  MatrixSymbol u0;     // unitary, u0 pi0 u0* = pi_r
  MatrixXcd pi_r;      // constant reference projector, rank ell
  int ell = 1;
  double gap_floor = 1e-6;
  // Moyal deformation scale: all order-k product terms carry scale^k.
  // For the Dirac symbol this is hbar (quantization in eps*hbar).
  double moyal_scale = 1.0;

  int d() const { return H.d(); }
  int n() const { return H.n(); }

  // Spot-check pi_r, unitarity and the intertwining relation on samples.
  void validate(const std::vector<PhasePoint>& samples, double tol = 1e-8) const;

  // Generic route: eigensolver-backed pi0/Er and an anchored Nagy frame.
  static ExpansionContext generic(const FormalSymbol& H, const BandSpec& band,
                                  const PhasePoint& anchor, double fd_h0 = 1e-4);
};

// Series data at one phase point: jets of the constructed terms.
struct SeriesBundle {
  std::vector<MatJet> pi;  // terms 0..N
  std::vector<MatJet> u;
  std::vector<MatJet> h;
};

// Run the inductive constructions at z.  Terms carry jets deep enough to
// evaluate all order <= N Moyal defects; `extra` adds jet depth on top.
SeriesBundle expand_at(const ExpansionContext& ctx, const PhasePoint& z, int N, int extra = 0);

// --- public series (symbols backed by the engine, cached per point) ------

FormalSymbol moyal_projector(const ExpansionContext& ctx, int N);
FormalSymbol moyal_unitary(const ExpansionContext& ctx, const FormalSymbol& pi, int N);
FormalSymbol effective_symbol(const ExpansionContext& ctx, const FormalSymbol& u, int N);

// Convenience: all three at once, sharing one engine cache.
struct ExpansionSeries {
  FormalSymbol pi, u, h;
};
ExpansionSeries expand_series(const ExpansionContext& ctx, int N);

// --- closed forms (permanent oracles for the generic constructions) ------

// pi1^OD from the resolvent formula plus the diagonal correction fixed by
// the induction step pi1^D = -pi0 G1 pi0 + (1-pi0) G1 (1-pi0).
MatrixXcd pi1_closed(const ExpansionContext& ctx, const PhasePoint& z);

// u1 from the displayed first-order formula (hermitian part fixed by
// unitarity, off-diagonal antihermitian part by the intertwining relation;
// free diagonal antihermitian part set to zero).
MatrixXcd u1_closed(const ExpansionContext& ctx, const PhasePoint& z);

// Band blocks of the effective Hamiltonian (ell x ell, hermitian).
MatrixXcd h1_block(const ExpansionContext& ctx, const PhasePoint& z);
MatrixXcd h2_block(const ExpansionContext& ctx, const PhasePoint& z);

// Conditioning probe for the nested frame derivatives inside h2: relative
// change of the h1 jet under halving of the finite-difference step.  Zero
// for analytic-jet contexts.
double h2_conditioning(const ExpansionContext& ctx, const PhasePoint& z);

// --- defect diagnostics ---------------------------------------------------

struct DefectReport {
  // max over sample points of the order-k coefficient norm
  std::vector<double> idempotency;   // (pi#pi - pi)_k
  std::vector<double> hermiticity;   // (pi - pi*)_k
  std::vector<double> h_commutation; // (H#pi - pi#H)_k
  double max() const;
};

struct UnitaryDefectReport {
  std::vector<double> left_unitarity;   // (u*#u - 1)_k
  std::vector<double> right_unitarity;  // (u#u* - 1)_k
  std::vector<double> intertwining;     // (u#pi#u* - pi_r)_k
  double max() const;
};

struct EffectiveDefectReport {
  std::vector<double> block_diag;  // [h_k, pi_r]
  std::vector<double> hermiticity; // h_k - h_k*
  double max() const;
};

DefectReport check_projector(const ExpansionContext& ctx, int N,
                             const std::vector<PhasePoint>& pts);
UnitaryDefectReport check_unitary(const ExpansionContext& ctx, int N,
                                  const std::vector<PhasePoint>& pts);
EffectiveDefectReport check_effective(const ExpansionContext& ctx, int N,
                                      const std::vector<PhasePoint>& pts);

}  // namespace adpt
