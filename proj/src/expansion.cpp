#include "adpt/expansion.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>

#include "adpt/parallel.hpp"

namespace adpt {

namespace {

MatJet scalar_to_eye(const MatJet& s, int n) {
  MatJet out(s.table(), s.order(), n, n);
  for (int pos = 0; pos < s.ncoeff(); ++pos)
    out.coeff(pos) = s.coeff(pos)(0, 0) * MatrixXcd::Identity(n, n);
  return out;
}

MatJet const_jet(const MatJet& like, const MatrixXcd& m) {
  return MatJet::constant(like.table(), like.order(), m);
}

// orthonormal basis of Ran(pi_r) as an n x ell matrix, deterministic
MatrixXcd ref_basis(const MatrixXcd& pi_r, int ell) {
  const int n = static_cast<int>(pi_r.rows());
  // exact 0/1 diagonal: standard basis columns in index order
  bool diag01 = true;
  for (int i = 0; i < n && diag01; ++i)
    for (int j = 0; j < n && diag01; ++j) {
      Cplx v = pi_r(i, j);
      if (i == j) diag01 = std::abs(v - 1.0) < 1e-12 || std::abs(v) < 1e-12;
      else diag01 = std::abs(v) < 1e-12;
    }
  MatrixXcd C(n, ell);
  if (diag01) {
    int c = 0;
    for (int i = 0; i < n && c < ell; ++i)
      if (std::abs(pi_r(i, i) - 1.0) < 1e-12) C.col(c++) = MatrixXcd::Identity(n, n).col(i);
    if (c != ell) throw Error("ref_basis: rank mismatch");
    return C;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(pi_r);
  int c = 0;
  for (int i = 0; i < n && c < ell; ++i)
    if (es.eigenvalues()[n - 1 - i] > 0.5) C.col(c++) = es.eigenvectors().col(n - 1 - i);
  if (c != ell) throw Error("ref_basis: rank mismatch");
  return C;
}

struct EngineInput {
  std::vector<MatJet> H;
  MatJet pi0, ErI, u0, R0, one;
  MatrixXcd pi_r;
  int d, n, ell;
  double kappa;
};

EngineInput load_inputs(const ExpansionContext& ctx, const PhasePoint& z, int K) {
  EngineInput in;
  in.d = ctx.d();
  in.n = ctx.n();
  in.ell = ctx.ell;
  in.kappa = ctx.moyal_scale;
  in.pi_r = ctx.pi_r;
  in.H = ctx.H.jets(z, K);
  in.pi0 = ctx.pi0.jet(z, K);
  MatJet er = ctx.Er.jet(z, K);
  in.ErI = scalar_to_eye(er, in.n);
  in.u0 = ctx.u0.jet(z, K);
  in.one = const_jet(in.pi0, MatrixXcd::Identity(in.n, in.n));
  // R0 = (H0 - Er + pi0)^{-1} (1 - pi0): exact on jets, gap-protected value
  MatJet M = in.H[0] - in.ErI + in.pi0;
  in.R0 = MatJet::mul(MatJet::inverse(M), in.one - in.pi0);
  return in;
}

std::vector<MatJet> build_pi(const EngineInput& in, int N) {
  std::vector<MatJet> pi;
  pi.push_back(in.pi0);
  for (int nn = 0; nn + 1 <= N; ++nn) {
    int k = nn + 1;
    MatJet G = moyal_term_jets(pi, pi, k, in.d, in.kappa);
    MatJet piD = -(in.pi0 * G * in.pi0) + (in.one - in.pi0) * G * (in.one - in.pi0);
    std::vector<MatJet> omega = pi;
    omega.push_back(piD);
    MatJet F = moyal_term_jets(in.H, omega, k, in.d, in.kappa) -
               moyal_term_jets(omega, in.H, k, in.d, in.kappa);
    MatJet piOD = in.pi0 * F * in.R0 - in.R0 * F * in.pi0;
    pi.push_back(piD + piOD);
  }
  return pi;
}

std::vector<MatJet> build_u(const EngineInput& in, const std::vector<MatJet>& pi, int N) {
  std::vector<MatJet> u;
  u.push_back(in.u0);
  MatJet pirJ = const_jet(in.pi0, in.pi_r);
  for (int nn = 0; nn + 1 <= N; ++nn) {
    int k = nn + 1;
    MatJet A = moyal_term_jets(u, series_adjoint(u), k, in.d, in.kappa);
    MatJet a = A * Cplx(-0.5);
    std::vector<MatJet> w = u;
    w.push_back(a * in.u0);
    auto wpi = moyal_mul_jets(w, pi, k, in.d, in.kappa);
    MatJet B = moyal_term_jets(wpi, series_adjoint(w), k, in.d, in.kappa);
    MatJet b = pirJ * B - B * pirJ;
    u.push_back((a + b) * in.u0);
  }
  return u;
}

std::vector<MatJet> build_h(const EngineInput& in, const std::vector<MatJet>& u, int N) {
  auto uh = moyal_mul_jets(u, in.H, N, in.d, in.kappa);
  return moyal_mul_jets(uh, series_adjoint(u), N, in.d, in.kappa);
}

}  // namespace

void ExpansionContext::validate(const std::vector<PhasePoint>& samples, double tol) const {
  MatrixXcd prod = pi_r * pi_r - pi_r;
  if (prod.cwiseAbs().maxCoeff() > 1e-12 || (pi_r - pi_r.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error("ExpansionContext: pi_r is not an orthogonal projector");
  int rank = static_cast<int>(std::lround(pi_r.trace().real()));
  if (rank != ell) throw Error("ExpansionContext: rank(pi_r) != ell");
  const int nn = n();
  for (const auto& z : samples) {
    MatrixXcd U = u0(z);
    if ((U * U.adjoint() - MatrixXcd::Identity(nn, nn)).cwiseAbs().maxCoeff() > tol)
      throw Error("ExpansionContext: u0 not unitary at a sample point");
    MatrixXcd P = pi0(z);
    if ((U * P * U.adjoint() - pi_r).cwiseAbs().maxCoeff() > tol)
      throw Error("ExpansionContext: intertwining relation fails at a sample point");
    MatrixXcd Hv = H.term(0)(z);
    MatrixXcd basisCheck = Hv * P - P * Hv;
    if (basisCheck.cwiseAbs().maxCoeff() > tol * std::max(1.0, Hv.norm()))
      throw Error("ExpansionContext: pi0 does not commute with H0 at a sample point");
  }
}

ExpansionContext ExpansionContext::generic(const FormalSymbol& H, const BandSpec& band,
                                           const PhasePoint& anchor, double fd_h0) {
  ExpansionContext ctx;
  ctx.H = H;
  ctx.pi0 = spectral_projector_symbol(H.term(0), band);
  ctx.pi0.fd_h0 = fd_h0;
  ctx.Er = band_energy_symbol(H.term(0), band);
  ctx.Er.fd_h0 = fd_h0;
  ctx.u0 = anchored_frame_unitary(H.term(0), band, anchor);
  ctx.u0.fd_h0 = fd_h0;
  ctx.ell = band.ell;
  ctx.gap_floor = band.gap_floor;
  MatrixXcd pr = MatrixXcd::Zero(H.n(), H.n());
  for (int i = 0; i < band.ell; ++i) pr(i, i) = 1.0;
  ctx.pi_r = pr;
  return ctx;
}

SeriesBundle expand_at(const ExpansionContext& ctx, const PhasePoint& z, int N, int extra) {
  int K = N + extra;
  EngineInput in = load_inputs(ctx, z, K);
  SeriesBundle out;
  out.pi = build_pi(in, N);
  out.u = build_u(in, out.pi, N);
  out.h = build_h(in, out.u, N);
  return out;
}

// ---------------------------------------------------------------------------
// public series with a shared per-point cache

namespace {

struct EngineCache {
  std::mutex mu;
  std::map<std::pair<std::vector<double>, int>, std::shared_ptr<SeriesBundle>> entries;
};

std::vector<double> point_key(const PhasePoint& z) {
  std::vector<double> k;
  k.reserve(z.q.size() + z.p.size());
  for (int i = 0; i < z.q.size(); ++i) k.push_back(z.q[i]);
  for (int i = 0; i < z.p.size(); ++i) k.push_back(z.p[i]);
  return k;
}

std::shared_ptr<SeriesBundle> cached_expand(const std::shared_ptr<EngineCache>& cache,
                                            const ExpansionContext& ctx, const PhasePoint& z,
                                            int N, int extra) {
  auto key = std::make_pair(point_key(z), N + extra);
  {
    std::lock_guard<std::mutex> lock(cache->mu);
    auto it = cache->entries.find(key);
    if (it != cache->entries.end()) return it->second;
  }
  auto bundle = std::make_shared<SeriesBundle>(expand_at(ctx, z, N, extra));
  std::lock_guard<std::mutex> lock(cache->mu);
  cache->entries.emplace(key, bundle);
  return bundle;
}

enum class Which { Pi, U, H };

FormalSymbol engine_series(const ExpansionContext& ctx, int N, Which which,
                           std::shared_ptr<EngineCache> cache) {
  std::vector<MatrixSymbol> terms;
  const int d = ctx.d(), n = ctx.n();
  for (int j = 0; j <= N; ++j) {
    auto jet_fn = [ctx, cache, N, j, which](const PhasePoint& z, int K) -> MatJet {
      auto bundle = cached_expand(cache, ctx, z, N, K);
      const auto& vec = which == Which::Pi ? bundle->pi : which == Which::U ? bundle->u : bundle->h;
      return vec.at(j).truncated(K);
    };
    bool herm = (which != Which::U) && (j == 0 ? true : which == Which::Pi);
    terms.push_back(symbol_from_jet_fn(d, n, herm, jet_fn, 6));
  }
  return FormalSymbol(std::move(terms));
}

}  // namespace

FormalSymbol moyal_projector(const ExpansionContext& ctx, int N) {
  return engine_series(ctx, N, Which::Pi, std::make_shared<EngineCache>());
}

FormalSymbol moyal_unitary(const ExpansionContext& ctx, const FormalSymbol& pi, int N) {
  // the engine regenerates pi internally (it is unique); the passed series
  // only fixes the truncation order consistency
  (void)pi;
  return engine_series(ctx, N, Which::U, std::make_shared<EngineCache>());
}

FormalSymbol effective_symbol(const ExpansionContext& ctx, const FormalSymbol& u, int N) {
  std::vector<MatrixSymbol> adj;
  for (const auto& t : u.terms()) adj.push_back(t.adjointed());
  FormalSymbol ustar{adj};
  return moyal_mul(moyal_mul(u, ctx.H, N, ctx.moyal_scale), ustar, N, ctx.moyal_scale);
}

ExpansionSeries expand_series(const ExpansionContext& ctx, int N) {
  auto cache = std::make_shared<EngineCache>();
  ExpansionSeries s;
  s.pi = engine_series(ctx, N, Which::Pi, cache);
  s.u = engine_series(ctx, N, Which::U, cache);
  s.h = engine_series(ctx, N, Which::H, cache);
  return s;
}

// ---------------------------------------------------------------------------
// closed forms

MatrixXcd pi1_closed(const ExpansionContext& ctx, const PhasePoint& z) {
  EngineInput in = load_inputs(ctx, z, 1);
  const Cplx ihalf(0, 0.5);
  MatJet H0pE = in.H[0] + in.ErI;
  MatJet br1 = poisson(H0pE, in.pi0, in.d);
  MatJet br2 = poisson(in.pi0, H0pE, in.d);
  MatJet comp = in.one - in.pi0;
  MatrixXcd od = (ihalf * in.kappa) *
                 (in.R0.value() * comp.value() * br1.value() * in.pi0.value() +
                  in.pi0.value() * br2.value() * in.R0.value() * comp.value());
  if (ctx.H.order() >= 1) {
    MatrixXcd H1 = ctx.H.term(1)(z);
    od += in.pi0.value() * H1 * in.R0.value() + in.R0.value() * H1 * in.pi0.value();
  }
  // diagonal part from the induction step: -pi0 G1 pi0 + (1-pi0) G1 (1-pi0)
  // with G1 = -(i kappa/2){pi0,pi0}
  MatrixXcd brpp = poisson(in.pi0, in.pi0, in.d).value();
  MatrixXcd diag = (ihalf * in.kappa) * (in.pi0.value() * brpp * in.pi0.value() -
                                         comp.value() * brpp * comp.value());
  return od + diag;
}

MatrixXcd u1_closed(const ExpansionContext& ctx, const PhasePoint& z) {
  EngineInput in = load_inputs(ctx, z, 2);
  const Cplx iq(0, 0.25);
  MatJet u0s = in.u0.adjoint();
  MatrixXcd pir = in.pi_r;

  // pi1^OD at z (resolvent part only; the diagonal correction is pi_r-diagonal
  // after rotation and drops out of the commutator anyway, but keep it exact)
  MatrixXcd pi1od;
  {
    MatJet H0pE = in.H[0] + in.ErI;
    MatJet comp = in.one - in.pi0;
    pi1od = Cplx(0, 0.5) * in.kappa *
            (in.R0.value() * comp.value() * poisson(H0pE, in.pi0, in.d).value() * in.pi0.value() +
             in.pi0.value() * poisson(in.pi0, H0pE, in.d).value() * in.R0.value() * comp.value());
    if (ctx.H.order() >= 1) {
      MatrixXcd H1 = ctx.H.term(1)(z);
      pi1od += in.pi0.value() * H1 * in.R0.value() + in.R0.value() * H1 * in.pi0.value();
    }
  }

  MatrixXcd term1 = (iq * in.kappa) * poisson(in.u0, u0s, in.d).value();
  MatrixXcd rot = in.u0.value() * pi1od * in.u0.value().adjoint();
  MatrixXcd term2 = rot * pir - pir * rot;
  MatrixXcd mix = poisson(in.u0, in.pi0, in.d).value() * in.u0.value().adjoint() +
                  in.u0.value() * poisson(in.pi0, u0s, in.d).value();
  MatrixXcd term3 = (iq * in.kappa) * (mix * pir - pir * mix);
  MatrixXcd u1_star = in.u0.value().adjoint() * (term1 + term2 + term3);
  return u1_star.adjoint();
}

namespace {

MatJet h1_block_jet(const EngineInput& in, const std::vector<MatJet>& H, const MatrixXcd& C) {
  MatJet Cj = const_jet(in.u0, C);
  MatJet psi = in.u0.adjoint() * Cj;  // n x ell frame
  MatJet psid = psi.adjoint();
  MatJet h1;
  if (H.size() >= 2 && !H[1].empty()) {
    h1 = psid * H[1] * psi;
  }
  MatJet berry = psid * poisson(in.ErI, psi, in.d);
  berry *= Cplx(0, -1.0) * in.kappa;
  MatJet third = psid * poisson(H[0] - in.ErI, psi, in.d);
  third *= Cplx(0, -0.5) * in.kappa;
  if (h1.empty()) h1 = berry; else h1 += berry;
  h1 += third;
  return h1;
}

}  // namespace

MatrixXcd h1_block(const ExpansionContext& ctx, const PhasePoint& z) {
  EngineInput in = load_inputs(ctx, z, 1);
  MatrixXcd C = ref_basis(ctx.pi_r, ctx.ell);
  return h1_block_jet(in, in.H, C).value();
}

MatrixXcd h2_block(const ExpansionContext& ctx, const PhasePoint& z) {
  const int K = 3;
  EngineInput in = load_inputs(ctx, z, K);
  MatrixXcd C = ref_basis(ctx.pi_r, ctx.ell);
  const int d = in.d;
  const double kap = in.kappa;

  // u1 as a jet: rebuild the closed form on jets so (E # u1)_1 etc. exist
  MatJet u0s = in.u0.adjoint();
  MatJet comp = in.one - in.pi0;
  MatJet H0pE = in.H[0] + in.ErI;
  MatJet pi1od = Cplx(0, 0.5) * kap *
                 (in.R0 * comp * poisson(H0pE, in.pi0, d) * in.pi0 +
                  in.pi0 * poisson(in.pi0, H0pE, d) * in.R0 * comp);
  bool hasH1 = ctx.H.order() >= 1 && !in.H[1].empty();
  if (hasH1) pi1od += in.pi0 * in.H[1] * in.R0 + in.R0 * in.H[1] * in.pi0;
  MatJet pirJ = const_jet(in.pi0, in.pi_r);
  auto comm_pir = [&](const MatJet& X) { return X * pirJ - pirJ * X; };
  MatJet term1 = Cplx(0, 0.25) * kap * poisson(in.u0, u0s, d);
  MatJet term2 = comm_pir(in.u0 * pi1od * u0s);
  MatJet mix = poisson(in.u0, in.pi0, d) * u0s + in.u0 * poisson(in.pi0, u0s, d);
  MatJet term3 = Cplx(0, 0.25) * kap * comm_pir(mix);
  MatJet u1 = (u0s * (term1 + term2 + term3)).adjoint();

  // full h1 from (h1): h1 = (u1 H0 + u0 H1 - h0 u1 + (u0#H0)_1 - (h0#u0)_1) u0*
  MatJet h0 = in.u0 * in.H[0] * u0s;
  MatJet moyal_u0H0_1 = moyal_term_jets({in.u0}, {in.H[0]}, 1, d, kap);
  MatJet moyal_h0u0_1 = moyal_term_jets({h0}, {in.u0}, 1, d, kap);
  MatJet h1full = u1 * in.H[0] - h0 * u1 + moyal_u0H0_1 - moyal_h0u0_1;
  if (hasH1) h1full += in.u0 * in.H[1];
  h1full = h1full * u0s;

  // the nine terms of (h21), sandwiched with pi_r ... u0* and block-reduced
  MatJet sum;
  auto add = [&sum](const MatJet& t) { if (sum.empty()) sum = t; else sum += t; };
  if (ctx.H.order() >= 2 && !in.H[2].empty()) add(in.u0 * in.H[2]);
  if (hasH1) add(u1 * in.H[1]);
  add(-(h1full * u1));
  add(moyal_term_jets({u1}, {in.H[0]}, 1, d, kap));
  if (hasH1) add(moyal_term_jets({in.u0}, {in.H[1]}, 1, d, kap));
  add(-moyal_term_jets({in.ErI}, {u1}, 1, d, kap));
  add(-moyal_term_jets({h1full}, {in.u0}, 1, d, kap));
  add(moyal_term_jets({in.u0}, {in.H[0]}, 2, d, kap));
  add(-moyal_term_jets({in.ErI}, {in.u0}, 2, d, kap));

  MatrixXcd full = sum.value() * in.u0.value().adjoint();
  return C.adjoint() * full * C;
}

double h2_conditioning(const ExpansionContext& ctx, const PhasePoint& z) {
  bool analytic = ctx.pi0.has_analytic_jet() && ctx.u0.has_analytic_jet() &&
                  ctx.Er.has_analytic_jet() && ctx.H.term(0).has_analytic_jet();
  if (analytic) return 0.0;
  ExpansionContext half = ctx;
  half.pi0.fd_h0 *= 0.5;
  half.Er.fd_h0 *= 0.5;
  half.u0.fd_h0 *= 0.5;
  MatrixXcd a = h2_block(ctx, z), b = h2_block(half, z);
  double scale = std::max(1.0, a.norm());
  return (a - b).norm() / scale;
}

// ---------------------------------------------------------------------------
// defect checks

namespace {

double coeff_norm(const MatJet& j) { return j.value().cwiseAbs().maxCoeff(); }

template <class F>
void max_reduce(std::vector<std::vector<double>>& slots, int N, const std::vector<PhasePoint>& pts,
                F per_point) {
  slots.assign(pts.size(), std::vector<double>(N + 1, 0.0));
  parallel_for(static_cast<std::int64_t>(pts.size()), 0,
               [&](std::int64_t i) { slots[i] = per_point(pts[i]); });
}

std::vector<double> col_max(const std::vector<std::vector<double>>& slots, int N) {
  std::vector<double> out(N + 1, 0.0);
  for (const auto& row : slots)
    for (int k = 0; k <= N; ++k) out[k] = std::max(out[k], row[k]);
  return out;
}

}  // namespace

double DefectReport::max() const {
  double m = 0;
  for (double v : idempotency) m = std::max(m, v);
  for (double v : hermiticity) m = std::max(m, v);
  for (double v : h_commutation) m = std::max(m, v);
  return m;
}

double UnitaryDefectReport::max() const {
  double m = 0;
  for (double v : left_unitarity) m = std::max(m, v);
  for (double v : right_unitarity) m = std::max(m, v);
  for (double v : intertwining) m = std::max(m, v);
  return m;
}

double EffectiveDefectReport::max() const {
  double m = 0;
  for (double v : block_diag) m = std::max(m, v);
  for (double v : hermiticity) m = std::max(m, v);
  return m;
}

DefectReport check_projector(const ExpansionContext& ctx, int N,
                             const std::vector<PhasePoint>& pts) {
  std::vector<std::vector<double>> idem, herm, comm;
  idem.assign(pts.size(), {});
  herm.assign(pts.size(), {});
  comm.assign(pts.size(), {});
  parallel_for(static_cast<std::int64_t>(pts.size()), 0, [&](std::int64_t i) {
    const auto& z = pts[i];
    EngineInput in = load_inputs(ctx, z, N);
    auto pi = build_pi(in, N);
    std::vector<double> a(N + 1), b(N + 1), c(N + 1);
    for (int k = 0; k <= N; ++k) {
      MatJet t = moyal_term_jets(pi, pi, k, in.d, in.kappa);
      MatrixXcd defect = t.value() - pi[k].value();
      a[k] = defect.cwiseAbs().maxCoeff();
      b[k] = (pi[k].value() - pi[k].value().adjoint()).cwiseAbs().maxCoeff();
      MatrixXcd cm = moyal_term_jets(in.H, pi, k, in.d, in.kappa).value() -
                     moyal_term_jets(pi, in.H, k, in.d, in.kappa).value();
      c[k] = cm.cwiseAbs().maxCoeff();
    }
    idem[i] = a;
    herm[i] = b;
    comm[i] = c;
  });
  DefectReport rep;
  rep.idempotency = col_max(idem, N);
  rep.hermiticity = col_max(herm, N);
  rep.h_commutation = col_max(comm, N);
  return rep;
}

UnitaryDefectReport check_unitary(const ExpansionContext& ctx, int N,
                                  const std::vector<PhasePoint>& pts) {
  std::vector<std::vector<double>> lu, ru, itw;
  lu.assign(pts.size(), {});
  ru.assign(pts.size(), {});
  itw.assign(pts.size(), {});
  parallel_for(static_cast<std::int64_t>(pts.size()), 0, [&](std::int64_t i) {
    const auto& z = pts[i];
    EngineInput in = load_inputs(ctx, z, N);
    auto pi = build_pi(in, N);
    auto u = build_u(in, pi, N);
    auto us = series_adjoint(u);
    std::vector<double> a(N + 1), b(N + 1), c(N + 1);
    MatrixXcd eye = MatrixXcd::Identity(in.n, in.n);
    for (int k = 0; k <= N; ++k) {
      MatrixXcd l = moyal_term_jets(us, u, k, in.d, in.kappa).value();
      MatrixXcd r = moyal_term_jets(u, us, k, in.d, in.kappa).value();
      if (k == 0) { l -= eye; r -= eye; }
      a[k] = l.cwiseAbs().maxCoeff();
      b[k] = r.cwiseAbs().maxCoeff();
      auto upi = moyal_mul_jets(u, pi, k, in.d, in.kappa);
      MatrixXcd t = moyal_term_jets(upi, us, k, in.d, in.kappa).value();
      if (k == 0) t -= in.pi_r;
      c[k] = t.cwiseAbs().maxCoeff();
    }
    lu[i] = a;
    ru[i] = b;
    itw[i] = c;
  });
  UnitaryDefectReport rep;
  rep.left_unitarity = col_max(lu, N);
  rep.right_unitarity = col_max(ru, N);
  rep.intertwining = col_max(itw, N);
  return rep;
}

EffectiveDefectReport check_effective(const ExpansionContext& ctx, int N,
                                      const std::vector<PhasePoint>& pts) {
  std::vector<std::vector<double>> bd, he;
  bd.assign(pts.size(), {});
  he.assign(pts.size(), {});
  parallel_for(static_cast<std::int64_t>(pts.size()), 0, [&](std::int64_t i) {
    const auto& z = pts[i];
    SeriesBundle s = expand_at(ctx, z, N);
    std::vector<double> a(N + 1), b(N + 1);
    for (int k = 0; k <= N; ++k) {
      MatrixXcd hk = s.h[k].value();
      a[k] = (hk * ctx.pi_r - ctx.pi_r * hk).cwiseAbs().maxCoeff();
      b[k] = (hk - hk.adjoint()).cwiseAbs().maxCoeff();
    }
    bd[i] = a;
    he[i] = b;
  });
  EffectiveDefectReport rep;
  rep.block_diag = col_max(bd, N);
  rep.hermiticity = col_max(he, N);
  return rep;
}

}  // namespace adpt
