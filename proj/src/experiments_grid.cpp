#include <Eigen/Eigenvalues>
#include <fstream>

#include "adpt/experiments.hpp"
#include "adpt/models/two_level.hpp"
#include "adpt/parallel.hpp"
#include "adpt/qb_ops.hpp"
#include "adpt/quantize.hpp"
#include "adpt/sampling.hpp"
#include "adpt/slope.hpp"
#include "adpt/wigner.hpp"

namespace adpt::harness {

using nlohmann::json;
using namespace adpt::qbench;

namespace detail {

// from experiments.cpp
std::string fmt(double v);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
json check(const std::string& name, double value, double tol, bool pass);
json check_le(const std::string& name, double value, double tol);
json check_window(const std::string& name, double value, double center, double width);
models::TwoLevelParams two_level_params(const Config& cfg);
ExperimentResult finish(const std::string& name, const Config& cfg, const RunEnv& env,
                        json checks, json extra, std::vector<std::string> files);

namespace {

models::TwoLevelParams grid_model_params(const Config& cfg) {
  auto prm = two_level_params(cfg);
  // the grid harness windows the momentum dependence so the symbol is
  // negligible near the Nyquist wrap (the Grid1D invariant)
  prm.windowed = cfg.get_bool("model", "windowed", true);
  return prm;
}

TwoLevelFast fast_of(const models::TwoLevelParams& prm) {
  return TwoLevelFast{prm.a, prm.b, prm.c_amp, prm.d_amp, prm.L,
                      prm.twist, prm.windowed, prm.p_cut, prm.sharp};
}

}  // namespace

ExperimentResult run_leakage_scaling(const Config& cfg, const RunEnv& env) {
  auto prm = grid_model_params(cfg);
  int n = static_cast<int>(cfg.get_int("grid", "n", 256));
  auto eps_list = cfg.get_list("eps", "list", {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64});
  double s_micro = cfg.get_num("time", "value", 1.0);
  int maxN = static_cast<int>(cfg.get_int("order", "max_N", 1));
  double slope_tol = cfg.get_num("tolerances", "slope", 0.3);

  double alias_tol = cfg.get_num("tolerances", "alias", 1e-5);
  models::TwoLevel tl(prm);
  auto ctx = tl.context();
  auto sr = expand_series(ctx, std::max(1, maxN));

  std::vector<std::vector<double>> leak(maxN + 1);
  std::vector<double> leak_macro, effdyn, pi_dist, u_dist;
  double worst_idem = 0.0, worst_itw = 0.0, worst_herm = 0.0, worst_alias = 0.0;

  std::vector<std::vector<double>> rows;
  for (double eps : eps_list) {
    Grid1D g(n, prm.L, 2, eps);
    worst_alias = std::max(worst_alias, alias_check(grid_symbol(tl.H0()), g).wrap_jump);
    MatrixXcd Hh = weyl_quantize(grid_symbol(tl.H0()), g, AliasPolicy::Check, alias_tol, env.threads);
    worst_herm = std::max(worst_herm, (Hh - Hh.adjoint()).cwiseAbs().maxCoeff() /
                                          std::max(1.0, Hh.norm()));
    Propagator prop(Hh, eps);

    std::vector<MatrixXcd> piq(maxN + 1);
    MatrixXcd acc = weyl_quantize(grid_symbol(sr.pi.term(0)), g, AliasPolicy::Ignore, 1e-6,
                                  env.threads);
    piq[0] = acc;
    double scale = eps;
    for (int N = 1; N <= maxN; ++N) {
      acc += scale * weyl_quantize(grid_symbol(sr.pi.term(N)), g, AliasPolicy::Ignore, 1e-6,
                                   env.threads);
      piq[N] = acc;
      scale *= eps;
    }
    for (int N = 0; N <= maxN; ++N)
      leak[N].push_back(leakage(prop, piq[N], s_micro, TimeMode::Microscopic));
    leak_macro.push_back(leakage(prop, piq[std::min(1, maxN)], 1.0, TimeMode::Macroscopic));

    // effective dynamics + operator-level exactness (criterion 7 / 11 payload)
    MatrixXcd u1h =
        weyl_quantize(grid_symbol(sr.u.term(0)), g, AliasPolicy::Ignore, 1e-6, env.threads) +
        eps * weyl_quantize(grid_symbol(sr.u.term(1)), g, AliasPolicy::Ignore, 1e-6, env.threads);
    MatrixXcd h1h =
        weyl_quantize(grid_symbol(sr.h.term(0)), g, AliasPolicy::Ignore, 1e-6, env.threads) +
        eps * weyl_quantize(grid_symbol(sr.h.term(1)), g, AliasPolicy::Ignore, 1e-6, env.threads);
    double dpi = 0.0, du = 0.0;
    MatrixXcd Pi = project_spectral(piq[std::min(1, maxN)], &dpi);
    MatrixXcd Pi_r = MatrixXcd::Zero(g.dim(), g.dim());
    for (int i = 0; i < g.n; ++i) Pi_r(i * 2, i * 2) = 1.0;
    MatrixXcd U = unitarize(u1h, Pi, Pi_r, &du);
    pi_dist.push_back(dpi);
    u_dist.push_back(du);
    worst_idem = std::max(worst_idem, (Pi * Pi - Pi).cwiseAbs().maxCoeff());
    worst_itw = std::max(worst_itw, (U * Pi * U.adjoint() - Pi_r).cwiseAbs().maxCoeff());
    Propagator proph(h1h, eps);
    MatrixXcd diff = (prop.at(s_micro, TimeMode::Microscopic) -
                      u1h.adjoint() * proph.at(s_micro, TimeMode::Microscopic) * u1h) *
                     Pi;
    effdyn.push_back(op_norm(diff));

    std::vector<double> row{eps};
    for (int N = 0; N <= maxN; ++N) row.push_back(leak[N].back());
    row.push_back(leak_macro.back());
    row.push_back(effdyn.back());
    row.push_back(dpi);
    row.push_back(du);
    rows.push_back(row);
  }

  std::vector<std::string> header{"eps"};
  for (int N = 0; N <= maxN; ++N) header.push_back("leak_N" + std::to_string(N));
  header.insert(header.end(), {"leak_macro_N1", "effdyn_err", "pi_spectral_dist", "u_unitarize_dist"});
  std::string csv = env.out_dir + "/leakage-scaling.csv";
  write_csv(csv, header, rows);

  json checks = json::array();
  json slopes;
  for (int N = 0; N <= maxN; ++N) {
    SlopeFit f = fit_slope_drop(eps_list, leak[N]);
    slopes["leak_N" + std::to_string(N)] = f.slope;
    checks.push_back(check_window("leakage_slope_N" + std::to_string(N), f.slope, N + 1.0,
                                  slope_tol));
  }
  SlopeFit fm = fit_slope_drop(eps_list, leak_macro);
  slopes["leak_macro_N1"] = fm.slope;
  checks.push_back(check_window("leakage_macro_slope_N1", fm.slope, 1.0, slope_tol));
  SlopeFit fe = fit_slope_drop(eps_list, effdyn);
  slopes["effdyn"] = fe.slope;
  checks.push_back(check_window("effective_dynamics_slope", fe.slope, 2.0, slope_tol));
  SlopeFit fp = fit_slope_drop(eps_list, pi_dist);
  SlopeFit fu = fit_slope_drop(eps_list, u_dist);
  slopes["pi_spectral_dist"] = fp.slope;
  slopes["u_unitarize_dist"] = fu.slope;
  checks.push_back(check_window("projector_purification_slope", fp.slope, 2.0, slope_tol));
  checks.push_back(check_window("unitarization_distance_slope", fu.slope, 2.0, slope_tol));
  checks.push_back(check_le("spectral_projector_idempotency", worst_idem, 1e-12));
  checks.push_back(check_le("unitarize_intertwining", worst_itw, 1e-12));
  checks.push_back(check_le("quantize_hermiticity", worst_herm, 1e-10));
  checks.push_back(check_le("nyquist_wrap_jump", worst_alias, alias_tol));
  json extra{{"n", n}, {"slopes", slopes}, {"windowed", prm.windowed}};
  return finish("leakage-scaling", cfg, env, checks, extra, {csv});
}

// ---------------------------------------------------------------------------

namespace {

struct EgorovTables {
  std::vector<double> a0t, a1t;  // on the (x_i, p_half) quantization lattice
};

// a0 = sin(2 pi q / L) exp(-w p^2) chi(p) and its gradient
void a0_field(const TwoLevelFast& f, double w_p, double q, double p, double& v, double& dq,
              double& dp) {
  double al = 2.0 * M_PI / f.L;
  double x = f.sharp * (p * p - f.p_cut * f.p_cut);
  double chi, chi1;
  if (f.windowed) {
    double sg = x > 0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
    chi = sg;
    chi1 = sg * (1.0 - sg) * (-2.0 * f.sharp * p);
  } else {
    chi = 1.0;
    chi1 = 0.0;
  }
  double gp = std::exp(-w_p * p * p);
  double G = gp * chi, G1 = -2.0 * w_p * p * gp * chi + gp * chi1;
  v = std::sin(al * q) * G;
  dq = al * std::cos(al * q) * G;
  dp = std::sin(al * q) * G1;
}

// forward RK4 with tangent on the fast model
void fast_flow(const TwoLevelFast& f, double& q, double& p, double M[2][2], double dt,
               bool with_tangent) {
  auto field = [&f](double qq, double pp, double& fq, double& fp) { f.flow_field(qq, pp, fq, fp); };
  double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
  field(q, p, k1q, k1p);
  field(q + 0.5 * dt * k1q, p + 0.5 * dt * k1p, k2q, k2p);
  field(q + 0.5 * dt * k2q, p + 0.5 * dt * k2p, k3q, k3p);
  field(q + dt * k3q, p + dt * k3p, k4q, k4p);
  if (with_tangent) {
    double J1[2][2], J2[2][2], J3[2][2], J4[2][2];
    f.flow_jacobian(q, p, J1);
    f.flow_jacobian(q + 0.5 * dt * k1q, p + 0.5 * dt * k1p, J2);
    f.flow_jacobian(q + 0.5 * dt * k2q, p + 0.5 * dt * k2p, J3);
    f.flow_jacobian(q + dt * k3q, p + dt * k3p, J4);
    double A1[2][2], A2[2][2], A3[2][2], A4[2][2], Mn[2][2];
    auto mul = [](const double A[2][2], const double B[2][2], double C[2][2]) {
      C[0][0] = A[0][0] * B[0][0] + A[0][1] * B[1][0];
      C[0][1] = A[0][0] * B[0][1] + A[0][1] * B[1][1];
      C[1][0] = A[1][0] * B[0][0] + A[1][1] * B[1][0];
      C[1][1] = A[1][0] * B[0][1] + A[1][1] * B[1][1];
    };
    double T[2][2];
    mul(J1, M, A1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) T[i][j] = M[i][j] + 0.5 * dt * A1[i][j];
    mul(J2, T, A2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) T[i][j] = M[i][j] + 0.5 * dt * A2[i][j];
    mul(J3, T, A3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) T[i][j] = M[i][j] + dt * A3[i][j];
    mul(J4, T, A4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        Mn[i][j] = M[i][j] + (dt / 6.0) * (A1[i][j] + 2 * A2[i][j] + 2 * A3[i][j] + A4[i][j]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) M[i][j] = Mn[i][j];
  }
  q += (dt / 6.0) * (k1q + 2 * k2q + 2 * k3q + k4q);
  p += (dt / 6.0) * (k1p + 2 * k2p + 2 * k3p + k4p);
}

// a0(t) and the Duhamel correction a1(t) at a single lattice point
void egorov_at(const TwoLevelFast& f, double w_p, double q0s, double p0s, double t, double dt,
               double& a0t, double& a1t) {
  int m = std::max(2, 2 * static_cast<int>(std::ceil(t / (2.0 * dt))));
  double h = t / m;
  std::vector<double> qs(m + 1), ps(m + 1);
  std::vector<std::array<double, 4>> Ms(m + 1);
  double q = q0s, p = p0s, M[2][2] = {{1, 0}, {0, 1}};
  qs[0] = q;
  ps[0] = p;
  Ms[0] = {1, 0, 0, 1};
  for (int k = 0; k < m; ++k) {
    fast_flow(f, q, p, M, h, true);
    qs[k + 1] = q;
    ps[k + 1] = p;
    Ms[k + 1] = {M[0][0], M[0][1], M[1][0], M[1][1]};
  }
  double av, adq, adp;
  a0_field(f, w_p, qs[m], ps[m], av, adq, adp);
  a0t = av;
  // Simpson over s: integrand +{h1, a0 o Phi^s}(Phi^{t-s} z)  (the transport
  // phases of the scalar band cancel)
  double Mt00 = Ms[m][0], Mt01 = Ms[m][1], Mt10 = Ms[m][2], Mt11 = Ms[m][3];
  double acc = 0.0;
  for (int j = 0; j <= m; ++j) {
    double w = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    int ku = m - j;
    // DPhi^s(w) = M(t) M(u)^{-1}
    double a = Ms[ku][0], b = Ms[ku][1], c = Ms[ku][2], d = Ms[ku][3];
    double det = a * d - b * c;
    double i00 = d / det, i01 = -b / det, i10 = -c / det, i11 = a / det;
    double s00 = Mt00 * i00 + Mt01 * i10, s01 = Mt00 * i01 + Mt01 * i11;
    double s10 = Mt10 * i00 + Mt11 * i10, s11 = Mt10 * i01 + Mt11 * i11;
    double dq_comp = adq * s00 + adp * s10;  // d/dw_q [a0 o Phi^s]
    double dp_comp = adq * s01 + adp * s11;
    double hv, hdq, hdp;
    f.h1_grad(qs[ku], ps[ku], hv, hdq, hdp);
    double bracket = hdp * dq_comp - hdq * dp_comp;
    acc += w * bracket;
  }
  a1t = acc * (h / 3.0);
}

}  // namespace

ExperimentResult run_egorov_scaling(const Config& cfg, const RunEnv& env) {
  auto prm = grid_model_params(cfg);
  if (!cfg.has("model", "twist")) prm.twist = 0.7;  // band block must have h1 != 0
  int n = static_cast<int>(cfg.get_int("grid", "n", 256));
  auto eps_list = cfg.get_list("eps", "list", {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64});
  double t = cfg.get_num("time", "value", 1.0);
  double dt = cfg.get_num("time", "dt", 0.02);
  double slope_tol = cfg.get_num("tolerances", "slope", 0.3);
  double w_p = cfg.get_num("observable", "p_width", 4.0);
  double alias_tol = cfg.get_num("tolerances", "alias", 1e-5);

  models::TwoLevel tl(prm);
  TwoLevelFast fast = fast_of(prm);
  const MatrixSymbol& Er = tl.Er();
  const MatrixSymbol& h1 = tl.h1_upper();

  std::vector<double> err0s, err1s;
  std::vector<std::vector<double>> rows;
  for (double eps : eps_list) {
    Grid1D g(n, prm.L, 1, eps);
    GridSymbol heff = [&](double q, double p) {
      PhasePoint z = PhasePoint::of({q}, {p});
      MatrixXcd m(1, 1);
      m(0, 0) = Er(z)(0, 0) + eps * h1(z)(0, 0);
      return m;
    };
    GridSymbol a0sym = [&fast, w_p](double q, double p) {
      double v, dq, dp;
      a0_field(fast, w_p, q, p, v, dq, dp);
      MatrixXcd m(1, 1);
      m(0, 0) = v;
      return m;
    };
    MatrixXcd Hh = weyl_quantize(heff, g, AliasPolicy::Check, alias_tol, env.threads);
    MatrixXcd A0 = weyl_quantize(a0sym, g, AliasPolicy::Check, alias_tol, env.threads);

    // transported tables on the (x_i, p_half) lattice
    std::vector<double> a0t(n * 2 * n), a1t(n * 2 * n);
    parallel_for(static_cast<std::int64_t>(n) * 2 * n, env.threads, [&](std::int64_t idx) {
      int i = static_cast<int>(idx / (2 * n)), hh = static_cast<int>(idx % (2 * n));
      double q = g.x(i), p = 0.5 * g.dp() * (hh - n);
      egorov_at(fast, w_p, q, p, t, dt, a0t[idx], a1t[idx]);
    });
    auto table_sym = [&](const std::vector<double>& tab) {
      return GridSymbol([&tab, n, &g](double q, double p) {
        int i = static_cast<int>(std::llround((q - g.x(0)) / g.dx()));
        int hh = static_cast<int>(std::llround(p / (0.5 * g.dp()))) + n;
        i = ((i % n) + n) % n;
        MatrixXcd m(1, 1);
        m(0, 0) = (hh < 0 || hh >= 2 * n) ? 0.0 : tab[i * 2 * n + hh];
        return m;
      });
    };
    MatrixXcd W0 = weyl_quantize(table_sym(a0t), g, AliasPolicy::Ignore, 1e-6, env.threads);
    MatrixXcd W1 =
        W0 + eps * weyl_quantize(table_sym(a1t), g, AliasPolicy::Ignore, 1e-6, env.threads);
    Propagator prop(Hh, eps);
    double e0 = egorov_error(prop, A0, W0, t);
    double e1 = egorov_error(prop, A0, W1, t);
    err0s.push_back(e0);
    err1s.push_back(e1);
    rows.push_back({eps, e0, e1});
  }

  std::string csv = env.out_dir + "/egorov-scaling.csv";
  write_csv(csv, {"eps", "err_a0", "err_a0_plus_eps_a1"}, rows);

  SlopeFit f0 = fit_slope_drop(eps_list, err0s);
  SlopeFit f1 = fit_slope_drop(eps_list, err1s);
  json checks = json::array();
  checks.push_back(check_window("egorov_slope_uncorrected", f0.slope, 1.0, slope_tol));
  checks.push_back(check_window("egorov_slope_corrected", f1.slope, 2.0, slope_tol));
  json extra{{"n", n}, {"t", t}, {"twist", prm.twist},
             {"slopes", json{{"uncorrected", f0.slope}, {"corrected", f1.slope}}}};
  return finish("egorov-scaling", cfg, env, checks, extra, {csv});
}

// ---------------------------------------------------------------------------

ExperimentResult run_wigner_snapshot(const Config& cfg, const RunEnv& env) {
  auto prm = grid_model_params(cfg);
  int n = static_cast<int>(cfg.get_int("grid", "n", 128));
  double eps = cfg.get_num("grid", "eps", 1.0 / 16);
  double q0 = cfg.get_num("state", "q0", 0.5);
  double p0 = cfg.get_num("state", "p0", 0.4);
  double sigma = cfg.get_num("state", "sigma", 1.0);

  Grid1D g(n, prm.L, 2, eps);
  Eigen::VectorXcd fiber(2);
  fiber << 1.0, 0.5;
  WaveFn psi = gaussian_packet(g, q0, p0, sigma, fiber);
  WignerArray W = wigner(psi, g);

  double norm_err = std::abs(W.total_trace(g) - 1.0);

  // duality against the quantization of a benign observable
  TwoLevelFast fast = fast_of(prm);
  GridSymbol a0 = [&fast](double q, double p) {
    double v, dq, dp;
    a0_field(fast, 4.0, q, p, v, dq, dp);
    MatrixXcd m = MatrixXcd::Identity(2, 2);
    return MatrixXcd(v * m);
  };
  MatrixXcd A0 = weyl_quantize(a0, g, AliasPolicy::Check, 1e-6, env.threads);
  Cplx lhs = (psi.values.adjoint() * (A0 * psi.values))(0, 0) * g.dx();
  Cplx rhs = wigner_pair(W, a0, g);
  double duality_err = std::abs(lhs - rhs);

  // peak location
  double best = -1.0;
  int bi = 0, bk = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double tr = W.at(i, k).trace().real();
      if (tr > best) {
        best = tr;
        bi = i;
        bk = k;
      }
    }
  double peak_q = g.x(bi), peak_p = g.p(bk - n / 2);
  bool peak_ok = std::abs(peak_q - q0) <= 4 * g.dx() && std::abs(peak_p - p0) <= 4 * g.dp();

  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      rows.push_back({g.x(i), g.p(k - n / 2), W.at(i, k).trace().real()});
  std::string csv = env.out_dir + "/wigner-snapshot.csv";
  write_csv(csv, {"q", "p", "trace_W"}, rows);

  json checks = json::array();
  checks.push_back(check_le("lattice_normalization", norm_err, 1e-8));
  checks.push_back(check_le("quantization_duality", duality_err, 1e-6));
  checks.push_back(check("peak_location", std::hypot(peak_q - q0, peak_p - p0), 4 * g.dx(),
                         peak_ok));
  json extra{{"n", n}, {"eps", eps}, {"peak_q", peak_q}, {"peak_p", peak_p}};
  return finish("wigner-snapshot", cfg, env, checks, extra, {csv});
}

}  // namespace detail

}  // namespace adpt::harness
