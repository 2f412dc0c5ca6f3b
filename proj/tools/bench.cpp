// Timing comparison of the OpenMP kernels against their serial reference
// implementations: Weyl quantization assembly, defect sample sweeps, and
// the transported-observable lattice used by the Egorov experiment.

#include <chrono>
#include <cstdio>
#include <vector>

#include "adpt/experiments.hpp"
#include "adpt/models/two_level.hpp"
#include "adpt/parallel.hpp"
#include "adpt/quantize.hpp"
#include "adpt/expansion.hpp"
#include "adpt/sampling.hpp"

using namespace adpt;
using namespace adpt::qbench;
using Clock = std::chrono::steady_clock;

static double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
  int threads = argc > 1 ? std::atoi(argv[1]) : effective_threads(0);
  std::printf("threads for parallel path: %d\n\n", threads);

  models::TwoLevelParams prm;
  prm.windowed = true;
  prm.p_cut = std::sqrt(0.8);
  prm.sharp = 6.0;
  prm.twist = 0.7;
  models::TwoLevel tl(prm);

  {
    Grid1D g(128, prm.L, 2, 1.0 / 16);
    auto sym = grid_symbol(tl.H0());
    auto t0 = Clock::now();
    MatrixXcd ref = weyl_quantize_reference(sym, g);
    auto t1 = Clock::now();
    MatrixXcd par = weyl_quantize(sym, g, AliasPolicy::Ignore, 1e-6, threads);
    auto t2 = Clock::now();
    double diff = (ref - par).cwiseAbs().maxCoeff();
    std::printf("weyl_quantize n=128:   serial %7.3fs   parallel %7.3fs   speedup %4.2fx   |diff| %.2e\n",
                seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2), diff);
  }

  {
    auto ctx = tl.context();
    auto pts = sample_box(PhaseBox::cube(1, 4.0, 1.0), 64, 1);
    auto t0 = Clock::now();
    std::vector<double> serial(pts.size());
    serial_for(static_cast<std::int64_t>(pts.size()), [&](std::int64_t i) {
      serial[i] = expand_at(ctx, pts[i], 2).pi[2].value().norm();
    });
    auto t1 = Clock::now();
    std::vector<double> par(pts.size());
    parallel_for(static_cast<std::int64_t>(pts.size()), threads, [&](std::int64_t i) {
      par[i] = expand_at(ctx, pts[i], 2).pi[2].value().norm();
    });
    auto t2 = Clock::now();
    double diff = 0;
    for (size_t i = 0; i < pts.size(); ++i) diff = std::max(diff, std::abs(serial[i] - par[i]));
    std::printf("expansion sweep  x64:  serial %7.3fs   parallel %7.3fs   speedup %4.2fx   |diff| %.2e\n",
                seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2), diff);
  }

  {
    harness::TwoLevelFast fast{prm.a, prm.b, prm.c_amp, prm.d_amp, prm.L,
                               prm.twist, prm.windowed, prm.p_cut, prm.sharp};
    const int n = 128;
    Grid1D g(n, prm.L, 1, 1.0 / 16);
    auto work = [&](std::int64_t idx, std::vector<double>& out) {
      int i = static_cast<int>(idx / (2 * n)), hh = static_cast<int>(idx % (2 * n));
      double q = g.x(i), p = 0.5 * g.dp() * (hh - n);
      double M[2][2] = {{1, 0}, {0, 1}};
      for (int k = 0; k < 50; ++k) {
        double fq, fp;
        fast.flow_field(q, p, fq, fp);
        (void)M;
        q += 0.02 * fq;
        p += 0.02 * fp;
      }
      out[idx] = q + p;
    };
    std::vector<double> a(n * 2 * n), b(n * 2 * n);
    auto t0 = Clock::now();
    serial_for(static_cast<std::int64_t>(n) * 2 * n, [&](std::int64_t i) { work(i, a); });
    auto t1 = Clock::now();
    parallel_for(static_cast<std::int64_t>(n) * 2 * n, threads, [&](std::int64_t i) { work(i, b); });
    auto t2 = Clock::now();
    double diff = 0;
    for (size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    std::printf("flow lattice n=128:    serial %7.3fs   parallel %7.3fs   speedup %4.2fx   |diff| %.2e\n",
                seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2), diff);
  }
  return 0;
}
