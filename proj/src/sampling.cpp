#include "adpt/sampling.hpp"

namespace adpt {

PhaseBox PhaseBox::cube(int d, double qlim, double plim) {
  PhaseBox b;
  b.q_lo.assign(d, -qlim);
  b.q_hi.assign(d, qlim);
  b.p_lo.assign(d, -plim);
  b.p_hi.assign(d, plim);
  return b;
}

namespace {

double halton(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

std::vector<PhasePoint> sample_box(const PhaseBox& box, int count, std::uint64_t seed) {
  int d = static_cast<int>(box.q_lo.size());
  std::vector<PhasePoint> pts;
  pts.reserve(count);
  std::uint64_t start = 17 + 1000 * seed;
  for (int k = 0; k < count; ++k) {
    PhasePoint z;
    z.q.resize(d);
    z.p.resize(d);
    for (int v = 0; v < d; ++v) {
      double uq = halton(start + k, kPrimes[v % 12]);
      double up = halton(start + k, kPrimes[(d + v) % 12]);
      z.q[v] = box.q_lo[v] + uq * (box.q_hi[v] - box.q_lo[v]);
      z.p[v] = box.p_lo[v] + up * (box.p_hi[v] - box.p_lo[v]);
    }
    pts.push_back(std::move(z));
  }
  return pts;
}

}  // namespace adpt
