#pragma once

#include <cstdint>
#include <vector>

#include "adpt/symbol.hpp"

namespace adpt {

// Box in phase space; used for quasi-random sample sets.
struct PhaseBox {
  std::vector<double> q_lo, q_hi, p_lo, p_hi;
  static PhaseBox cube(int d, double qlim, double plim);
};

// Halton sequence in 2d dimensions mapped into the box.  Deterministic;
// the seed enters only as a start offset, so identical (box, count, seed)
// always reproduces the same points.
std::vector<PhasePoint> sample_box(const PhaseBox& box, int count, std::uint64_t seed);

}  // namespace adpt
