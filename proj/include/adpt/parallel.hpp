#pragma once

#include <cstdint>
#include <functional>

namespace adpt {

// Thread count resolution: explicit request > ADPT_THREADS env > OpenMP default.
int effective_threads(int requested = 0);

// Parallel loop over [0, n).  Iterations must write to disjoint state; the
// result must not depend on the schedule.  threads == 1 runs the plain
// serial loop (the reference path used by the consistency tests).
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& body);

// Serial reference twin, kept separate so tests and benchmarks can compare
// against the OpenMP path explicitly.
void serial_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace adpt
