#pragma once

#include <string>

#include "adpt/grid.hpp"

namespace adpt::qbench {

// Binary layout: little-endian, header = magic "ADPT", version u32,
// kind u32 (1 = operator, 2 = wavefunction), rows u64, cols u64, then
// row-major complex128 payload.
void write_operator(const std::string& path, const MatrixXcd& M);
MatrixXcd read_operator(const std::string& path);

void write_wavefn(const std::string& path, const WaveFn& psi);
WaveFn read_wavefn(const std::string& path);

// CSV form for small cases: header row, one "i,j,re,im" line per entry.
void write_operator_csv(const std::string& path, const MatrixXcd& M);

}  // namespace adpt::qbench
