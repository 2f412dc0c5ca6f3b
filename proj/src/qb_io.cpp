#include "adpt/qb_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace adpt::qbench {

namespace {

constexpr char kMagic[4] = {'A', 'D', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void write_header(std::ofstream& f, std::uint32_t kind, std::uint64_t rows, std::uint64_t cols) {
  f.write(kMagic, 4);
  f.write(reinterpret_cast<const char*>(&kVersion), 4);
  f.write(reinterpret_cast<const char*>(&kind), 4);
  f.write(reinterpret_cast<const char*>(&rows), 8);
  f.write(reinterpret_cast<const char*>(&cols), 8);
}

void read_header(std::ifstream& f, std::uint32_t expect_kind, std::uint64_t& rows,
                 std::uint64_t& cols) {
  char magic[4];
  std::uint32_t version = 0, kind = 0;
  f.read(magic, 4);
  f.read(reinterpret_cast<char*>(&version), 4);
  f.read(reinterpret_cast<char*>(&kind), 4);
  f.read(reinterpret_cast<char*>(&rows), 8);
  f.read(reinterpret_cast<char*>(&cols), 8);
  if (!f || std::memcmp(magic, kMagic, 4) != 0) throw Error("bad ADPT binary header");
  if (version != kVersion) throw Error("unsupported ADPT binary version");
  if (kind != expect_kind) throw Error("ADPT binary kind mismatch");
}

}  // namespace

void write_operator(const std::string& path, const MatrixXcd& M) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  write_header(f, 1, M.rows(), M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      double re = M(i, j).real(), im = M(i, j).imag();
      f.write(reinterpret_cast<const char*>(&re), 8);
      f.write(reinterpret_cast<const char*>(&im), 8);
    }
}

MatrixXcd read_operator(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  std::uint64_t rows = 0, cols = 0;
  read_header(f, 1, rows, cols);
  MatrixXcd M(rows, cols);
  for (std::uint64_t i = 0; i < rows; ++i)
    for (std::uint64_t j = 0; j < cols; ++j) {
      double re = 0, im = 0;
      f.read(reinterpret_cast<char*>(&re), 8);
      f.read(reinterpret_cast<char*>(&im), 8);
      M(i, j) = Cplx(re, im);
    }
  if (!f) throw Error("truncated ADPT binary file");
  return M;
}

void write_wavefn(const std::string& path, const WaveFn& psi) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  write_header(f, 2, psi.values.size(), 1);
  for (Eigen::Index i = 0; i < psi.values.size(); ++i) {
    double re = psi.values[i].real(), im = psi.values[i].imag();
    f.write(reinterpret_cast<const char*>(&re), 8);
    f.write(reinterpret_cast<const char*>(&im), 8);
  }
}

WaveFn read_wavefn(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  std::uint64_t rows = 0, cols = 0;
  read_header(f, 2, rows, cols);
  WaveFn psi;
  psi.values.resize(rows);
  for (std::uint64_t i = 0; i < rows; ++i) {
    double re = 0, im = 0;
    f.read(reinterpret_cast<char*>(&re), 8);
    f.read(reinterpret_cast<char*>(&im), 8);
    psi.values[i] = Cplx(re, im);
  }
  if (!f) throw Error("truncated ADPT binary file");
  return psi;
}

void write_operator_csv(const std::string& path, const MatrixXcd& M) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path);
  f << "i,j,re,im\n";
  char buf[80];
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%.17g,%.17g\n", static_cast<long long>(i),
                    static_cast<long long>(j), M(i, j).real(), M(i, j).imag());
      f << buf;
    }
}

}  // namespace adpt::qbench
