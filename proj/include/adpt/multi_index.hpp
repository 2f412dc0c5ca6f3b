#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace adpt {

// Enumeration of multi-indices gamma in N^nvars with |gamma| <= kmax,
// ordered by total degree, then lexicographically.  Shared by jets and
// truncated Taylor polynomials so coefficient vectors are position-aligned.
class MultiIndexSet {
public:
  MultiIndexSet(int nvars, int kmax);

  int nvars() const { return nvars_; }
  int kmax() const { return kmax_; }
  int size() const { return static_cast<int>(exps_.size()); }

  // Number of multi-indices with |gamma| <= k.
  int size_up_to(int k) const { return deg_offset_[k + 1]; }

  const std::vector<int>& exponents(int pos) const { return exps_[pos]; }
  int degree(int pos) const { return deg_[pos]; }
  double factorial(int pos) const { return fact_[pos]; }

  // Position of gamma + e_var, or -1 when the bump leaves the table.
  int bump(int pos, int var) const { return up_[pos * nvars_ + var]; }

  // Position of a given exponent vector, or -1.
  int find(const std::vector<int>& gamma) const;

  // Position of gamma1 + gamma2, or -1 when the sum exceeds kmax.
  int sum_pos(int p1, int p2) const;

  struct Split {
    int out, lhs, rhs;
  };
  // All (out, lhs, rhs) with gamma_out = gamma_lhs + gamma_rhs, grouped by
  // ascending out position.  Drives truncated polynomial multiplication.
  const std::vector<Split>& splits() const { return splits_; }

  // Shared table cache keyed by (nvars, kmax).
  static std::shared_ptr<const MultiIndexSet> get(int nvars, int kmax);

private:
  int nvars_;
  int kmax_;
  std::vector<std::vector<int>> exps_;
  std::vector<int> deg_;
  std::vector<double> fact_;
  std::vector<int> deg_offset_;
  std::vector<int> up_;
  std::vector<Split> splits_;
  std::vector<std::pair<std::uint64_t, int>> lookup_;

  std::uint64_t encode(const std::vector<int>& gamma) const;
};

}  // namespace adpt
