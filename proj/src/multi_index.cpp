#include "adpt/multi_index.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace adpt {

namespace {

void enumerate(int nvars, int kmax, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(nvars, 0);
  // all indices of a given total degree, lexicographic
  for (int deg = 0; deg <= kmax; ++deg) {
    std::fill(cur.begin(), cur.end(), 0);
    cur[nvars - 1] = deg;
    // iterate compositions of deg into nvars parts, lex order on the vector
    std::vector<int> c(nvars, 0);
    c[0] = deg;
    while (true) {
      out.push_back(c);
      // next composition in colex-ish order: move one unit right
      int i = nvars - 2;
      while (i >= 0 && c[i] == 0) --i;
      if (i < 0) break;
      --c[i];
      int rest = deg;
      for (int j = 0; j <= i; ++j) rest -= c[j];
      c[i + 1] = rest;
      for (int j = i + 2; j < nvars; ++j) c[j] = 0;
    }
  }
}

}  // namespace

MultiIndexSet::MultiIndexSet(int nvars, int kmax) : nvars_(nvars), kmax_(kmax) {
  if (nvars < 1 || kmax < 0) throw std::invalid_argument("MultiIndexSet: bad dims");
  enumerate(nvars_, kmax_, exps_);

  deg_.resize(exps_.size());
  fact_.resize(exps_.size());
  deg_offset_.assign(kmax_ + 2, 0);
  for (size_t i = 0; i < exps_.size(); ++i) {
    int d = 0;
    double f = 1.0;
    for (int e : exps_[i]) {
      d += e;
      for (int j = 2; j <= e; ++j) f *= j;
    }
    deg_[i] = d;
    fact_[i] = f;
  }
  for (size_t i = 0; i < exps_.size(); ++i) deg_offset_[deg_[i] + 1] = static_cast<int>(i) + 1;
  for (int k = 1; k <= kmax_ + 1; ++k) deg_offset_[k] = std::max(deg_offset_[k], deg_offset_[k - 1]);

  lookup_.reserve(exps_.size());
  for (size_t i = 0; i < exps_.size(); ++i) lookup_.emplace_back(encode(exps_[i]), static_cast<int>(i));
  std::sort(lookup_.begin(), lookup_.end());

  up_.assign(exps_.size() * nvars_, -1);
  std::vector<int> tmp(nvars_);
  for (size_t i = 0; i < exps_.size(); ++i) {
    for (int v = 0; v < nvars_; ++v) {
      tmp = exps_[i];
      ++tmp[v];
      up_[i * nvars_ + v] = find(tmp);
    }
  }

  for (int p1 = 0; p1 < size(); ++p1) {
    for (int p2 = 0; p2 < size(); ++p2) {
      if (deg_[p1] + deg_[p2] > kmax_) continue;
      tmp = exps_[p1];
      for (int v = 0; v < nvars_; ++v) tmp[v] += exps_[p2][v];
      int out = find(tmp);
      if (out >= 0) splits_.push_back({out, p1, p2});
    }
  }
  std::sort(splits_.begin(), splits_.end(),
            [](const Split& a, const Split& b) { return a.out < b.out; });
}

std::uint64_t MultiIndexSet::encode(const std::vector<int>& gamma) const {
  std::uint64_t key = 0;
  for (int e : gamma) key = key * (kmax_ + 2) + static_cast<std::uint64_t>(e + 1);
  return key;
}

int MultiIndexSet::find(const std::vector<int>& gamma) const {
  int deg = 0;
  for (int e : gamma) {
    if (e < 0) return -1;
    deg += e;
  }
  if (deg > kmax_) return -1;
  auto key = encode(gamma);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(key, -1));
  if (it == lookup_.end() || it->first != key) return -1;
  return it->second;
}

int MultiIndexSet::sum_pos(int p1, int p2) const {
  if (deg_[p1] + deg_[p2] > kmax_) return -1;
  std::vector<int> tmp = exps_[p1];
  for (int v = 0; v < nvars_; ++v) tmp[v] += exps_[p2][v];
  return find(tmp);
}

std::shared_ptr<const MultiIndexSet> MultiIndexSet::get(int nvars, int kmax) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MultiIndexSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, kmax);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto mis = std::make_shared<const MultiIndexSet>(nvars, kmax);
  cache[key] = mis;
  return mis;
}

}  // namespace adpt
