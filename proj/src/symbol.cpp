#include "adpt/symbol.hpp"

#include <cmath>
#include <map>

namespace adpt {

PhasePoint PhasePoint::of(std::initializer_list<double> qs, std::initializer_list<double> ps) {
  PhasePoint z;
  z.q.resize(qs.size());
  z.p.resize(ps.size());
  int i = 0;
  for (double v : qs) z.q[i++] = v;
  i = 0;
  for (double v : ps) z.p[i++] = v;
  return z;
}

PhasePoint PhasePoint::shifted(int var, double h) const {
  PhasePoint w = *this;
  if (var < q.size()) w.q[var] += h; else w.p[var - q.size()] += h;
  return w;
}

bool PhasePoint::finite() const { return q.allFinite() && p.allFinite(); }

MatrixSymbol::MatrixSymbol(int d, int n, bool hermitian, Eval eval, JetEval jet, int max_jet_order)
    : d_(d), n_(n), herm_(hermitian), max_jet_(max_jet_order), eval_(std::move(eval)),
      jet_(std::move(jet)) {}

MatrixSymbol MatrixSymbol::constant(int d, const MatrixXcd& value) {
  bool herm = (value - value.adjoint()).cwiseAbs().maxCoeff() < 1e-14;
  MatrixXcd v = value;
  auto eval = [v](const PhasePoint&) { return v; };
  auto jet = [v, d](const PhasePoint&, int K) {
    return MatJet::constant(MultiIndexSet::get(2 * d, K), K, v);
  };
  return MatrixSymbol(d, static_cast<int>(value.rows()), herm, eval, jet, 64);
}

MatrixXcd MatrixSymbol::operator()(const PhasePoint& z) const {
  MatrixXcd v = eval_ ? eval_(z) : jet_(z, 0).value();
  if (!v.allFinite()) throw NumericError("symbol evaluation is not finite");
  return v;
}

MatJet MatrixSymbol::jet(const PhasePoint& z, int K) const {
  if (K > max_jet_) throw CapabilityError("jet order " + std::to_string(K) + " beyond symbol capability");
  if (jet_) return jet_(z, K);
  return fd_jet(z, K);
}

namespace {

// central difference stencils, offsets in units of h, per derivative order
struct Stencil {
  std::vector<int> off;
  std::vector<double> w;  // weights, to be divided by h^g
};

const Stencil& stencil(int g) {
  static const std::vector<Stencil> table = {
      {{0}, {1.0}},
      {{-1, 1}, {-0.5, 0.5}},
      {{-1, 0, 1}, {1.0, -2.0, 1.0}},
      {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
      {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}},
  };
  if (g >= static_cast<int>(table.size()))
    throw CapabilityError("finite-difference stencil depth exceeded (order " + std::to_string(g) + ")");
  return table[g];
}

}  // namespace

MatJet MatrixSymbol::fd_jet(const PhasePoint& z, int K) const {
  auto mis = MultiIndexSet::get(2 * d_, K);
  MatJet out(mis, K, n_, n_);
  const int nv = 2 * d_;
  // memoize evaluations on the local offset lattice
  std::map<std::vector<int>, MatrixXcd> cache;
  std::vector<double> hs(K + 1);
  for (int m = 0; m <= K; ++m) hs[m] = fd_h0 * std::pow(fd_c, m);

  for (int pos = 0; pos < out.ncoeff(); ++pos) {
    const auto& gamma = mis->exponents(pos);
    int deg = mis->degree(pos);
    double h = hs[deg];
    // tensor-product stencil over the active variables
    std::vector<std::pair<std::vector<int>, double>> pts = {{std::vector<int>(nv, 0), 1.0}};
    for (int v = 0; v < nv; ++v) {
      int g = gamma[v];
      if (g == 0) continue;
      const Stencil& st = stencil(g);
      std::vector<std::pair<std::vector<int>, double>> next;
      next.reserve(pts.size() * st.off.size());
      for (const auto& [offs, w] : pts) {
        for (size_t s = 0; s < st.off.size(); ++s) {
          auto o2 = offs;
          o2[v] = st.off[s];
          next.emplace_back(std::move(o2), w * st.w[s]);
        }
      }
      pts.swap(next);
    }
    MatrixXcd acc = MatrixXcd::Zero(n_, n_);
    for (const auto& [offs, w] : pts) {
      auto it = cache.find(offs);
      if (it == cache.end()) {
        PhasePoint zz = z;
        for (int v = 0; v < nv; ++v)
          if (offs[v] != 0) zz = zz.shifted(v, offs[v] * h);
        it = cache.emplace(offs, (*this)(zz)).first;
      }
      acc += w * it->second;
    }
    out.coeff(pos) = acc / (std::pow(h, deg) * mis->factorial(pos));
  }
  return out;
}

MatrixSymbol MatrixSymbol::adjointed() const {
  MatrixSymbol s = *this;
  auto base_eval = eval_;
  auto base_jet = jet_;
  s.eval_ = base_eval ? Eval([base_eval](const PhasePoint& z) { return MatrixXcd(base_eval(z).adjoint()); })
                      : Eval();
  s.jet_ = base_jet ? JetEval([base_jet](const PhasePoint& z, int K) { return base_jet(z, K).adjoint(); })
                    : JetEval();
  if (!s.eval_ && !s.jet_) throw Error("adjointed: empty symbol");
  return s;
}

MatrixSymbol MatrixSymbol::scaled(Cplx f) const {
  MatrixSymbol s = *this;
  auto base_eval = eval_;
  auto base_jet = jet_;
  bool herm = herm_ && std::abs(f.imag()) == 0.0;
  s.herm_ = herm;
  s.eval_ = base_eval ? Eval([base_eval, f](const PhasePoint& z) { return MatrixXcd(f * base_eval(z)); })
                      : Eval();
  s.jet_ = base_jet ? JetEval([base_jet, f](const PhasePoint& z, int K) {
    MatJet j = base_jet(z, K);
    j *= f;
    return j;
  })
                    : JetEval();
  return s;
}

FormalSymbol::FormalSymbol(std::vector<MatrixSymbol> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.d() != terms_[0].d() || t.n() != terms_[0].n())
      throw Error("FormalSymbol: inconsistent term dimensions");
  }
}

std::vector<MatJet> FormalSymbol::jets(const PhasePoint& z, int K, int jmax) const {
  if (jmax < 0) jmax = order();
  jmax = std::min(jmax, order());
  std::vector<MatJet> out;
  out.reserve(jmax + 1);
  for (int j = 0; j <= jmax; ++j) out.push_back(terms_[j].jet(z, std::max(0, K - j)));
  return out;
}

MatrixXcd poisson_bracket(const MatrixSymbol& A, const MatrixSymbol& B, const PhasePoint& z) {
  if (A.d() != B.d() || A.n() != B.n()) throw Error("poisson_bracket: dimension mismatch");
  MatJet ja = A.jet(z, 1), jb = B.jet(z, 1);
  return poisson(ja, jb, A.d()).value();
}

MatrixXcd moyal_term(const FormalSymbol& A, const FormalSymbol& B, int k, const PhasePoint& z,
                     double kappa) {
  auto ja = A.jets(z, k, k);
  auto jb = B.jets(z, k, k);
  return moyal_term_jets(ja, jb, k, A.d(), kappa).value();
}

FormalSymbol moyal_mul(const FormalSymbol& A, const FormalSymbol& B, int N, double kappa) {
  std::vector<MatrixSymbol> terms;
  int d = A.d(), n = A.n();
  for (int k = 0; k <= N; ++k) {
    auto jet_fn = [A, B, k, d, kappa](const PhasePoint& z, int K) -> MatJet {
      auto ja = A.jets(z, K + k, k);
      auto jb = B.jets(z, K + k, k);
      return moyal_term_jets(ja, jb, k, d, kappa).truncated(K);
    };
    int depth = 16;
    for (int j = 0; j <= std::min(k, A.order()); ++j)
      depth = std::min(depth, A.term(j).max_jet_order() - k);
    for (int j = 0; j <= std::min(k, B.order()); ++j)
      depth = std::min(depth, B.term(j).max_jet_order() - k);
    terms.push_back(symbol_from_jet_fn(d, n, false, jet_fn, std::max(0, depth)));
  }
  return FormalSymbol(std::move(terms));
}

FormalSymbol moyal_commutator(const FormalSymbol& A, const FormalSymbol& B, int N, double kappa) {
  FormalSymbol AB = moyal_mul(A, B, N, kappa);
  FormalSymbol BA = moyal_mul(B, A, N, kappa);
  std::vector<MatrixSymbol> terms;
  int d = A.d(), n = A.n();
  for (int k = 0; k <= N; ++k) {
    MatrixSymbol tab = AB.term(k), tba = BA.term(k);
    auto jet_fn = [tab, tba](const PhasePoint& z, int K) -> MatJet {
      return tab.jet(z, K) - tba.jet(z, K);
    };
    terms.push_back(symbol_from_jet_fn(d, n, false, jet_fn,
                                       std::min(tab.max_jet_order(), tba.max_jet_order())));
  }
  return FormalSymbol(std::move(terms));
}

MatrixSymbol symbol_from_jet_fn(int d, int n, bool hermitian, MatrixSymbol::JetEval jets,
                                int max_jet) {
  auto jf = jets;
  auto eval = [jf](const PhasePoint& z) { return jf(z, 0).value(); };
  return MatrixSymbol(d, n, hermitian, eval, jets, max_jet);
}

}  // namespace adpt
