#include "adpt/band.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>

namespace adpt {

BandSpec BandSpec::index(int first, int ell, double gap_floor) {
  BandSpec b;
  b.mode = Mode::Index;
  b.first = first;
  b.ell = ell;
  b.gap_floor = gap_floor;
  return b;
}

BandSpec BandSpec::energy(double lo, double hi, int ell, double gap_floor) {
  BandSpec b;
  b.mode = Mode::Energy;
  b.e_lo = lo;
  b.e_hi = hi;
  b.ell = ell;
  b.gap_floor = gap_floor;
  return b;
}

namespace {

struct BandData {
  Eigen::VectorXd evals;
  MatrixXcd evecs;
  int first;          // first selected index
  double energy;      // mean of the selected (degenerate) eigenvalues
  double gap;         // distance to the complement
  double width;       // spread of the selected eigenvalues
};

BandData solve_band(const MatrixXcd& H, const BandSpec& band) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  BandData bd;
  bd.evals = es.eigenvalues();
  bd.evecs = es.eigenvectors();
  const int n = static_cast<int>(bd.evals.size());
  if (band.ell < 1 || band.ell > n) throw BandError("band multiplicity out of range");

  if (band.mode == BandSpec::Mode::Index) {
    if (band.first < 0 || band.first + band.ell > n) throw BandError("band index window out of range");
    bd.first = band.first;
  } else {
    int first = -1, count = 0;
    for (int i = 0; i < n; ++i) {
      if (bd.evals[i] >= band.e_lo && bd.evals[i] <= band.e_hi) {
        if (first < 0) first = i;
        ++count;
      }
    }
    if (count != band.ell)
      throw BandError("energy window selected " + std::to_string(count) + " levels, expected " +
                      std::to_string(band.ell));
    bd.first = first;
  }

  double scale = std::max(1.0, H.norm());
  double lo = bd.evals[bd.first], hi = bd.evals[bd.first + band.ell - 1];
  bd.width = hi - lo;
  if (bd.width > band.degeneracy_rel_tol * scale * 10 && band.ell > 1) {
    // multi-fold bands must be a single degenerate level
    throw BandError("selected band splits beyond degeneracy tolerance (width " +
                    std::to_string(bd.width) + ")");
  }
  bd.energy = 0.0;
  for (int i = 0; i < band.ell; ++i) bd.energy += bd.evals[bd.first + i];
  bd.energy /= band.ell;

  bd.gap = std::numeric_limits<double>::infinity();
  if (bd.first > 0) bd.gap = std::min(bd.gap, lo - bd.evals[bd.first - 1]);
  if (bd.first + band.ell < n) bd.gap = std::min(bd.gap, bd.evals[bd.first + band.ell] - hi);
  return bd;
}

}  // namespace

EigFrame eig_frame(const MatrixSymbol& H0, const PhasePoint& z, const BandSpec& band) {
  MatrixXcd H = H0(z);
  BandData bd = solve_band(H, band);
  if (bd.gap < band.gap_floor)
    throw GapError("spectral gap " + std::to_string(bd.gap) + " below floor", bd.gap);
  EigFrame f;
  f.z = z;
  f.E_r = bd.energy;
  f.basis = bd.evecs.middleCols(bd.first, band.ell);
  f.pi0 = f.basis * f.basis.adjoint();
  f.gap = bd.gap;
  return f;
}

MatrixXcd spectral_projector(const MatrixSymbol& H0, const PhasePoint& z, const BandSpec& band) {
  return eig_frame(H0, z, band).pi0;
}

double band_energy(const MatrixSymbol& H0, const PhasePoint& z, const BandSpec& band) {
  return eig_frame(H0, z, band).E_r;
}

MatrixXcd reduced_resolvent(const MatrixSymbol& H0, const PhasePoint& z, const BandSpec& band) {
  MatrixXcd H = H0(z);
  BandData bd = solve_band(H, band);
  if (bd.gap < band.gap_floor)
    throw GapError("spectral gap " + std::to_string(bd.gap) + " below floor", bd.gap);
  const int n = static_cast<int>(H.rows());
  MatrixXcd R = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (i >= bd.first && i < bd.first + band.ell) continue;
    R += bd.evecs.col(i) * bd.evecs.col(i).adjoint() / (bd.evals[i] - bd.energy);
  }
  return R;
}

GapReport gap_check(const MatrixSymbol& H0, const BandSpec& band,
                    const std::vector<PhasePoint>& samples) {
  GapReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& z : samples) {
    BandData bd = solve_band(H0(z), band);
    if (bd.gap < rep.min_gap) {
      rep.min_gap = bd.gap;
      rep.argmin = z;
    }
    rep.band_width_sup = std::max(rep.band_width_sup, bd.width);
    if (bd.gap < band.gap_floor) rep.violations.push_back(z);
  }
  return rep;
}

MatrixXcd nagy_transport(const MatrixXcd& pi_a, const MatrixXcd& pi_b) {
  const int n = static_cast<int>(pi_a.rows());
  MatrixXcd delta = pi_a - pi_b;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(delta);
  double dn = es.eigenvalues().cwiseAbs().maxCoeff();
  if (dn >= 1.0)
    throw TransportDomainError("||pi_a - pi_b|| = " + std::to_string(dn) + " >= 1");
  MatrixXcd one = MatrixXcd::Identity(n, n);
  // [1 - (pi_a - pi_b)^2]^{-1/2} via the eigensolver of delta
  Eigen::VectorXd w = (1.0 - es.eigenvalues().array().square()).rsqrt();
  MatrixXcd root = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  MatrixXcd x = pi_a * pi_b + (one - pi_a) * (one - pi_b);
  return root * x;
}

MatJet smooth_frame(const MatrixSymbol& H0, const BandSpec& band, const PhasePoint& z, int K,
                    double fd_h0, double fd_c) {
  EigFrame center = eig_frame(H0, z, band);
  const int n = H0.n(), d = H0.d();
  auto frame_at = [&](const PhasePoint& zz) -> MatrixXcd {
    MatrixXcd pi = spectral_projector(H0, zz, band);
    return nagy_transport(pi, center.pi0) * center.basis;
  };
  auto mis = MultiIndexSet::get(2 * d, K);
  MatJet out(mis, K, n, band.ell);
  std::map<std::vector<int>, MatrixXcd> cache;
  const int nv = 2 * d;
  struct St { std::vector<int> off; std::vector<double> w; };
  static const std::vector<St> stencils = {
      {{0}, {1.0}},
      {{-1, 1}, {-0.5, 0.5}},
      {{-1, 0, 1}, {1.0, -2.0, 1.0}},
      {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
      {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}},
  };
  for (int pos = 0; pos < out.ncoeff(); ++pos) {
    const auto& gamma = mis->exponents(pos);
    int deg = mis->degree(pos);
    double h = fd_h0 * std::pow(fd_c, deg);
    std::vector<std::pair<std::vector<int>, double>> pts = {{std::vector<int>(nv, 0), 1.0}};
    for (int v = 0; v < nv; ++v) {
      int g = gamma[v];
      if (g == 0) continue;
      if (g >= static_cast<int>(stencils.size()))
        throw CapabilityError("smooth_frame: stencil depth exceeded");
      const St& st = stencils[g];
      std::vector<std::pair<std::vector<int>, double>> next;
      for (const auto& [offs, wgt] : pts)
        for (size_t s = 0; s < st.off.size(); ++s) {
          auto o2 = offs;
          o2[v] = st.off[s];
          next.emplace_back(std::move(o2), wgt * st.w[s]);
        }
      pts.swap(next);
    }
    MatrixXcd acc = MatrixXcd::Zero(n, band.ell);
    for (const auto& [offs, wgt] : pts) {
      auto it = cache.find(offs);
      if (it == cache.end()) {
        PhasePoint zz = z;
        for (int v = 0; v < nv; ++v)
          if (offs[v] != 0) zz = zz.shifted(v, offs[v] * h);
        it = cache.emplace(offs, frame_at(zz)).first;
      }
      acc += wgt * it->second;
    }
    out.coeff(pos) = acc / (std::pow(h, deg) * mis->factorial(pos));
  }
  return out;
}

MatrixSymbol spectral_projector_symbol(const MatrixSymbol& H0, const BandSpec& band) {
  MatrixSymbol s(H0.d(), H0.n(), true,
                 [H0, band](const PhasePoint& z) { return spectral_projector(H0, z, band); });
  return s;
}

MatrixSymbol band_energy_symbol(const MatrixSymbol& H0, const BandSpec& band) {
  MatrixSymbol s(H0.d(), 1, true, [H0, band](const PhasePoint& z) {
    MatrixXcd m(1, 1);
    m(0, 0) = band_energy(H0, z, band);
    return m;
  });
  return s;
}

MatrixSymbol anchored_frame_unitary(const MatrixSymbol& H0, const BandSpec& band,
                                    const PhasePoint& anchor) {
  MatrixXcd Ha = H0(anchor);
  BandData bd = solve_band(Ha, band);
  // columns reordered so the band block comes first
  const int n = static_cast<int>(Ha.rows());
  MatrixXcd W(n, n);
  W.leftCols(band.ell) = bd.evecs.middleCols(bd.first, band.ell);
  int col = band.ell;
  for (int i = 0; i < n; ++i) {
    if (i >= bd.first && i < bd.first + band.ell) continue;
    W.col(col++) = bd.evecs.col(i);
  }
  MatrixXcd pia = W.leftCols(band.ell) * W.leftCols(band.ell).adjoint();
  auto eval = [H0, band, W, pia](const PhasePoint& z) -> MatrixXcd {
    MatrixXcd pi = spectral_projector(H0, z, band);
    return W.adjoint() * nagy_transport(pia, pi);
  };
  return MatrixSymbol(H0.d(), n, false, eval);
}

}  // namespace adpt
