#pragma once

// Shared fixtures: seeded random operators and independent oracles that do
// not reuse the library code paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qslkit/operator_algebra.hpp"

namespace qslkit::testing {

inline std::mt19937_64 make_rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline CMatrix gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const auto N = static_cast<Eigen::Index>(n);
  CMatrix m(N, N);
  for (Eigen::Index r = 0; r < N; ++r) {
    for (Eigen::Index c = 0; c < N; ++c) m(r, c) = Complex(nd(rng), nd(rng));
  }
  return m;
}

inline HermitianOperator random_hermitian(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  const CMatrix g = gaussian_matrix(n, rng);
  return HermitianOperator(CMatrix(0.5 * scale * (g + g.adjoint())));
}

/// Traceless, unit normalized-HS norm.
inline HermitianOperator random_observable(std::size_t n, std::mt19937_64& rng) {
  const HermitianOperator h = random_hermitian(n, rng);
  const CMatrix m = h.matrix() - (h.trace() / static_cast<double>(n)) * CMatrix::Identity(h.matrix().rows(), h.matrix().rows());
  const double norm = std::sqrt((m.adjoint() * m).trace().real() / static_cast<double>(n));
  return HermitianOperator(CMatrix(m / norm));
}

/// Haar-ish unitary from the QR of a complex Gaussian matrix.
inline UnitaryOperator random_unitary(std::size_t n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(n, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return UnitaryOperator(std::move(q));
}

inline HermitianOperator random_diagonal(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  RVector d(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < d.size(); ++k) d(k) = ud(rng);
  return HermitianOperator::diagonal(d);
}

/// Closure oracle from the spectral picture: in the eigenbasis of H the
/// adjoint action is diagonal with frequencies E_a - E_b, so the Krylov span
/// of O has one dimension per distinct frequency that O actually populates.
inline std::size_t krylov_rank(const CMatrix& h, const CMatrix& o, double group_tol = 1e-7,
                               double weight_tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector e = es.eigenvalues();
  const CMatrix ot = es.eigenvectors().adjoint() * o * es.eigenvectors();
  const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
  std::vector<std::pair<double, double>> freq;  // (frequency, weight)
  for (Eigen::Index a = 0; a < e.size(); ++a) {
    for (Eigen::Index b = 0; b < e.size(); ++b) freq.emplace_back(e(a) - e(b), std::norm(ot(a, b)));
  }
  std::sort(freq.begin(), freq.end());
  std::size_t rank = 0;
  std::size_t i = 0;
  while (i < freq.size()) {
    double w = 0.0;
    std::size_t j = i;
    while (j < freq.size() && freq[j].first - freq[i].first <= group_tol * scale) w += freq[j++].second;
    if (w > weight_tol) ++rank;
    i = j;
  }
  return rank;
}

/// Minimal circular spread by enumerating every shift in {-1, 0, 1}^n.
inline double brute_force_spread(const std::vector<double>& phases) {
  const std::size_t n = phases.size();
  std::size_t combos = 1;
  for (std::size_t k = 0; k < n; ++k) combos *= 3;
  double best = 1e300;
  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t c = code;
    double lo = 1e300, hi = -1e300;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = phases[k] + 2.0 * M_PI * (static_cast<double>(c % 3) - 1.0);
      c /= 3;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    best = std::min(best, hi - lo);
  }
  return best;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline std::size_t numeric_rank(const RMatrix& m, double rel_tol) {
  const RVector sv = Eigen::JacobiSVD<RMatrix>(m).singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace qslkit::testing
