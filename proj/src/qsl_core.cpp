#include "qslkit/qsl_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qslkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double x) {
  // into (-pi, pi]
  double y = std::remainder(x, kTwoPi);
  if (y <= -kPi) y += kTwoPi;
  return y;
}

struct Grouping {
  std::vector<std::vector<std::size_t>> groups;  // indices into the input
  std::vector<double> reps;                      // ascending
};

// Groups circularly-close phases. Input need not be sorted.
Grouping group_phases(const std::vector<double>& phases, double tol) {
  std::vector<std::size_t> order(phases.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return phases[a] < phases[b]; });

  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t idx : order) {
    if (!groups.empty() && phases[idx] - phases[groups.back().back()] <= tol) {
      groups.back().push_back(idx);
    } else {
      groups.push_back({idx});
    }
  }
  if (groups.size() > 1) {
    const double wrap_gap = phases[groups.front().front()] + kTwoPi - phases[groups.back().back()];
    if (wrap_gap <= tol) {
      groups.back().insert(groups.back().end(), groups.front().begin(), groups.front().end());
      groups.erase(groups.begin());
    }
  }

  Grouping out;
  std::vector<std::pair<double, std::size_t>> keyed;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double ref = phases[groups[g].front()];
    double acc = 0.0;
    for (std::size_t idx : groups[g]) acc += ref + wrap_phase(phases[idx] - ref);
    keyed.emplace_back(wrap_phase(acc / static_cast<double>(groups[g].size())), g);
  }
  std::stable_sort(keyed.begin(), keyed.end());
  for (const auto& [rep, g] : keyed) {
    out.reps.push_back(rep);
    out.groups.push_back(groups[g]);
  }
  return out;
}

// Index of the cluster at which the minimal arc starts: the counter-clockwise
// endpoint of the largest circular gap, ties resolved toward the smallest
// endpoint representative.
std::size_t arc_start(const std::vector<double>& reps) {
  const std::size_t k = reps.size();
  if (k <= 1) return 0;
  std::size_t best_end = 0;
  double best_gap = -1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t end = (i + 1) % k;
    const double gap = i + 1 < k ? reps[i + 1] - reps[i] : reps[0] + kTwoPi - reps[k - 1];
    if (gap > best_gap + kGapTieTol) {
      best_gap = gap;
      best_end = end;
    } else if (std::abs(gap - best_gap) <= kGapTieTol && reps[end] < reps[best_end]) {
      best_end = end;
      best_gap = std::max(best_gap, gap);
    }
  }
  return best_end;
}

// Per-member shift: the cluster shift, plus one when the member itself sits
// across the -pi/pi seam from its cluster representative.
int member_shift(double phase, double rep, int cluster_shift) {
  return cluster_shift + (phase - rep < -kPi ? 1 : 0);
}

}  // namespace

RVector SpeedLimitResult::shifted_phases() const {
  RVector out = phases;
  for (Eigen::Index k = 0; k < out.size(); ++k) out(k) += kTwoPi * shifts[static_cast<std::size_t>(k)];
  return out;
}

EigenphaseSet eigenphases(const UnitaryOperator& g) {
  Eigen::ComplexSchur<CMatrix> schur(g.matrix());
  if (schur.info() != Eigen::Success) throw NumericalError("complex Schur decomposition failed");
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();
  const auto n = t.rows();

  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    double phi = std::arg(t(k, k));
    if (phi <= -kPi) phi += kTwoPi;
    raw[static_cast<std::size_t>(k)] = phi;
  }
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

  EigenphaseSet e;
  e.phases.resize(n);
  e.eigenvectors.resize(n, n);
  std::vector<double> sorted(raw.size());
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::size_t src = order[static_cast<std::size_t>(k)];
    e.phases(k) = raw[src];
    sorted[static_cast<std::size_t>(k)] = raw[src];
    e.eigenvectors.col(k) = q.col(static_cast<Eigen::Index>(src));
  }
  e.shifts.assign(static_cast<std::size_t>(n), 0);
  e.cluster_of.assign(static_cast<std::size_t>(n), 0);

  const Grouping grouping = group_phases(sorted, kPhaseClusterTol);
  for (std::size_t c = 0; c < grouping.groups.size(); ++c) {
    const auto& members = grouping.groups[c];
    CMatrix vecs(n, static_cast<Eigen::Index>(members.size()));
    for (std::size_t m = 0; m < members.size(); ++m) {
      vecs.col(static_cast<Eigen::Index>(m)) = e.eigenvectors.col(static_cast<Eigen::Index>(members[m]));
      e.cluster_of[members[m]] = c;
    }
    std::vector<std::size_t> sorted_members = members;
    std::sort(sorted_members.begin(), sorted_members.end());
    e.clusters.push_back(PhaseCluster{grouping.reps[c], members.size(), std::move(sorted_members),
                                      HermitianOperator(CMatrix(vecs * vecs.adjoint()))});
  }
  return e;
}

std::vector<int> minimal_spread_shifts(const std::vector<double>& phases, double cluster_tol) {
  std::vector<int> shifts(phases.size(), 0);
  if (phases.empty()) return shifts;
  const Grouping grouping = group_phases(phases, cluster_tol);
  const std::size_t start = arc_start(grouping.reps);
  for (std::size_t c = 0; c < grouping.groups.size(); ++c) {
    const int cs = c < start ? 1 : 0;
    for (std::size_t idx : grouping.groups[c]) shifts[idx] = member_shift(phases[idx], grouping.reps[c], cs);
  }
  return shifts;
}

SpeedLimitResult minimal_spread(const EigenphaseSet& e, double omega_max) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw RangeError("omega_max must be positive and finite");
  SpeedLimitResult r;
  r.omega_max = omega_max;
  r.phases = e.phases;
  r.shifts.assign(e.dim(), 0);

  std::vector<double> reps;
  for (const auto& c : e.clusters) reps.push_back(c.phase);
  const std::size_t start = arc_start(reps);
  r.cluster_shifts.assign(reps.size(), 0);
  for (std::size_t c = 0; c < reps.size(); ++c) {
    r.cluster_shifts[c] = c < start ? 1 : 0;
    for (std::size_t idx : e.clusters[c].members) {
      r.shifts[idx] = member_shift(e.phases(static_cast<Eigen::Index>(idx)), reps[c], r.cluster_shifts[c]);
    }
  }

  if (reps.size() <= 1) {
    r.delta_phi_star = 0.0;
    r.t_star = 0.0;
    r.bottleneck_pair = {0, 0};
    return r;
  }
  // spread measured on cluster representatives so that jitter inside a
  // degenerate cluster does not leak into dphi*
  double lo = 0.0, hi = 0.0;
  std::size_t lo_c = 0, hi_c = 0;
  for (std::size_t c = 0; c < reps.size(); ++c) {
    const double v = reps[c] + kTwoPi * r.cluster_shifts[c];
    if (c == 0 || v < lo) { lo = v; lo_c = c; }
    if (c == 0 || v > hi) { hi = v; hi_c = c; }
  }
  r.delta_phi_star = hi - lo;
  r.t_star = r.delta_phi_star / omega_max;
  r.bottleneck_pair = {e.clusters[lo_c].members.front(), e.clusters[hi_c].members.front()};
  return r;
}

SpeedLimitResult speed_limit(const UnitaryOperator& g, double omega_max) {
  return minimal_spread(eigenphases(g), omega_max);
}

OptimalGenerator optimal_generator(const UnitaryOperator& g, double omega_max) {
  const EigenphaseSet e = eigenphases(g);
  SpeedLimitResult sl = minimal_spread(e, omega_max);
  if (sl.is_identity()) throw DegenerateGateError("gate is the identity up to a global phase; T* = 0");
  const auto n = static_cast<Eigen::Index>(g.dim());
  CMatrix h = CMatrix::Zero(n, n);
  for (std::size_t c = 0; c < e.clusters.size(); ++c) {
    const double phi = e.clusters[c].phase + kTwoPi * sl.cluster_shifts[c];
    h -= (phi / sl.t_star) * e.clusters[c].projector.matrix();
  }
  HermitianOperator h_star(std::move(h));
  HermitianOperator centered = center_hamiltonian(h_star);
  const double t = sl.t_star;
  return OptimalGenerator{std::move(h_star), t, std::move(centered), std::move(sl)};
}

UnitaryOperator evolve_constant(const HermitianOperator& h, double t) {
  const HermitianEigen eig = hermitian_eigen(h);
  CVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -t * eig.values(k));
  return UnitaryOperator(CMatrix(eig.vectors * phases.asDiagonal() * eig.vectors.adjoint()));
}

RateReport matrix_element_rate_check(const HermitianOperator& h, std::size_t samples) {
  RateReport report;
  const HermitianOperator centered = center_hamiltonian(h);
  const double w = spectral_width(h);
  report.bound = 0.5 * w;
  if (samples == 0) return report;
  const double span = w > 0.0 ? kTwoPi / w : 1.0;
  const double step = 1e-5;
  const HermitianEigen eig = hermitian_eigen(centered);
  auto evolve = [&](double t) {
    CVector ph(eig.values.size());
    for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::polar(1.0, -t * eig.values(k));
    return CMatrix(eig.vectors * ph.asDiagonal() * eig.vectors.adjoint());
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = span * static_cast<double>(s) / static_cast<double>(samples);
    const CMatrix d = (evolve(t + step) - evolve(t - step)) / (2.0 * step);
    report.max_rate = std::max(report.max_rate, d.cwiseAbs().maxCoeff());
  }
  report.pass = report.max_rate <= report.bound + 1e-6;
  return report;
}

}  // namespace qslkit
