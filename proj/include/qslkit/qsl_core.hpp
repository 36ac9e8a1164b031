#pragma once

// Exact speed limit under a spectral-width bound w(H) <= omega_max:
// T* = dphi* / omega_max, where dphi* is the smallest spread of the target's
// eigenphases over all 2*pi shifts, and the width-saturating constant
// generator H* = -sum_c (phi_c / T*) P_c built from spectral projectors.

#include <cstddef>
#include <utility>
#include <vector>

#include "qslkit/operator_algebra.hpp"

namespace qslkit {

inline constexpr double kPhaseClusterTol = 1e-8;
inline constexpr double kGapTieTol = 1e-9;

struct PhaseCluster {
  double phase = 0.0;             // representative in (-pi, pi]
  std::size_t rank = 0;
  std::vector<std::size_t> members;  // indices into EigenphaseSet::phases
  HermitianOperator projector;
};

struct EigenphaseSet {
  RVector phases;                    // per eigenvalue, ascending, in (-pi, pi]
  std::vector<int> shifts;           // multiples of 2*pi; zero straight out of eigenphases()
  CMatrix eigenvectors;              // columns matched to phases
  std::vector<std::size_t> cluster_of;
  std::vector<PhaseCluster> clusters;  // ascending representative phase

  std::size_t dim() const { return static_cast<std::size_t>(phases.size()); }
};

struct SpeedLimitResult {
  double delta_phi_star = 0.0;
  double t_star = 0.0;
  double omega_max = 1.0;
  std::pair<std::size_t, std::size_t> bottleneck_pair{0, 0};  // (argmin, argmax) after shifting
  RVector phases;                      // unshifted, per eigenvalue
  std::vector<int> shifts;             // per eigenvalue
  std::vector<int> cluster_shifts;     // per cluster

  RVector shifted_phases() const;
  bool is_identity() const { return cluster_shifts.size() <= 1; }
};

struct OptimalGenerator {
  HermitianOperator h_star;
  double t_star;
  HermitianOperator centered;
  SpeedLimitResult speed_limit;
};

struct RateReport {
  double max_rate = 0.0;
  double bound = 0.0;  // w(h) / 2
  bool pass = true;
};

/// Eigenphases of g via a complex Schur form, clustered within 1e-8 of
/// circular distance.
EigenphaseSet eigenphases(const UnitaryOperator& g);

/// Shift vector (per phase, in units of 2*pi) realizing the minimal circular
/// spread of arbitrary phases. Phases must lie in (-pi, pi]; values closer
/// than `cluster_tol` (circularly) are treated as one.
std::vector<int> minimal_spread_shifts(const std::vector<double>& phases, double cluster_tol = kPhaseClusterTol);

SpeedLimitResult minimal_spread(const EigenphaseSet& e, double omega_max);

/// Convenience: eigenphases + minimal_spread.
SpeedLimitResult speed_limit(const UnitaryOperator& g, double omega_max);

OptimalGenerator optimal_generator(const UnitaryOperator& g, double omega_max);

/// exp(-i t h) through the spectral decomposition of h.
UnitaryOperator evolve_constant(const HermitianOperator& h, double t);

/// Central-difference rates of every matrix element of exp(-i t h~), with
/// h~ the centered generator, sampled over one period 2*pi/w.
RateReport matrix_element_rate_check(const HermitianOperator& h, std::size_t samples);

}  // namespace qslkit
