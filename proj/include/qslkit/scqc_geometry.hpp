#pragma once

// Space curves in operator space. For a unit-norm observable O the tangent is
// the Heisenberg-picture operator U^dagger(t) O U(t) in basis coordinates and
// the base curve is its time integral, so arc length equals elapsed time and
// curvature equals ||i[H(t), O]||.

#include <cstddef>
#include <string>
#include <vector>

#include "qslkit/operator_algebra.hpp"

namespace qslkit {

inline constexpr double kRankTol = 1e-9;

struct ScheduleSegment {
  HermitianOperator h;
  double duration;
};

/// Piecewise-constant Hamiltonian; smooth controls must be discretized first.
struct HamiltonianSchedule {
  std::vector<ScheduleSegment> segments;

  static HamiltonianSchedule constant(const HermitianOperator& h, double duration);
  double total_duration() const;
  std::size_t dim() const;
  double max_width() const;
};

struct SpaceCurve {
  std::vector<double> times;
  RMatrix tangent;  // one row per sample
  RMatrix base;     // one row per sample, base.row(0) == 0
  HermitianOperator observable;
  std::string basis_label;
  std::vector<std::string> element_labels;

  std::size_t samples() const { return times.size(); }
  /// Sum of chord lengths of the sampled base curve.
  double arc_length() const;
  /// max_i | ||tangent_i|| - 1 |.
  double max_speed_error() const;
};

struct FrenetData {
  std::vector<HermitianOperator> frame;
  std::vector<double> curvatures;  // kappa_1 .. kappa_{l-1}
  std::size_t closure_dim = 0;
  double termination_residual = 0.0;
  /// Some accepted curvature or the terminating residual lies within a
  /// factor 10 of the rank tolerance.
  bool near_threshold = false;
};

/// Real antisymmetric matrix of i*ad_H in an orthonormal basis, oriented so
/// that the sampled tangent obeys d(rdot)/dt = matrix * rdot:
/// matrix(l, j) = <O_l, i[H, O_j]>.
struct AdjointGenerator {
  RMatrix matrix;
  std::string basis_label;
};

struct RotationPlane {
  double curvature;  // > 0
  RVector a;         // matrix * a == curvature * b
  RVector b;         // matrix * b == -curvature * a
};

struct PlaneDecomposition {
  std::vector<RotationPlane> planes;  // descending curvature
  std::size_t kernel_dim = 0;
  std::size_t dim = 0;

  std::vector<double> curvatures() const;
  /// sum_p kappa_p (b a^T - a b^T).
  RMatrix reconstruct() const;
};

/// A rotating component of a helix: cos(k t) A + sin(k t) B.
struct HelixComponent {
  double curvature;
  RVector a;
  RVector b;
};

/// Tangent = parallel + sum_k [cos(k t) A_k + sin(k t) B_k].
struct HelixDecomposition {
  RVector parallel;
  std::vector<HelixComponent> components;  // descending curvature, distinct
};

struct EigenframePair {
  std::size_t a;
  std::size_t b;
  HermitianOperator x;  // sqrt(n/2) (|a><b| + |b><a|)
  HermitianOperator y;  // -i sqrt(n/2) (|a><b| - |b><a|)
  double gap;           // |E_a - E_b|
};

SpaceCurve tangent_curve(const HamiltonianSchedule& schedule, const HermitianOperator& o, const OperatorBasis& basis,
                         std::size_t steps);

/// ||i[H(t_i), O]|| on the same uniform grid tangent_curve uses.
std::vector<double> curvature_profile(const HamiltonianSchedule& schedule, const HermitianOperator& o,
                                      std::size_t steps);

FrenetData frenet_frame(const HermitianOperator& h, const HermitianOperator& o, double tol = kRankTol);

AdjointGenerator adjoint_generator(const HermitianOperator& h, const OperatorBasis& basis);

PlaneDecomposition plane_decomposition(const AdjointGenerator& a, double tol = kRankTol);

std::vector<EigenframePair> eigenframe_certifiers(const HermitianOperator& h);

HelixDecomposition helix_decomposition(const HermitianOperator& h, const HermitianOperator& o,
                                       const OperatorBasis& basis, double tol = kRankTol);

SpaceCurve closed_form_curve(const HermitianOperator& h, const HermitianOperator& o, const std::vector<double>& times,
                             const OperatorBasis& basis, double tol = kRankTol);

/// Uniform grid t_i = i * T / steps, i = 0..steps.
std::vector<double> uniform_grid(double total, std::size_t steps);

}  // namespace qslkit
