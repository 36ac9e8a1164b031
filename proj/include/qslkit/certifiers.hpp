#pragma once

// Certifying sets: observables whose Heisenberg images fix a unitary up to a
// global phase. A set certifies iff its common commutant is the scalars. The
// bottleneck bound takes the slowest certifier's minimal rotation time.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qslkit/operator_algebra.hpp"
#include "qslkit/scqc_geometry.hpp"

namespace qslkit {

/// Marks a P_jk / Q_jk operator built in the eigenbasis of a gate. `rotation`
/// is phi_j - phi_k using minimal-spread shifted phases of that gate.
struct EigenCertifierTag {
  std::size_t j;
  std::size_t k;
  char kind;  // 'P' or 'Q'
  double rotation;
};

struct Certifier {
  std::string label;
  HermitianOperator op;
  std::optional<EigenCertifierTag> eigen;
};

struct CertifyingSet {
  std::vector<Certifier> members;
  std::string label;

  std::size_t size() const { return members.size(); }
  std::size_t dim() const { return members.empty() ? 0 : members.front().op.dim(); }
  void validate() const;
};

struct CommutantReport {
  std::size_t dimension = 0;
  bool certifies = false;
};

struct BottleneckEntry {
  std::string observable;
  double theta;  // rotation angle: arccos overlap, or |phi_j - phi_k| when exact
  double t2d;
  std::size_t closure_dim;
  bool exact;
};

struct BottleneckReport {
  std::string gate;
  std::string certifier_set;
  std::vector<BottleneckEntry> entries;
  double t_lower = 0.0;
  double t_star = 0.0;
  double omega_max = 1.0;
  double eta_lower = 1.0;
  std::string bottleneck_label;
  std::vector<std::string> bottlenecks;  // every entry tied at t_lower
  bool set_certifies = true;
};

struct PlanarityReport {
  std::string bottleneck_label;
  std::size_t closure_dim = 1;
  std::vector<std::pair<std::string, std::size_t>> bottlenecks;
  double t_star = 0.0;
  double t_lower = 0.0;
  double eta_lower = 1.0;
  bool overhead = false;
};

CommutantReport common_commutant_dim(const CertifyingSet& s, double tol = kRankTol);

/// diag(1..n) - (n+1)/2 I and the nearest-neighbour hopping sum.
CertifyingSet canonical_two_op_set(std::size_t n);

/// Unit-norm P_jk and Q_jk (j < k) in the eigenbasis of g; with `p_only`
/// the Q_jk are omitted.
CertifyingSet pq_certifier_set(const UnitaryOperator& g, bool p_only = false);

/// All non-identity Pauli strings on q qubits.
CertifyingSet pauli_certifier_set(int qubits);

/// arccos of <o, g^dagger o g>, clamped into [0, pi]. o must be unit norm.
double endpoint_angle(const HermitianOperator& o, const UnitaryOperator& g);

BottleneckReport bottleneck_report(const UnitaryOperator& g, const CertifyingSet& s, double omega_max,
                                   const std::string& gate_label = "", double tol = kRankTol);

PlanarityReport planarity_diagnostic(const UnitaryOperator& g, const CertifyingSet& s, double omega_max,
                                     double tol = kRankTol);
PlanarityReport planarity_diagnostic(const BottleneckReport& report);

}  // namespace qslkit
