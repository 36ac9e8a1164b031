#include "qslkit/certifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qslkit/qsl_core.hpp"

namespace qslkit {

namespace {

constexpr double kExactMatchTol = 1e-6;

double fold_angle(double rot) {
  double f = std::fmod(std::abs(rot), 2.0 * std::numbers::pi);
  if (f > std::numbers::pi) f = 2.0 * std::numbers::pi - f;
  return f;
}

}  // namespace

void CertifyingSet::validate() const {
  if (members.empty()) throw RangeError("certifying set is empty");
  const std::size_t n = members.front().op.dim();
  for (const auto& m : members) {
    if (m.op.dim() != n) throw DimensionError("certifying set mixes operator dimensions");
    if (std::abs(m.op.trace()) > kTraceTol * static_cast<double>(n)) {
      throw TraceError("certifier '" + m.label + "' is not traceless");
    }
  }
}

CommutantReport common_commutant_dim(const CertifyingSet& s, double tol) {
  s.validate();
  const auto n = static_cast<Eigen::Index>(s.dim());
  const Eigen::Index n2 = n * n;
  const CMatrix id = CMatrix::Identity(n, n);
  // rows of [W, O_i] acting on column-major vec(W): (O^T (x) I - I (x) O)
  CMatrix stacked(static_cast<Eigen::Index>(s.size()) * n2, n2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const CMatrix& o = s.members[i].op.matrix();
    stacked.middleRows(static_cast<Eigen::Index>(i) * n2, n2) = kron(o.transpose(), id) - kron(id, o);
  }
  RVector sv;
  if (stacked.rows() > stacked.cols()) {
    Eigen::HouseholderQR<CMatrix> qr(stacked);
    const CMatrix r = qr.matrixQR().topRows(n2).triangularView<Eigen::Upper>();
    sv = Eigen::JacobiSVD<CMatrix>(r).singularValues();
  } else {
    sv = Eigen::JacobiSVD<CMatrix>(stacked).singularValues();
  }
  const double smax = sv.size() == 0 ? 0.0 : sv.maxCoeff();
  std::size_t nullity = static_cast<std::size_t>(n2 - sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= tol * smax) ++nullity;
  }
  return {nullity, nullity == 1};
}

CertifyingSet canonical_two_op_set(std::size_t n) {
  if (n < 2 || n > 16) throw RangeError("canonical_two_op_set: n must be in [2, 16]");
  const auto N = static_cast<Eigen::Index>(n);
  CMatrix o1 = CMatrix::Zero(N, N);
  CMatrix o2 = CMatrix::Zero(N, N);
  for (Eigen::Index k = 0; k < N; ++k) o1(k, k) = static_cast<double>(k + 1) - 0.5 * static_cast<double>(n + 1);
  for (Eigen::Index k = 0; k + 1 < N; ++k) o2(k, k + 1) = o2(k + 1, k) = 1.0;
  CertifyingSet s;
  s.label = "two-op-canonical";
  s.members.push_back(Certifier{"O1", HermitianOperator(std::move(o1)), std::nullopt});
  s.members.push_back(Certifier{"O2", HermitianOperator(std::move(o2)), std::nullopt});
  return s;
}

CertifyingSet pq_certifier_set(const UnitaryOperator& g, bool p_only) {
  const EigenphaseSet e = eigenphases(g);
  const SpeedLimitResult sl = minimal_spread(e, 1.0);
  const RVector shifted = sl.shifted_phases();
  const auto n = static_cast<Eigen::Index>(g.dim());
  const double scale = std::sqrt(static_cast<double>(n) / 2.0);
  const Complex i(0.0, 1.0);
  CertifyingSet s;
  s.label = p_only ? "P-eigenbasis" : "PQ-eigenbasis";
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const CMatrix jk = e.eigenvectors.col(j) * e.eigenvectors.col(k).adjoint();
      const double rot = shifted(j) - shifted(k);
      const std::string idx = "(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
      s.members.push_back(Certifier{"P" + idx, HermitianOperator(CMatrix(scale * (jk + jk.adjoint()))),
                                    EigenCertifierTag{static_cast<std::size_t>(j), static_cast<std::size_t>(k), 'P', rot}});
      if (!p_only) {
        s.members.push_back(Certifier{"Q" + idx, HermitianOperator(CMatrix(-i * scale * (jk - jk.adjoint()))),
                                      EigenCertifierTag{static_cast<std::size_t>(j), static_cast<std::size_t>(k), 'Q', rot}});
      }
    }
  }
  return s;
}

CertifyingSet pauli_certifier_set(int qubits) {
  const OperatorBasis basis = pauli_basis(qubits);
  CertifyingSet s;
  s.label = "pauli";
  for (std::size_t k = 0; k < basis.size(); ++k) {
    s.members.push_back(Certifier{basis.element_labels[k], basis.elements[k], std::nullopt});
  }
  return s;
}

double endpoint_angle(const HermitianOperator& o, const UnitaryOperator& g) {
  if (o.dim() != g.dim()) throw DimensionError("endpoint_angle: dimension mismatch");
  if (std::abs(hs_norm(o) - 1.0) > kUnitNormTol) throw NormError("endpoint_angle: observable must have unit norm");
  const double c = hs_inner(o, g.conjugate(o));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

BottleneckReport bottleneck_report(const UnitaryOperator& g, const CertifyingSet& s, double omega_max,
                                   const std::string& gate_label, double tol) {
  s.validate();
  if (s.dim() != g.dim()) throw DimensionError("bottleneck_report: certifier and gate dimensions differ");
  const EigenphaseSet e = eigenphases(g);
  const SpeedLimitResult sl = minimal_spread(e, omega_max);

  BottleneckReport r;
  r.gate = gate_label;
  r.certifier_set = s.label;
  r.omega_max = omega_max;
  r.t_star = sl.t_star;
  r.set_certifies = common_commutant_dim(s, tol).certifies;

  std::optional<HermitianOperator> h_star;
  if (!sl.is_identity()) h_star = optimal_generator(g, omega_max).h_star;

  for (const auto& m : s.members) {
    const double norm = hs_norm(m.op);
    if (!(norm > 0.0)) throw NormError("certifier '" + m.label + "' is the zero operator");
    const HermitianOperator unit = m.op * (1.0 / norm);
    BottleneckEntry entry{m.label, endpoint_angle(unit, g), 0.0, 1, false};
    if (m.eigen && std::abs(fold_angle(m.eigen->rotation) - entry.theta) <= kExactMatchTol) {
      entry.theta = std::abs(m.eigen->rotation);
      entry.exact = true;
    }
    entry.t2d = entry.theta / omega_max;
    if (h_star) entry.closure_dim = frenet_frame(*h_star, unit, tol).closure_dim;
    r.entries.push_back(entry);
  }

  for (const auto& en : r.entries) r.t_lower = std::max(r.t_lower, en.t2d);
  const double tie = 1e-9 * std::max(1.0, r.t_lower);
  std::size_t best_closure = 0;
  for (const auto& en : r.entries) {
    if (en.t2d >= r.t_lower - tie) {
      r.bottlenecks.push_back(en.observable);
      if (en.closure_dim > best_closure) {
        best_closure = en.closure_dim;
        r.bottleneck_label = en.observable;
      }
    }
  }
  r.eta_lower = r.t_lower > 0.0 ? r.t_star / r.t_lower : 1.0;
  return r;
}

PlanarityReport planarity_diagnostic(const BottleneckReport& report) {
  PlanarityReport p;
  p.bottleneck_label = report.bottleneck_label;
  p.t_star = report.t_star;
  p.t_lower = report.t_lower;
  p.eta_lower = report.eta_lower;
  for (const auto& en : report.entries) {
    if (std::find(report.bottlenecks.begin(), report.bottlenecks.end(), en.observable) == report.bottlenecks.end()) {
      continue;
    }
    p.bottlenecks.emplace_back(en.observable, en.closure_dim);
    if (en.observable == report.bottleneck_label) p.closure_dim = en.closure_dim;
  }
  p.overhead = p.closure_dim > 2;
  return p;
}

PlanarityReport planarity_diagnostic(const UnitaryOperator& g, const CertifyingSet& s, double omega_max, double tol) {
  return planarity_diagnostic(bottleneck_report(g, s, omega_max, "", tol));
}

}  // namespace qslkit
