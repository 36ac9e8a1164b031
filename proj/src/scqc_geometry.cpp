#include "qslkit/scqc_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qslkit {

namespace {

const Complex kI(0.0, 1.0);

void require_unit_traceless(const HermitianOperator& o, const char* what) {
  if (std::abs(o.trace()) > kTraceTol * static_cast<double>(o.dim())) {
    throw TraceError(std::string(what) + ": observable must be traceless");
  }
  const double norm = hs_norm(o);
  if (std::abs(norm - 1.0) > kUnitNormTol) {
    std::ostringstream os;
    os << what << ": observable must have unit norm (got " << norm << ")";
    throw NormError(os.str());
  }
}

CMatrix icomm(const CMatrix& h, const CMatrix& o) { return kI * (h * o - o * h); }

double norm_of(const CMatrix& m) {
  return std::sqrt(std::max(0.0, m.squaredNorm() / static_cast<double>(m.rows())));
}

double inner_of(const CMatrix& a, const CMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real() / static_cast<double>(a.rows());
}

// Evaluates U(t) for a piecewise-constant schedule without accumulating
// products across samples: U(t) = exp(-i (t - s_k) H_k) U(s_k).
class ScheduleEvolution {
 public:
  explicit ScheduleEvolution(const HamiltonianSchedule& schedule) {
    const auto n = static_cast<Eigen::Index>(schedule.dim());
    CMatrix u = CMatrix::Identity(n, n);
    double start = 0.0;
    for (const auto& seg : schedule.segments) {
      const HermitianEigen eig = hermitian_eigen(seg.h);
      starts_.push_back(start);
      eigs_.push_back(eig);
      u_start_.push_back(u);
      u = propagate(eigs_.size() - 1, seg.duration) * u;
      start += seg.duration;
    }
    total_ = start;
  }

  std::size_t segment_at(double t) const {
    std::size_t k = 0;
    while (k + 1 < starts_.size() && t >= starts_[k + 1]) ++k;
    return k;
  }

  CMatrix at(double t, std::size_t k) const { return propagate(k, t - starts_[k]) * u_start_[k]; }

  const std::vector<double>& starts() const { return starts_; }
  double total() const { return total_; }

 private:
  CMatrix propagate(std::size_t k, double dt) const {
    const HermitianEigen& e = eigs_[k];
    CVector ph(e.values.size());
    for (Eigen::Index j = 0; j < ph.size(); ++j) ph(j) = std::polar(1.0, -dt * e.values(j));
    return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
  }

  std::vector<double> starts_;
  std::vector<HermitianEigen> eigs_;
  std::vector<CMatrix> u_start_;
  double total_ = 0.0;
};

void validate_schedule(const HamiltonianSchedule& schedule, std::size_t dim) {
  if (schedule.segments.empty()) throw RangeError("schedule has no segments");
  for (const auto& seg : schedule.segments) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) throw RangeError("schedule durations must be positive");
    if (seg.h.dim() != dim) throw DimensionError("schedule Hamiltonian dimension does not match observable");
  }
}

}  // namespace

HamiltonianSchedule HamiltonianSchedule::constant(const HermitianOperator& h, double duration) {
  return HamiltonianSchedule{{ScheduleSegment{h, duration}}};
}

double HamiltonianSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

std::size_t HamiltonianSchedule::dim() const { return segments.empty() ? 0 : segments.front().h.dim(); }

double HamiltonianSchedule::max_width() const {
  double w = 0.0;
  for (const auto& s : segments) w = std::max(w, spectral_width(s.h));
  return w;
}

double SpaceCurve::arc_length() const {
  double len = 0.0;
  for (Eigen::Index i = 1; i < base.rows(); ++i) len += (base.row(i) - base.row(i - 1)).norm();
  return len;
}

double SpaceCurve::max_speed_error() const {
  double err = 0.0;
  for (Eigen::Index i = 0; i < tangent.rows(); ++i) err = std::max(err, std::abs(tangent.row(i).norm() - 1.0));
  return err;
}

std::vector<double> PlaneDecomposition::curvatures() const {
  std::vector<double> out;
  out.reserve(planes.size());
  for (const auto& p : planes) out.push_back(p.curvature);
  return out;
}

RMatrix PlaneDecomposition::reconstruct() const {
  const auto d = static_cast<Eigen::Index>(dim);
  RMatrix m = RMatrix::Zero(d, d);
  for (const auto& p : planes) m += p.curvature * (p.b * p.a.transpose() - p.a * p.b.transpose());
  return m;
}

std::vector<double> uniform_grid(double total, std::size_t steps) {
  if (steps == 0) throw RangeError("steps must be positive");
  std::vector<double> t(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) t[i] = total * static_cast<double>(i) / static_cast<double>(steps);
  t.back() = total;
  return t;
}

SpaceCurve tangent_curve(const HamiltonianSchedule& schedule, const HermitianOperator& o, const OperatorBasis& basis,
                         std::size_t steps) {
  require_unit_traceless(o, "tangent_curve");
  if (basis.dim() != o.dim()) throw DimensionError("tangent_curve: basis dimension does not match observable");
  validate_schedule(schedule, o.dim());

  const ScheduleEvolution evo(schedule);
  const std::vector<double> times = uniform_grid(evo.total(), steps);
  const auto d = static_cast<Eigen::Index>(basis.size());
  const auto m = static_cast<Eigen::Index>(times.size());

  auto tangent_at = [&](double t, std::size_t seg) {
    const CMatrix u = evo.at(t, seg);
    return coordinates_unchecked(CMatrix(u.adjoint() * o.matrix() * u), basis);
  };

  SpaceCurve curve{times, RMatrix(m, d), RMatrix::Zero(m, d), o, basis.label, basis.element_labels};
  curve.tangent.row(0) = tangent_at(0.0, 0).transpose();
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    const double t0 = times[static_cast<std::size_t>(i)];
    const double t1 = times[static_cast<std::size_t>(i + 1)];
    // split at segment boundaries so Simpson never straddles a kink
    std::vector<double> cuts{t0};
    for (double s : evo.starts()) {
      if (s > t0 && s < t1) cuts.push_back(s);
    }
    cuts.push_back(t1);
    RVector acc = RVector::Zero(d);
    RVector right;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double a = cuts[c], b = cuts[c + 1], mid = 0.5 * (a + b);
      const std::size_t seg = evo.segment_at(mid);
      const RVector fa = tangent_at(a, seg);
      const RVector fm = tangent_at(mid, seg);
      right = tangent_at(b, seg);
      acc += (b - a) / 6.0 * (fa + 4.0 * fm + right);
    }
    curve.tangent.row(i + 1) = right.transpose();
    curve.base.row(i + 1) = curve.base.row(i) + acc.transpose();
  }
  return curve;
}

std::vector<double> curvature_profile(const HamiltonianSchedule& schedule, const HermitianOperator& o,
                                      std::size_t steps) {
  validate_schedule(schedule, o.dim());
  const std::vector<double> times = uniform_grid(schedule.total_duration(), steps);
  std::vector<double> seg_norm;
  std::vector<double> seg_start;
  double start = 0.0;
  for (const auto& seg : schedule.segments) {
    seg_norm.push_back(hs_norm(commutator(seg.h, o)));
    seg_start.push_back(start);
    start += seg.duration;
  }
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    std::size_t k = 0;
    while (k + 1 < seg_start.size() && t >= seg_start[k + 1]) ++k;
    out.push_back(seg_norm[k]);
  }
  return out;
}

FrenetData frenet_frame(const HermitianOperator& h, const HermitianOperator& o, double tol) {
  require_unit_traceless(o, "frenet_frame");
  if (h.dim() != o.dim()) throw DimensionError("frenet_frame: dimension mismatch");
  const double w = spectral_width(h);
  if (!(w > 0.0)) throw DegenerateError("frenet_frame: Hamiltonian is proportional to the identity");
  const double thr = tol * w;
  const std::size_t max_dim = h.dim() * h.dim() - 1;

  FrenetData out;
  std::vector<CMatrix> frame{o.matrix()};
  CMatrix prev = CMatrix::Zero(o.matrix().rows(), o.matrix().cols());
  double kappa_prev = 0.0;
  while (true) {
    if (frame.size() >= max_dim) {
      out.termination_residual = 0.0;
      break;
    }
    CMatrix next = icomm(h.matrix(), frame.back()) + kappa_prev * prev;
    // one pass of re-orthogonalization against the whole frame
    for (const auto& f : frame) next -= inner_of(f, next) * f;
    const double kappa = norm_of(next);
    if (kappa <= thr) {
      out.termination_residual = kappa;
      if (kappa >= 0.1 * thr) out.near_threshold = true;
      break;
    }
    if (kappa <= 10.0 * thr) out.near_threshold = true;
    out.curvatures.push_back(kappa);
    prev = frame.back();
    kappa_prev = kappa;
    frame.push_back(next / kappa);
  }
  out.closure_dim = frame.size();
  out.frame.reserve(frame.size());
  for (auto& f : frame) out.frame.emplace_back(std::move(f));
  return out;
}

AdjointGenerator adjoint_generator(const HermitianOperator& h, const OperatorBasis& basis) {
  if (basis.dim() != h.dim()) throw DimensionError("adjoint_generator: basis dimension does not match Hamiltonian");
  const auto n = static_cast<Eigen::Index>(h.dim());
  const auto d = static_cast<Eigen::Index>(basis.size());
  CMatrix elems(n * n, d);
  CMatrix comms(n * n, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const CMatrix& oj = basis.elements[static_cast<std::size_t>(j)].matrix();
    elems.col(j) = Eigen::Map<const CVector>(oj.data(), n * n);
    const CMatrix c = icomm(h.matrix(), oj);
    comms.col(j) = Eigen::Map<const CVector>(c.data(), n * n);
  }
  RMatrix a = (elems.adjoint() * comms).real() / static_cast<double>(n);
  const double dev = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (dev > 1e-10 * (1.0 + a.cwiseAbs().maxCoeff())) throw NumericalError("adjoint generator is not antisymmetric");
  a = 0.5 * (a - a.transpose());
  return {std::move(a), basis.label};
}

PlaneDecomposition plane_decomposition(const AdjointGenerator& gen, double tol) {
  const RMatrix& a = gen.matrix;
  if (a.rows() != a.cols()) throw DimensionError("plane_decomposition: matrix must be square");
  const double scale_a = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + scale_a)) {
    throw NumericalError("plane_decomposition: matrix is not antisymmetric");
  }
  PlaneDecomposition out;
  out.dim = static_cast<std::size_t>(a.rows());
  out.kernel_dim = out.dim;
  if (scale_a == 0.0) return out;

  // i*A is Hermitian with eigenpairs (+k, v), (-k, conj v); for v = x + i y
  // one has A x = k y and A y = -k x.
  const CMatrix m = kI * a.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("plane_decomposition: eigensolver failed");
  const RVector& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  const double thr = tol * scale;

  std::vector<RVector> vecs;
  for (Eigen::Index k = ev.size() - 1; k >= 0; --k) {
    if (ev(k) <= thr) break;
    CVector v = es.eigenvectors().col(k);
    const double vmax = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-6 * vmax) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    }
    out.planes.push_back(RotationPlane{ev(k), std::sqrt(2.0) * v.real(), std::sqrt(2.0) * v.imag()});
  }
  // modified Gram-Schmidt over (a_1, b_1, a_2, b_2, ...)
  for (std::size_t p = 0; p < out.planes.size(); ++p) {
    for (RVector* cur : {&out.planes[p].a, &out.planes[p].b}) {
      for (const RVector& q : vecs) *cur -= q.dot(*cur) * q;
      cur->normalize();
      vecs.push_back(*cur);
    }
  }
  out.kernel_dim = out.dim - 2 * out.planes.size();
  return out;
}

std::vector<EigenframePair> eigenframe_certifiers(const HermitianOperator& h) {
  const HermitianEigen eig = hermitian_eigen(h);
  const auto n = static_cast<Eigen::Index>(h.dim());
  const double scale = std::sqrt(static_cast<double>(n) / 2.0);
  std::vector<EigenframePair> out;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const CMatrix ab = eig.vectors.col(a) * eig.vectors.col(b).adjoint();
      HermitianOperator x(CMatrix(scale * (ab + ab.adjoint())));
      HermitianOperator y(CMatrix(-kI * scale * (ab - ab.adjoint())));
      out.push_back(EigenframePair{static_cast<std::size_t>(a), static_cast<std::size_t>(b), std::move(x),
                                   std::move(y), std::abs(eig.values(a) - eig.values(b))});
    }
  }
  return out;
}

HelixDecomposition helix_decomposition(const HermitianOperator& h, const HermitianOperator& o,
                                       const OperatorBasis& basis, double tol) {
  require_unit_traceless(o, "helix_decomposition");
  const PlaneDecomposition pd = plane_decomposition(adjoint_generator(h, basis), tol);
  const RVector r0 = coordinates(o, basis).coords;
  HelixDecomposition out;
  out.parallel = r0;
  const double kmax = pd.planes.empty() ? 0.0 : pd.planes.front().curvature;
  for (const auto& p : pd.planes) {
    const double alpha = p.a.dot(r0);
    const double beta = p.b.dot(r0);
    const RVector comp_a = alpha * p.a + beta * p.b;
    const RVector comp_b = alpha * p.b - beta * p.a;
    out.parallel -= comp_a;
    if (!out.components.empty() && std::abs(out.components.back().curvature - p.curvature) <= tol * kmax) {
      out.components.back().a += comp_a;
      out.components.back().b += comp_b;
    } else {
      out.components.push_back(HelixComponent{p.curvature, comp_a, comp_b});
    }
  }
  std::erase_if(out.components, [&](const HelixComponent& c) { return c.a.norm() <= tol; });
  return out;
}

SpaceCurve closed_form_curve(const HermitianOperator& h, const HermitianOperator& o, const std::vector<double>& times,
                             const OperatorBasis& basis, double tol) {
  const HelixDecomposition hd = helix_decomposition(h, o, basis, tol);
  const auto d = static_cast<Eigen::Index>(basis.size());
  const auto m = static_cast<Eigen::Index>(times.size());
  SpaceCurve curve{times, RMatrix(m, d), RMatrix(m, d), o, basis.label, basis.element_labels};
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = times[static_cast<std::size_t>(i)];
    RVector tan = hd.parallel;
    RVector pos = t * hd.parallel;
    for (const auto& c : hd.components) {
      const double k = c.curvature;
      const double s = std::sin(k * t), co = std::cos(k * t);
      tan += co * c.a + s * c.b;
      pos += (s / k) * c.a + ((1.0 - co) / k) * c.b;
    }
    curve.tangent.row(i) = tan.transpose();
    curve.base.row(i) = pos.transpose();
  }
  return curve;
}

}  // namespace qslkit
