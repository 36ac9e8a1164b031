#include "qslkit/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qslkit {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(os.str());
  }
}

CMatrix single_pauli(char c) {
  CMatrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw ParseError(std::string("invalid Pauli letter '") + c + "'");
  }
  return m;
}

}  // namespace

DenseOperator::DenseOperator(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionError("operator must be square");
  }
  if (entries_.rows() < 2) {
    throw DimensionError("operator dimension must be at least 2");
  }
  if (!entries_.allFinite()) {
    throw NumericalError("operator has non-finite entries");
  }
}

HermitianOperator::HermitianOperator(CMatrix entries) : base_([&] {
    DenseOperator d(std::move(entries));
    const CMatrix& m = d.matrix();
    const double dev = max_abs(m - m.adjoint());
    if (dev > kHermiticityRelTol * (1.0 + max_abs(m))) {
      std::ostringstream os;
      os << "operator is not Hermitian (deviation " << dev << ")";
      throw HermiticityError(os.str());
    }
    CMatrix sym = 0.5 * (m + m.adjoint());
    return DenseOperator(std::move(sym));
  }()) {}

HermitianOperator::HermitianOperator(const DenseOperator& base) : HermitianOperator(base.matrix()) {}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  return HermitianOperator(CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  return HermitianOperator(CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

HermitianOperator HermitianOperator::diagonal(const RVector& values) {
  CMatrix m = CMatrix::Zero(values.size(), values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) m(k, k) = values(k);
  return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& rhs) const {
  require_same_dim(dim(), rhs.dim(), "operator+");
  return HermitianOperator(CMatrix(matrix() + rhs.matrix()));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& rhs) const {
  require_same_dim(dim(), rhs.dim(), "operator-");
  return HermitianOperator(CMatrix(matrix() - rhs.matrix()));
}

HermitianOperator HermitianOperator::operator-() const { return HermitianOperator(CMatrix(-matrix())); }

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(CMatrix(s * matrix())); }

HermitianOperator HermitianOperator::shifted(double lambda) const {
  CMatrix m = matrix();
  m.diagonal().array() += lambda;
  return HermitianOperator(std::move(m));
}

UnitaryOperator::UnitaryOperator(CMatrix entries) : base_([&] {
    DenseOperator d(std::move(entries));
    const CMatrix& m = d.matrix();
    const CMatrix gram = m.adjoint() * m;
    const double dev = max_abs(gram - CMatrix::Identity(m.rows(), m.cols()));
    if (dev > kUnitarityTol) {
      std::ostringstream os;
      os << "operator is not unitary (max |U^dagger U - I| = " << dev << ")";
      throw UnitarityError(os.str());
    }
    return d;
  }()) {}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  return UnitaryOperator(CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(CMatrix(matrix().adjoint())); }

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator& rhs) const {
  require_same_dim(dim(), rhs.dim(), "unitary product");
  return UnitaryOperator(CMatrix(matrix() * rhs.matrix()));
}

HermitianOperator UnitaryOperator::conjugate(const HermitianOperator& a) const {
  require_same_dim(dim(), a.dim(), "conjugate");
  return HermitianOperator(CMatrix(matrix().adjoint() * a.matrix() * matrix()));
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    p.sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  if (text.empty()) throw ParseError("empty Pauli word");
  if (static_cast<int>(text.size()) > kMaxQubits) {
    throw RangeError("Pauli word longer than " + std::to_string(kMaxQubits) + " qubits");
  }
  for (char c : text) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw ParseError(std::string("invalid Pauli word '") + std::string(text) + "'");
    }
  }
  p.word = std::string(text);
  return p;
}

bool PauliString::is_identity() const {
  return std::all_of(word.begin(), word.end(), [](char c) { return c == 'I'; });
}

HermitianOperator PauliString::matrix() const {
  if (word.empty()) throw ParseError("empty Pauli word");
  CMatrix m = single_pauli(word[0]);
  for (std::size_t k = 1; k < word.size(); ++k) m = kron(m, single_pauli(word[k]));
  return HermitianOperator(CMatrix(static_cast<double>(sign) * m));
}

std::string PauliString::to_string() const { return (sign < 0 ? "-" : "") + word; }

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "hs_inner");
  // Re Tr(A^dagger B) = Re sum_ij conj(A_ij) B_ij
  const Complex t = (a.matrix().conjugate().cwiseProduct(b.matrix())).sum();
  return t.real() / static_cast<double>(a.dim());
}

double hs_norm(const HermitianOperator& a) { return std::sqrt(std::max(0.0, hs_inner(a, a))); }

HermitianOperator commutator(const HermitianOperator& h, const HermitianOperator& o) {
  require_same_dim(h.dim(), o.dim(), "commutator");
  const Complex i(0.0, 1.0);
  return HermitianOperator(CMatrix(i * (h.matrix() * o.matrix() - o.matrix() * h.matrix())));
}

HermitianEigen hermitian_eigen(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double spectral_width(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  const RVector& e = es.eigenvalues();
  return e(e.size() - 1) - e(0);
}

HermitianOperator center_hamiltonian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  const RVector& e = es.eigenvalues();
  return h.shifted(-0.5 * (e(e.size() - 1) + e(0)));
}

OperatorBasis pauli_basis(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw RangeError("pauli_basis: qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  OperatorBasis basis;
  basis.label = "pauli-q" + std::to_string(qubits);
  const std::size_t count = std::size_t{1} << (2 * qubits);
  basis.elements.reserve(count - 1);
  basis.element_labels.reserve(count - 1);
  for (std::size_t code = 1; code < count; ++code) {
    std::string word(static_cast<std::size_t>(qubits), 'I');
    for (int q = 0; q < qubits; ++q) {
      const std::size_t digit = (code >> (2 * (qubits - 1 - q))) & 3U;
      word[static_cast<std::size_t>(q)] = kLetters[digit];
    }
    PauliString p{word, 1};
    basis.elements.push_back(p.matrix());
    basis.element_labels.push_back(word);
  }
  return basis;
}

OperatorBasis gell_mann_basis(std::size_t n) {
  if (n < 2 || n > (std::size_t{1} << kMaxQubits)) throw RangeError("gell_mann_basis: n must be in [2, 16]");
  OperatorBasis basis;
  basis.label = "gell-mann-n" + std::to_string(n);
  const auto N = static_cast<Eigen::Index>(n);
  const double scale = std::sqrt(static_cast<double>(n) / 2.0);
  const Complex i(0.0, 1.0);
  for (Eigen::Index j = 0; j < N; ++j) {
    for (Eigen::Index k = j + 1; k < N; ++k) {
      CMatrix s = CMatrix::Zero(N, N);
      s(j, k) = s(k, j) = scale;
      basis.elements.emplace_back(std::move(s));
      basis.element_labels.push_back("S_" + std::to_string(j + 1) + "_" + std::to_string(k + 1));
      CMatrix a = CMatrix::Zero(N, N);
      a(j, k) = -i * scale;
      a(k, j) = i * scale;
      basis.elements.emplace_back(std::move(a));
      basis.element_labels.push_back("A_" + std::to_string(j + 1) + "_" + std::to_string(k + 1));
    }
  }
  for (Eigen::Index l = 1; l < N; ++l) {
    // diag(1,...,1,-l,0,...) with l ones, normalized to (1/n) Tr = 1
    CMatrix d = CMatrix::Zero(N, N);
    for (Eigen::Index k = 0; k < l; ++k) d(k, k) = 1.0;
    d(l, l) = -static_cast<double>(l);
    const double norm2 = static_cast<double>(l * (l + 1)) / static_cast<double>(n);
    d /= std::sqrt(norm2);
    basis.elements.emplace_back(std::move(d));
    basis.element_labels.push_back("D_" + std::to_string(l));
  }
  return basis;
}

OperatorBasis default_basis(std::size_t n) {
  const int q = qubit_count(n);
  return q > 0 && q <= kMaxQubits ? pauli_basis(q) : gell_mann_basis(n);
}

RVector coordinates_unchecked(const CMatrix& a, const OperatorBasis& basis) {
  RVector c(static_cast<Eigen::Index>(basis.size()));
  const double inv_n = 1.0 / static_cast<double>(a.rows());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    c(static_cast<Eigen::Index>(k)) = (basis.elements[k].matrix().conjugate().cwiseProduct(a)).sum().real() * inv_n;
  }
  return c;
}

CoordinateVector coordinates(const HermitianOperator& a, const OperatorBasis& basis) {
  require_same_dim(a.dim(), basis.dim(), "coordinates");
  if (std::abs(a.trace()) > kTraceTol * static_cast<double>(a.dim())) {
    throw TraceError("coordinates: operator is not traceless");
  }
  return {coordinates_unchecked(a.matrix(), basis), basis.label};
}

HermitianOperator reconstruct(const CoordinateVector& v, const OperatorBasis& basis) {
  if (static_cast<std::size_t>(v.coords.size()) != basis.size()) {
    throw DimensionError("reconstruct: coordinate length does not match basis size");
  }
  const auto n = static_cast<Eigen::Index>(basis.dim());
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k) m += v.coords(static_cast<Eigen::Index>(k)) * basis.elements[k].matrix();
  return HermitianOperator(std::move(m));
}

double phase_invariant_fidelity(const CMatrix& a, const CMatrix& b) {
  require_same_dim(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(b.rows()), "fidelity");
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

int qubit_count(std::size_t n) {
  if (n < 2 || (n & (n - 1)) != 0) return -1;
  int q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

}  // namespace qslkit
