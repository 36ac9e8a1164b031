#pragma once

// Dense operator arithmetic on su(n) with the normalized Hilbert-Schmidt
// inner product <A,B> = (1/n) Re Tr(A^dagger B), plus Pauli-string and
// generalized Gell-Mann bases.

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qslkit/errors.hpp"

namespace qslkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermiticityRelTol = 1e-12;
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kUnitNormTol = 1e-9;
inline constexpr int kMaxQubits = 4;

/// Square complex matrix of dimension >= 2.
class DenseOperator {
 public:
  explicit DenseOperator(CMatrix entries);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const CMatrix& matrix() const { return entries_; }

 private:
  CMatrix entries_;
};

/// Hermitian operator. Inputs within tolerance of Hermitian are symmetrized,
/// anything further away is rejected with HermiticityError.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix entries);
  explicit HermitianOperator(const DenseOperator& base);

  static HermitianOperator zero(std::size_t dim);
  static HermitianOperator identity(std::size_t dim);
  static HermitianOperator diagonal(const RVector& values);

  std::size_t dim() const { return base_.dim(); }
  const CMatrix& matrix() const { return base_.matrix(); }
  const DenseOperator& base() const { return base_; }
  Complex trace() const { return base_.matrix().trace(); }

  HermitianOperator operator+(const HermitianOperator& rhs) const;
  HermitianOperator operator-(const HermitianOperator& rhs) const;
  HermitianOperator operator-() const;
  HermitianOperator operator*(double s) const;
  HermitianOperator shifted(double lambda) const;

 private:
  DenseOperator base_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

/// Unitary operator, max |U^dagger U - I| <= 1e-10.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(CMatrix entries);

  static UnitaryOperator identity(std::size_t dim);

  std::size_t dim() const { return base_.dim(); }
  const CMatrix& matrix() const { return base_.matrix(); }
  UnitaryOperator adjoint() const;
  UnitaryOperator operator*(const UnitaryOperator& rhs) const;

  /// U^dagger A U.
  HermitianOperator conjugate(const HermitianOperator& a) const;

 private:
  DenseOperator base_;
};

/// Length-q word over {I,X,Y,Z} with a real sign.
struct PauliString {
  std::string word;
  int sign = 1;

  /// Accepts an optional leading '+' or '-' followed by letters in IXYZ.
  static PauliString parse(std::string_view text);

  std::size_t qubits() const { return word.size(); }
  std::size_t dim() const { return std::size_t{1} << word.size(); }
  bool is_identity() const;
  HermitianOperator matrix() const;
  std::string to_string() const;
};

/// Ordered orthonormal basis of su(n).
struct OperatorBasis {
  std::vector<HermitianOperator> elements;
  std::vector<std::string> element_labels;
  std::string label;

  std::size_t size() const { return elements.size(); }
  std::size_t dim() const { return elements.empty() ? 0 : elements.front().dim(); }
};

struct CoordinateVector {
  RVector coords;
  std::string basis_label;
};

double hs_inner(const HermitianOperator& a, const HermitianOperator& b);
double hs_norm(const HermitianOperator& a);

/// i[h, o], Hermitian whenever h and o are.
HermitianOperator commutator(const HermitianOperator& h, const HermitianOperator& o);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};
HermitianEigen hermitian_eigen(const HermitianOperator& h);

double spectral_width(const HermitianOperator& h);

/// h - (E_max + E_min)/2 * I.
HermitianOperator center_hamiltonian(const HermitianOperator& h);

/// All 4^q - 1 non-identity Pauli strings, lexicographic with I<X<Y<Z and
/// the most significant qubit first.
OperatorBasis pauli_basis(int qubits);

/// Generalized Gell-Mann basis scaled to unit normalized norm; works for any
/// n in [2, 16], including dimensions that are not a power of two.
OperatorBasis gell_mann_basis(std::size_t n);

/// Pauli basis when n is a power of two, Gell-Mann otherwise.
OperatorBasis default_basis(std::size_t n);

CoordinateVector coordinates(const HermitianOperator& a, const OperatorBasis& basis);
HermitianOperator reconstruct(const CoordinateVector& v, const OperatorBasis& basis);

/// Coordinates of an arbitrary (assumed Hermitian traceless) matrix; no checks.
RVector coordinates_unchecked(const CMatrix& a, const OperatorBasis& basis);

/// |Tr(A^dagger B)| / n, insensitive to global phase.
double phase_invariant_fidelity(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Number of qubits if n is a power of two (n >= 2), else -1.
int qubit_count(std::size_t n);

}  // namespace qslkit
