#pragma once

// Named gates with their expected speed-limit data, the diagonal-frame
// optimal generators used to classify their space-curve geometry, and the
// closed-form two- and three-qubit plane structure of diagonal generators.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qslkit/operator_algebra.hpp"
#include "qslkit/scqc_geometry.hpp"

namespace qslkit {

/// Geometry of the bottleneck Pauli-certifier curve, labelled by its closure
/// dimension: 2 arc, 3 helix3, 4 helix4.
struct GeometryClass {
  std::size_t closure_dim = 0;

  std::string name() const;
  static GeometryClass parse(const std::string& name);
  bool operator==(const GeometryClass&) const = default;
};

struct GateExpectation {
  double delta_phi_star;
  GeometryClass geometry;
};

struct NamedGate {
  std::string name;
  UnitaryOperator unitary;
  int qubits;
  std::optional<GateExpectation> expected;
  std::string note;
};

/// (1/2)(a1 ZI + a2 IZ + a3 ZZ).
struct DiagonalTwoQubitGenerator {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  HermitianOperator materialize() const;
  /// Coefficients of a traceless diagonal 4x4 operator.
  static DiagonalTwoQubitGenerator from_diagonal(const HermitianOperator& h);
};

/// Worked generator with the time at which it produces its frame gate.
struct DiagonalGeneratorInfo {
  std::string name;
  HermitianOperator generator;
  double width_factor;       // spectral width in units of omega
  double gate_time;          // dphi* / (width_factor * omega)
  UnitaryOperator frame_gate;  // exp(-i gate_time generator)
};

struct GeometryReport {
  GeometryClass geometry;
  std::string witness;  // first Pauli string (lexicographic) reaching closure_dim
  HermitianOperator diagonal_generator;
};

struct ThreeQubitBlock {
  std::vector<int> support;  // 1-based qubits carrying X/Y
  std::string label;         // e.g. "B{1,3}"
  std::vector<std::string> members;
  std::array<double, 4> frequencies;  // signed
};

struct PlaneCertifier {
  std::string label;
  HermitianOperator a;
  HermitianOperator b;
  double rate;
  HermitianOperator generator;
  double rotation;  // rate * T* in the saturated frame
};

const std::vector<std::string>& standard_gate_names();
NamedGate standard_gate(const std::string& name);
/// Immutable registry of every standard gate, built once.
const std::vector<NamedGate>& gate_registry();

HermitianOperator optimal_diagonal_generator(const std::string& name, double omega);
DiagonalGeneratorInfo diagonal_generator_info(const std::string& name, double omega);

/// Max Frenet closure over non-commuting Pauli certifiers under the optimal
/// generator placed on the diagonal with descending eigenvalues.
GeometryReport classify_geometry(const UnitaryOperator& g, double tol = kRankTol);
GeometryReport classify_diagonal_generator(const HermitianOperator& diagonal, double tol = kRankTol);

/// Max over coefficient pairs of the closure-dimension rule for
/// (1/2)(a1 ZI + a2 IZ + a3 ZZ); equality of |a_j| uses relative tolerance.
int lambda_closure(double a1, double a2, double a3, double rel_tol = 1e-9);

/// Seven X/Y-support blocks of the 56 non-diagonal three-qubit Pauli strings
/// under (1/2) sum a_T Z_T, coefficients ordered ZII, IZI, IIZ, ZZI, ZIZ, IZZ, ZZZ.
std::vector<ThreeQubitBlock> three_qubit_blocks(const std::array<double, 7>& a);
HermitianOperator three_qubit_diagonal(const std::array<double, 7>& a);

std::vector<PlaneCertifier> bottleneck_plane_certifiers(const std::string& name, double omega = 1.0);

/// Operator-Schmidt rank across the first qubit / rest cut; 1 iff the gate is
/// a tensor product.
int operator_schmidt_rank(const UnitaryOperator& u, double tol = 1e-9);

/// Makhlin local invariants (G1 complex, G2 real) of a two-qubit gate.
std::pair<Complex, double> makhlin_invariants(const UnitaryOperator& u);

/// Same eigenvalue multiset up to one global phase.
bool unitarily_equivalent_up_to_phase(const UnitaryOperator& a, const UnitaryOperator& b, double tol = 1e-8);

}  // namespace qslkit
