#include "qslkit/gate_library.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qslkit/qsl_core.hpp"

namespace qslkit {

namespace {

constexpr double kPi = std::numbers::pi;

HermitianOperator pauli(const std::string& word) { return PauliString::parse(word).matrix(); }

// exp(i theta K)
UnitaryOperator expi(const HermitianOperator& k, double theta) { return evolve_constant(k, -theta); }

UnitaryOperator permutation_gate(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& swaps) {
  const auto N = static_cast<Eigen::Index>(n);
  CMatrix m = CMatrix::Identity(N, N);
  for (auto [a, b] : swaps) m.row(static_cast<Eigen::Index>(a)).swap(m.row(static_cast<Eigen::Index>(b)));
  return UnitaryOperator(std::move(m));
}

UnitaryOperator diagonal_gate(const std::vector<Complex>& d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t k = 0; k < d.size(); ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
  return UnitaryOperator(std::move(m));
}

NamedGate make_gate(const std::string& name) {
  const double s2 = std::sqrt(2.0);
  const double s3 = std::sqrt(3.0);
  const GeometryClass arc{2}, helix3{3}, helix4{4};
  if (name == "X") return {name, UnitaryOperator(pauli("X").matrix()), 1, GateExpectation{kPi, arc}, ""};
  if (name == "Hadamard") {
    return {name, UnitaryOperator(CMatrix((pauli("X") + pauli("Z")).matrix() / s2)), 1, GateExpectation{kPi, arc}, ""};
  }
  if (name == "U_H") {
    return {name, expi((pauli("X") + pauli("Z")) * (1.0 / s2), kPi / 2.0), 1, GateExpectation{kPi, arc},
            "exp[i (pi/2sqrt2)(X+Z)]"};
  }
  if (name == "U_ZX") {
    return {name, expi(pauli("ZX"), -kPi / 4.0), 2, GateExpectation{kPi / 2.0, arc},
            "exp(-i Omega t ZX/2) at t = pi/(2 Omega)"};
  }
  if (name == "CNOT") return {name, permutation_gate(4, {{2, 3}}), 2, GateExpectation{kPi, helix3}, "control qubit 1"};
  if (name == "CZ") return {name, diagonal_gate({1, 1, 1, -1}), 2, GateExpectation{kPi, helix3}, ""};
  if (name == "SWAP") return {name, permutation_gate(4, {{1, 2}}), 2, GateExpectation{kPi, helix3}, ""};
  if (name == "iSWAP") {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 1.0;
    m(1, 2) = m(2, 1) = Complex(0.0, 1.0);
    return {name, UnitaryOperator(std::move(m)), 2, GateExpectation{kPi, helix3}, ""};
  }
  if (name == "U_4d") {
    return {name, expi(pauli("ZI") * 2.0 + pauli("IZ"), kPi / 4.0), 2, GateExpectation{1.5 * kPi, helix4},
            "exp[i (pi/4)(2ZI+IZ)]"};
  }
  if (name == "U_GHZ") {
    return {name, expi((pauli("XXX") + pauli("ZII")) * (1.0 / s2), kPi / 2.0), 3, GateExpectation{kPi, arc},
            "exp[i (pi/2sqrt2)(XXX+ZII)]"};
  }
  if (name == "U_W") {
    return {name, expi((pauli("XYZ") + pauli("YZX") + pauli("ZXY")) * (1.0 / s3), kPi / 2.0), 3,
            GateExpectation{kPi, arc}, "exp[i (pi/2sqrt3)(XYZ+YZX+ZXY)]"};
  }
  if (name == "Toffoli") {
    return {name, permutation_gate(8, {{6, 7}}), 3, GateExpectation{kPi, helix3},
            "controls on qubits 1,2; classified through its locally equivalent diagonal frame CCZ"};
  }
  if (name == "CCZ") {
    return {name, diagonal_gate({1, 1, 1, 1, 1, 1, 1, -1}), 3, GateExpectation{kPi, helix3},
            "locally equivalent to Toffoli (Hadamard on qubit 3)"};
  }
  throw NotFoundError("unknown gate '" + name + "'");
}

struct GeneratorSpec {
  HermitianOperator unit;  // generator at omega = 1
  double width_factor;
  double delta_phi;
};

GeneratorSpec generator_spec(const std::string& name) {
  if (name == "X" || name == "Hadamard" || name == "U_H") return {pauli("Z") * 0.5, 1.0, kPi};
  if (name == "U_ZX") return {pauli("ZZ") * 0.5, 1.0, kPi / 2.0};
  if (name == "CNOT") return {(pauli("ZI") + pauli("IX") - pauli("ZX")) * 0.5, 2.0, kPi};
  if (name == "CZ" || name == "SWAP") return {(pauli("ZZ") - pauli("ZI") - pauli("IZ")) * 0.5, 2.0, kPi};
  if (name == "iSWAP") return {(pauli("ZI") + pauli("IZ")) * 0.5, 2.0, kPi};
  if (name == "U_4d") return {(pauli("ZI") * 2.0 + pauli("IZ")) * 0.5, 3.0, 1.5 * kPi};
  if (name == "U_GHZ" || name == "U_W") return {pauli("ZII") * 0.5, 1.0, kPi};
  if (name == "CCZ" || name == "Toffoli") {
    return {(pauli("ZZI") + pauli("ZIZ") + pauli("IZZ") - pauli("ZII") - pauli("IZI") - pauli("IIZ") - pauli("ZZZ")) *
                0.5,
            4.0, kPi};
  }
  throw NotFoundError("no optimal generator recorded for '" + name + "'");
}

}  // namespace

std::string GeometryClass::name() const {
  switch (closure_dim) {
    case 0: return "none";
    case 1: return "line";
    case 2: return "arc";
    default: return "helix" + std::to_string(closure_dim);
  }
}

GeometryClass GeometryClass::parse(const std::string& name) {
  if (name == "line") return {1};
  if (name == "arc") return {2};
  if (name.rfind("helix", 0) == 0 && name.size() > 5) return {static_cast<std::size_t>(std::stoul(name.substr(5)))};
  throw ParseError("unknown geometry class '" + name + "'");
}

HermitianOperator DiagonalTwoQubitGenerator::materialize() const {
  return (pauli("ZI") * a1 + pauli("IZ") * a2 + pauli("ZZ") * a3) * 0.5;
}

DiagonalTwoQubitGenerator DiagonalTwoQubitGenerator::from_diagonal(const HermitianOperator& h) {
  if (h.dim() != 4) throw DimensionError("two-qubit diagonal generator must be 4x4");
  // a_k = 2 <P_k, h>
  return {2.0 * hs_inner(pauli("ZI"), h), 2.0 * hs_inner(pauli("IZ"), h), 2.0 * hs_inner(pauli("ZZ"), h)};
}

const std::vector<std::string>& standard_gate_names() {
  static const std::vector<std::string> names{"X",    "Hadamard", "U_H",  "U_ZX",  "CNOT",    "CZ",  "SWAP",
                                              "iSWAP", "U_4d",    "U_GHZ", "U_W", "Toffoli", "CCZ"};
  return names;
}

NamedGate standard_gate(const std::string& name) { return make_gate(name); }

const std::vector<NamedGate>& gate_registry() {
  static const std::vector<NamedGate> registry = [] {
    std::vector<NamedGate> r;
    for (const auto& n : standard_gate_names()) r.push_back(make_gate(n));
    return r;
  }();
  return registry;
}

HermitianOperator optimal_diagonal_generator(const std::string& name, double omega) {
  return generator_spec(name).unit * omega;
}

DiagonalGeneratorInfo diagonal_generator_info(const std::string& name, double omega) {
  if (!(omega > 0.0)) throw RangeError("omega must be positive");
  const GeneratorSpec spec = generator_spec(name);
  HermitianOperator h = spec.unit * omega;
  const double t = spec.delta_phi / (spec.width_factor * omega);
  UnitaryOperator frame = evolve_constant(h, t);
  return {name, std::move(h), spec.width_factor, t, std::move(frame)};
}

GeometryReport classify_diagonal_generator(const HermitianOperator& diagonal, double tol) {
  const int q = qubit_count(diagonal.dim());
  if (q < 1 || q > kMaxQubits) throw RangeError("Pauli geometry classification needs 1..4 qubits");
  const double w = spectral_width(diagonal);
  if (!(w > 0.0)) throw DegenerateError("generator is proportional to the identity");
  const OperatorBasis basis = pauli_basis(q);
  GeometryReport report{GeometryClass{1}, "", diagonal};
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (hs_norm(commutator(diagonal, basis.elements[k])) <= tol * w) continue;
    const std::size_t d = frenet_frame(diagonal, basis.elements[k], tol).closure_dim;
    if (d > report.geometry.closure_dim) {
      report.geometry.closure_dim = d;
      report.witness = basis.element_labels[k];
    }
  }
  return report;
}

GeometryReport classify_geometry(const UnitaryOperator& g, double tol) {
  const OptimalGenerator og = optimal_generator(g, 1.0);
  RVector e = hermitian_eigen(og.centered).values;
  std::sort(e.data(), e.data() + e.size(), std::greater<>());
  return classify_diagonal_generator(HermitianOperator::diagonal(e), tol);
}

int lambda_closure(double a1, double a2, double a3, double rel_tol) {
  const std::array<double, 3> a{a1, a2, a3};
  const double scale = std::max({std::abs(a1), std::abs(a2), std::abs(a3)});
  if (!(scale > 0.0)) throw DegenerateError("lambda_closure: all coefficients are zero");
  auto is_zero = [&](double x) { return std::abs(x) <= rel_tol * scale; };
  int best = 0;
  for (auto [j, k] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const double x = a[static_cast<std::size_t>(j)], y = a[static_cast<std::size_t>(k)];
    if (is_zero(x) && is_zero(y)) continue;
    int lam = 2;
    if (!is_zero(x) && !is_zero(y)) {
      const bool equal = std::abs(std::abs(x) - std::abs(y)) <= rel_tol * std::max(std::abs(x), std::abs(y));
      lam = equal ? 3 : 4;
    }
    best = std::max(best, lam);
  }
  return best;
}

HermitianOperator three_qubit_diagonal(const std::array<double, 7>& a) {
  static const std::array<const char*, 7> words{"ZII", "IZI", "IIZ", "ZZI", "ZIZ", "IZZ", "ZZZ"};
  HermitianOperator h = HermitianOperator::zero(8);
  for (std::size_t k = 0; k < 7; ++k) h = h + pauli(words[k]) * (0.5 * a[k]);
  return h;
}

std::vector<ThreeQubitBlock> three_qubit_blocks(const std::array<double, 7>& a) {
  // coefficient subsets, in the order ZII, IZI, IIZ, ZZI, ZIZ, IZZ, ZZZ
  static const std::array<std::vector<int>, 7> subsets{
      std::vector<int>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  static const std::array<std::vector<int>, 7> supports{
      std::vector<int>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};

  std::vector<ThreeQubitBlock> out;
  for (const auto& support : supports) {
    ThreeQubitBlock block;
    block.label = "B{";
    for (std::size_t i = 0; i < support.size(); ++i) {
      block.support.push_back(support[i] + 1);
      block.label += (i ? "," : "") + std::to_string(support[i] + 1);
    }
    block.label += "}";
    auto in_support = [&](int q) { return std::find(support.begin(), support.end(), q) != support.end(); };

    for (int code = 0; code < 64; ++code) {
      std::string word(3, 'I');
      bool ok = true;
      for (int q = 0; q < 3; ++q) {
        const int digit = (code >> (2 * (2 - q))) & 3;
        const char c = "IXYZ"[digit];
        const bool xy = c == 'X' || c == 'Y';
        if (xy != in_support(q)) ok = false;
        word[static_cast<std::size_t>(q)] = c;
      }
      if (ok) block.members.push_back(word);
    }

    // The pinned qubit (lowest in the support) carries z = +1; the other two
    // qubits run over (+,+), (+,-), (-,+), (-,-).
    const int pinned = support.front();
    std::vector<int> free;
    for (int q = 0; q < 3; ++q) {
      if (q != pinned) free.push_back(q);
    }
    for (int s = 0; s < 4; ++s) {
      std::array<int, 3> z{};
      z[static_cast<std::size_t>(pinned)] = 1;
      z[static_cast<std::size_t>(free[0])] = (s & 2) ? -1 : 1;
      z[static_cast<std::size_t>(free[1])] = (s & 1) ? -1 : 1;
      double kappa = 0.0;
      for (std::size_t t = 0; t < 7; ++t) {
        int overlap = 0;
        int prod = 1;
        for (int q : subsets[t]) {
          if (in_support(q)) ++overlap;
          prod *= z[static_cast<std::size_t>(q)];
        }
        if (overlap % 2 == 1) kappa += a[t] * prod;
      }
      block.frequencies[static_cast<std::size_t>(s)] = kappa;
    }
    out.push_back(std::move(block));
  }
  return out;
}

std::vector<PlaneCertifier> bottleneck_plane_certifiers(const std::string& name, double omega) {
  if (!(omega > 0.0)) throw RangeError("omega must be positive");
  const double s2 = std::sqrt(2.0);
  struct Spec {
    std::string label;
    HermitianOperator a;
    HermitianOperator b_reference;
  };
  std::vector<Spec> specs;
  std::string gen_name = name;
  if (name == "U_ZX") {
    specs.push_back({"A_ZX", (pauli("YI") + pauli("YZ")) * (1.0 / s2), (pauli("XZ") + pauli("XI")) * (1.0 / s2)});
  } else if (name == "CZ" || name == "CNOT") {
    gen_name = "CZ";
    specs.push_back({"A_CZ", (pauli("IX") - pauli("ZX")) * (1.0 / s2), (pauli("ZY") - pauli("IY")) * (1.0 / s2)});
  } else if (name == "U_4d") {
    specs.push_back(
        {"A-_4d", (pauli("XX") - pauli("YY")) * (1.0 / s2), (pauli("XY") + pauli("YX")) * (-1.0 / s2)});
  } else if (name == "U_GHZ" || name == "U_W") {
    specs.push_back({"A_GHZ/W", (pauli("XII") + pauli("YII")) * (1.0 / s2), (pauli("YII") - pauli("XII")) * (1.0 / s2)});
  } else if (name == "CCZ" || name == "Toffoli") {
    gen_name = "CCZ";
    specs.push_back({"A_CCZ", (pauli("IIX") - pauli("ZIX") - pauli("IZX") + pauli("ZZX")) * 0.5,
                     (pauli("ZIY") + pauli("IZY") - pauli("IIY") - pauli("ZZY")) * 0.5});
  } else {
    throw NotFoundError("no bottleneck plane certifier recorded for '" + name + "'");
  }

  const GeneratorSpec gs = generator_spec(gen_name);
  const HermitianOperator h = gs.unit * omega;
  const double rate = spectral_width(h);
  std::vector<PlaneCertifier> out;
  for (auto& s : specs) {
    // B is fixed by the dynamics: i[H, A] = rate * B
    const HermitianOperator b = commutator(h, s.a) * (1.0 / rate);
    if (std::abs(std::abs(hs_inner(b, s.b_reference)) - 1.0) > 1e-9) {
      throw NumericalError("plane certifier '" + s.label + "' does not rotate within its reference plane");
    }
    out.push_back(PlaneCertifier{s.label, s.a, b, rate, h, gs.delta_phi});
  }
  return out;
}

int operator_schmidt_rank(const UnitaryOperator& u, double tol) {
  const auto n = static_cast<Eigen::Index>(u.dim());
  if (n % 2 != 0) throw DimensionError("operator_schmidt_rank: needs a leading qubit");
  const Eigen::Index m = n / 2;
  CMatrix r(4, m * m);
  for (Eigen::Index i1 = 0; i1 < 2; ++i1) {
    for (Eigen::Index j1 = 0; j1 < 2; ++j1) {
      for (Eigen::Index i2 = 0; i2 < m; ++i2) {
        for (Eigen::Index j2 = 0; j2 < m; ++j2) r(i1 * 2 + j1, i2 * m + j2) = u.matrix()(i1 * m + i2, j1 * m + j2);
      }
    }
  }
  const RVector sv = Eigen::JacobiSVD<CMatrix>(r).singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol * sv(0)) ++rank;
  }
  return rank;
}

std::pair<Complex, double> makhlin_invariants(const UnitaryOperator& u) {
  if (u.dim() != 4) throw DimensionError("makhlin_invariants: two-qubit gate required");
  const Complex i(0.0, 1.0);
  CMatrix q(4, 4);
  q << 1, 0, 0, i, 0, i, 1, 0, 0, i, -1, 0, 1, 0, 0, -i;
  q /= std::sqrt(2.0);
  const CMatrix ub = q.adjoint() * u.matrix() * q;
  const CMatrix m = ub.transpose() * ub;
  const Complex det = u.matrix().determinant();
  const Complex tr = m.trace();
  const Complex tr2 = (m * m).trace();
  return {tr * tr / (16.0 * det), ((tr * tr - tr2) / (4.0 * det)).real()};
}

bool unitarily_equivalent_up_to_phase(const UnitaryOperator& a, const UnitaryOperator& b, double tol) {
  if (a.dim() != b.dim()) return false;
  Eigen::ComplexSchur<CMatrix> sa(a.matrix()), sb(b.matrix());
  const CVector ea = sa.matrixT().diagonal();
  const CVector eb = sb.matrixT().diagonal();
  for (Eigen::Index k = 0; k < ea.size(); ++k) {
    const Complex rot = eb(0) / ea(k);
    std::vector<bool> used(static_cast<std::size_t>(eb.size()), false);
    bool all = true;
    for (Eigen::Index i = 0; i < ea.size() && all; ++i) {
      bool found = false;
      for (Eigen::Index j = 0; j < eb.size(); ++j) {
        if (!used[static_cast<std::size_t>(j)] && std::abs(rot * ea(i) - eb(j)) <= tol) {
          used[static_cast<std::size_t>(j)] = true;
          found = true;
          break;
        }
      }
      all = found;
    }
    if (all) return true;
  }
  return false;
}

}  // namespace qslkit
