#pragma once

// JSON and CSV encodings. JSON doubles use the shortest representation that
// round-trips (never more than 17 significant digits); CSV uses 12.

#include <string>
#include <vector>

#include <json.hpp>

#include "qslkit/certifiers.hpp"
#include "qslkit/gate_library.hpp"
#include "qslkit/operator_algebra.hpp"
#include "qslkit/qsl_core.hpp"
#include "qslkit/scqc_geometry.hpp"

namespace qslkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kGeneratedBy = "qslkit 0.1.0";

Json operator_to_json(const CMatrix& m);
/// {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted for real data.
CMatrix operator_from_json(const Json& j);
UnitaryOperator unitary_from_json(const Json& j);
HermitianOperator hermitian_from_json(const Json& j);

Json pauli_to_json(const PauliString& p);
PauliString pauli_from_json(const Json& j);

Json speed_limit_to_json(const SpeedLimitResult& r, const std::string& gate);
Json commutant_to_json(const CommutantReport& r, const std::string& set_label, std::size_t set_size);
Json bottleneck_to_json(const BottleneckReport& r);
Json bottleneck_to_json(const BottleneckReport& r, const PlanarityReport& p);

struct CurveMetadata {
  std::string gate;
  std::string observable;
  double omega_max = 1.0;
  std::size_t steps = 0;
};

/// Column data of an exported curve, as read back from CSV or JSON.
struct CurveTable {
  std::vector<std::string> element_labels;
  std::vector<double> times;
  RMatrix tangent;
  RMatrix base;
};

std::string curve_to_csv(const SpaceCurve& c);
Json curve_to_json(const SpaceCurve& c, const CurveMetadata& meta);
CurveTable curve_from_csv(const std::string& text);
CurveTable curve_from_json(const Json& j);

Json named_gate_to_json(const NamedGate& g);
/// Every registry gate, matrices included.
Json gate_registry_to_json();

/// Stable pretty print, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace qslkit
