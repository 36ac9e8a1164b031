#include "qslkit/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qslkit {

namespace {

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Json real_rows(const RMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix rows_to_matrix(const Json& rows, Eigen::Index cols, const char* what) {
  if (!rows.is_array()) throw ParseError(std::string(what) + ": expected an array of rows");
  RMatrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != cols) {
      throw ParseError(std::string(what) + ": row " + std::to_string(r) + " has the wrong length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& v = rows[r][static_cast<std::size_t>(c)];
      if (!v.is_number()) throw ParseError(std::string(what) + ": non-numeric entry");
      m(static_cast<Eigen::Index>(r), c) = v.get<double>();
    }
  }
  return m;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

Json operator_to_json(const CMatrix& m) {
  Json j;
  j["dim"] = m.rows();
  j["re"] = real_rows(m.real());
  j["im"] = real_rows(m.imag());
  return j;
}

CMatrix operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
    throw ParseError("operator JSON needs \"dim\" and \"re\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 2) throw ParseError("operator \"dim\" must be >= 2");
  const auto n = static_cast<Eigen::Index>(j["dim"].get<long long>());
  const RMatrix re = rows_to_matrix(j["re"], n, "re");
  if (re.rows() != n) throw ParseError("operator \"re\" must have dim rows");
  RMatrix im = RMatrix::Zero(n, n);
  if (j.contains("im")) {
    im = rows_to_matrix(j["im"], n, "im");
    if (im.rows() != n) throw ParseError("operator \"im\" must have dim rows");
  }
  CMatrix m(n, n);
  m.real() = re;
  m.imag() = im;
  return m;
}

UnitaryOperator unitary_from_json(const Json& j) { return UnitaryOperator(operator_from_json(j)); }
HermitianOperator hermitian_from_json(const Json& j) { return HermitianOperator(operator_from_json(j)); }

Json pauli_to_json(const PauliString& p) { return Json{{"word", p.word}, {"sign", p.sign}}; }

PauliString pauli_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("word") || !j["word"].is_string()) throw ParseError("Pauli JSON needs \"word\"");
  PauliString p = PauliString::parse(j["word"].get<std::string>());
  if (j.contains("sign")) {
    if (!j["sign"].is_number_integer()) throw ParseError("Pauli \"sign\" must be an integer");
    const int s = j["sign"].get<int>();
    if (s != 1 && s != -1) throw ParseError("Pauli \"sign\" must be +1 or -1");
    p.sign *= s;
  }
  return p;
}

Json speed_limit_to_json(const SpeedLimitResult& r, const std::string& gate) {
  Json j;
  j["gate"] = gate;
  j["delta_phi_star"] = r.delta_phi_star;
  j["t_star"] = r.t_star;
  j["omega_max"] = r.omega_max;
  j["phases"] = std::vector<double>(r.phases.data(), r.phases.data() + r.phases.size());
  j["shifts"] = r.shifts;
  return j;
}

Json commutant_to_json(const CommutantReport& r, const std::string& set_label, std::size_t set_size) {
  Json j;
  j["certifier_set"] = set_label;
  j["size"] = set_size;
  j["dimension"] = r.dimension;
  j["certifies"] = r.certifies;
  return j;
}

Json bottleneck_to_json(const BottleneckReport& r) {
  Json j;
  j["gate"] = r.gate;
  j["certifier_set"] = r.certifier_set;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"observable", e.observable},
                           {"theta", e.theta},
                           {"t2d", e.t2d},
                           {"closure_dim", e.closure_dim},
                           {"exact", e.exact}});
  }
  j["entries"] = std::move(entries);
  j["t_lower"] = r.t_lower;
  j["eta_lower"] = r.eta_lower;
  j["t_star"] = r.t_star;
  j["omega_max"] = r.omega_max;
  j["bottleneck"] = r.bottleneck_label;
  j["bottlenecks"] = r.bottlenecks;
  j["set_certifies"] = r.set_certifies;
  return j;
}

Json bottleneck_to_json(const BottleneckReport& r, const PlanarityReport& p) {
  Json j = bottleneck_to_json(r);
  j["bottleneck_closure_dim"] = p.closure_dim;
  j["overhead"] = p.overhead;
  return j;
}

std::string curve_to_csv(const SpaceCurve& c) {
  std::string out = "t";
  for (const auto& l : c.element_labels) out += ",tangent_" + l;
  for (const auto& l : c.element_labels) out += ",base_" + l;
  out += '\n';
  for (std::size_t i = 0; i < c.samples(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out += fmt12(c.times[i]);
    for (Eigen::Index k = 0; k < c.tangent.cols(); ++k) out += ',' + fmt12(c.tangent(r, k));
    for (Eigen::Index k = 0; k < c.base.cols(); ++k) out += ',' + fmt12(c.base(r, k));
    out += '\n';
  }
  return out;
}

Json curve_to_json(const SpaceCurve& c, const CurveMetadata& meta) {
  Json j;
  j["metadata"] = Json{{"gate", meta.gate},
                       {"observable", meta.observable},
                       {"omega_max", meta.omega_max},
                       {"steps", meta.steps},
                       {"basis", c.basis_label},
                       {"generated_by", kGeneratedBy}};
  j["labels"] = c.element_labels;
  j["t"] = c.times;
  j["tangent"] = real_rows(c.tangent);
  j["base"] = real_rows(c.base);
  return j;
}

CurveTable curve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("curve CSV is empty");
  const auto header = split(line, ',');
  if (header.empty() || header[0] != "t" || header.size() % 2 != 1) throw ParseError("curve CSV header malformed");
  const std::size_t m = (header.size() - 1) / 2;
  CurveTable t;
  for (std::size_t k = 0; k < m; ++k) {
    const std::string& h = header[1 + k];
    if (h.rfind("tangent_", 0) != 0 || header[1 + m + k] != "base_" + h.substr(8)) {
      throw ParseError("curve CSV header malformed at column " + std::to_string(k + 1));
    }
    t.element_labels.push_back(h.substr(8));
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw ParseError("curve CSV row has the wrong number of cells");
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        row.push_back(std::stod(c));
      } catch (const std::exception&) {
        throw ParseError("curve CSV cell '" + c + "' is not a number");
      }
    }
    rows.push_back(std::move(row));
  }
  const auto ns = static_cast<Eigen::Index>(rows.size());
  const auto nm = static_cast<Eigen::Index>(m);
  t.tangent.resize(ns, nm);
  t.base.resize(ns, nm);
  for (Eigen::Index i = 0; i < ns; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    t.times.push_back(row[0]);
    for (Eigen::Index k = 0; k < nm; ++k) {
      t.tangent(i, k) = row[static_cast<std::size_t>(1 + k)];
      t.base(i, k) = row[static_cast<std::size_t>(1 + nm + k)];
    }
  }
  return t;
}

CurveTable curve_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("t") || !j.contains("tangent") || !j.contains("base")) {
    throw ParseError("curve JSON needs labels, t, tangent, base");
  }
  CurveTable t;
  t.element_labels = j["labels"].get<std::vector<std::string>>();
  t.times = j["t"].get<std::vector<double>>();
  const auto m = static_cast<Eigen::Index>(t.element_labels.size());
  t.tangent = rows_to_matrix(j["tangent"], m, "tangent");
  t.base = rows_to_matrix(j["base"], m, "base");
  if (t.tangent.rows() != static_cast<Eigen::Index>(t.times.size()) || t.base.rows() != t.tangent.rows()) {
    throw ParseError("curve JSON sample counts disagree");
  }
  return t;
}

Json named_gate_to_json(const NamedGate& g) {
  Json j;
  j["name"] = g.name;
  j["qubits"] = g.qubits;
  j["unitary"] = operator_to_json(g.unitary.matrix());
  if (g.expected) {
    j["expected"] = Json{{"delta_phi_star", g.expected->delta_phi_star}, {"geometry", g.expected->geometry.name()}};
  } else {
    j["expected"] = nullptr;
  }
  j["note"] = g.note;
  return j;
}

Json gate_registry_to_json() {
  Json arr = Json::array();
  for (const auto& g : gate_registry()) arr.push_back(named_gate_to_json(g));
  return arr;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qslkit
