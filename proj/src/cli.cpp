#include "qslkit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qslkit/certifiers.hpp"
#include "qslkit/gate_library.hpp"
#include "qslkit/qsl_core.hpp"
#include "qslkit/scqc_geometry.hpp"
#include "qslkit/serialization.hpp"

namespace qslkit {

namespace {

struct CliConfig {
  std::string gate;
  double omega_max = 1.0;
  std::string observable;
  std::size_t steps = 2048;
  std::string output;
  std::string format;
  std::string certifiers = "eigen";
  // certify
  std::string operators_file;
  std::string set_name;
  std::size_t set_dim = 0;
  int qubits = 0;
  // table test hook
  std::vector<std::string> inject_mismatch;
};

// Carries an exit code out of a command.
struct CliExit {
  int code;
  std::string message;
};

struct ResolvedGate {
  std::string label;
  UnitaryOperator unitary;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliExit{kExitUsage, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw CliExit{kExitUsage, "'" + path + "' is not valid JSON: " + e.what()};
  }
}

ResolvedGate resolve_gate(const std::string& spec) {
  if (spec.empty()) throw CliExit{kExitUsage, "--gate is required"};
  for (const auto& g : gate_registry()) {
    if (g.name == spec) return {g.name, g.unitary};
  }
  if (!std::filesystem::is_regular_file(spec)) {
    throw CliExit{kExitUsage, "unknown gate '" + spec + "' (not a registry name or a readable file)"};
  }
  const Json j = read_json_file(spec);
  try {
    return {spec, unitary_from_json(j)};
  } catch (const UnitarityError& e) {
    throw CliExit{kExitNonUnitary, std::string("gate file is not unitary: ") + e.what()};
  }
}

double rank_tolerance() {
  const char* env = std::getenv("QSLKIT_TOL");
  if (env == nullptr || *env == '\0') return kRankTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw CliExit{kExitUsage, std::string("QSLKIT_TOL must be a positive number, got '") + env + "'"};
  }
  return v;
}

void emit(const CliConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty() || c.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw CliExit{kExitUsage, "cannot write '" + c.output + "'"};
  f << text;
}

int cmd_qsl(const CliConfig& c, std::ostream& out) {
  const ResolvedGate g = resolve_gate(c.gate);
  emit(c, dump(speed_limit_to_json(speed_limit(g.unitary, c.omega_max), g.label)), out);
  return kExitOk;
}

int cmd_curve(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const ResolvedGate g = resolve_gate(c.gate);
  if (c.observable.empty()) throw CliExit{kExitUsage, "--observable is required"};
  const std::string format = c.format.empty() ? "csv" : c.format;
  if (format != "csv" && format != "json") throw CliExit{kExitUsage, "--format must be csv or json"};
  if (c.steps < 16) throw CliExit{kExitUsage, "--steps must be at least 16"};

  const PauliString p = PauliString::parse(c.observable);
  if (p.dim() != g.unitary.dim()) {
    throw CliExit{kExitUsage, "observable '" + c.observable + "' does not match the gate's qubit count"};
  }
  if (p.is_identity()) throw CliExit{kExitUsage, "observable must not be the identity"};

  const SpeedLimitResult sl = speed_limit(g.unitary, c.omega_max);
  if (sl.is_identity()) throw CliExit{kExitUsage, "gate is a global phase: T* = 0, there is no curve"};
  const OptimalGenerator og = optimal_generator(g.unitary, c.omega_max);
  const HermitianOperator o = p.matrix();
  const double tol = rank_tolerance();
  if (hs_norm(commutator(og.h_star, o)) <= tol * spectral_width(og.h_star)) {
    err << "warning: " << p.to_string() << " commutes with the optimal generator; the curve is a straight line\n";
  }
  const SpaceCurve curve = tangent_curve(HamiltonianSchedule::constant(og.h_star, sl.t_star), o,
                                         pauli_basis(static_cast<int>(p.qubits())), c.steps);
  if (format == "csv") {
    emit(c, curve_to_csv(curve), out);
  } else {
    emit(c, dump(curve_to_json(curve, CurveMetadata{g.label, p.to_string(), c.omega_max, c.steps})), out);
  }
  return kExitOk;
}

int cmd_classify(const CliConfig& c, std::ostream& out) {
  const ResolvedGate g = resolve_gate(c.gate);
  const SpeedLimitResult sl = speed_limit(g.unitary, c.omega_max);
  if (sl.is_identity()) throw CliExit{kExitUsage, "gate is a global phase: no curve to classify"};
  const GeometryReport r = classify_geometry(g.unitary, rank_tolerance());
  Json j;
  j["gate"] = g.label;
  j["delta_phi_star"] = sl.delta_phi_star;
  j["t_star"] = sl.t_star;
  j["omega_max"] = c.omega_max;
  j["geometry"] = r.geometry.name();
  j["closure_dim"] = r.geometry.closure_dim;
  j["bottleneck_certifier"] = r.witness;
  emit(c, dump(j), out);
  return kExitOk;
}

HermitianOperator operator_entry(const Json& e) {
  if (e.is_string()) return PauliString::parse(e.get<std::string>()).matrix();
  if (e.is_object() && e.contains("word")) return pauli_from_json(e).matrix();
  return hermitian_from_json(e);
}

int cmd_certify(const CliConfig& c, std::ostream& out) {
  const double tol = rank_tolerance();
  CertifyingSet s;
  if (!c.operators_file.empty()) {
    const Json j = read_json_file(c.operators_file);
    const Json& list = j.is_object() && j.contains("operators") ? j["operators"] : j;
    if (!list.is_array() || list.empty()) throw CliExit{kExitUsage, "operator file must hold a non-empty JSON array"};
    s.label = c.operators_file;
    for (std::size_t k = 0; k < list.size(); ++k) {
      std::string label = "op" + std::to_string(k + 1);
      if (list[k].is_string()) label = list[k].get<std::string>();
      s.members.push_back(Certifier{label, operator_entry(list[k]), std::nullopt});
    }
  } else if (c.set_name == "canonical") {
    s = canonical_two_op_set(c.set_dim == 0 ? 4 : c.set_dim);
  } else if (c.set_name == "pq" || c.set_name == "pq-p") {
    s = pq_certifier_set(resolve_gate(c.gate).unitary, c.set_name == "pq-p");
  } else if (c.set_name == "pauli") {
    if (c.qubits < 1 || c.qubits > kMaxQubits) throw CliExit{kExitUsage, "--qubits must be in [1, 4]"};
    s = pauli_certifier_set(c.qubits);
  } else {
    throw CliExit{kExitUsage, "certify needs --operators FILE or --set canonical|pq|pq-p|pauli"};
  }
  const CommutantReport r = common_commutant_dim(s, tol);
  emit(c, dump(commutant_to_json(r, s.label, s.size())), out);
  return r.certifies ? kExitOk : kExitNegative;
}

int cmd_bottleneck(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const ResolvedGate g = resolve_gate(c.gate);
  CertifyingSet s;
  if (c.certifiers == "eigen") {
    s = pq_certifier_set(g.unitary);
  } else if (c.certifiers == "pauli") {
    const int q = qubit_count(g.unitary.dim());
    if (q < 1 || q > kMaxQubits) throw CliExit{kExitUsage, "Pauli certifiers need a 1..4 qubit gate"};
    s = pauli_certifier_set(q);
  } else {
    throw CliExit{kExitUsage, "--certifiers must be pauli or eigen"};
  }
  const BottleneckReport r = bottleneck_report(g.unitary, s, c.omega_max, g.label, rank_tolerance());
  if (!r.set_certifies) err << "warning: certifier set '" << s.label << "' does not certify\n";
  emit(c, dump(bottleneck_to_json(r, planarity_diagnostic(r))), out);
  return kExitOk;
}

struct TableRow {
  std::vector<std::string> gates;
  double delta_phi_star = 0.0;
  double t_star = 0.0;
  std::string geometry;
  bool match = true;
  std::vector<std::string> problems;
};

std::string fixed(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

int cmd_table(const CliConfig& c, std::ostream& out, std::ostream& err) {
  static const std::vector<std::vector<std::string>> groups{
      {"U_ZX"}, {"U_H", "U_GHZ", "U_W"}, {"CNOT", "CZ", "SWAP", "iSWAP"}, {"Toffoli"}, {"U_4d"}};
  const std::string format = c.format.empty() ? "text" : c.format;
  if (format != "text" && format != "json") throw CliExit{kExitUsage, "table --format must be text or json"};
  const double tol = rank_tolerance();

  std::vector<TableRow> rows;
  for (const auto& group : groups) {
    TableRow row;
    row.gates = group;
    for (std::size_t k = 0; k < group.size(); ++k) {
      NamedGate g = standard_gate(group[k]);
      if (std::find(c.inject_mismatch.begin(), c.inject_mismatch.end(), g.name) != c.inject_mismatch.end()) {
        g.expected->delta_phi_star += 1.0;
      }
      const SpeedLimitResult sl = speed_limit(g.unitary, c.omega_max);
      const GeometryClass geo = classify_geometry(g.unitary, tol).geometry;
      if (k == 0) {
        row.delta_phi_star = sl.delta_phi_star;
        row.t_star = sl.t_star;
        row.geometry = geo.name();
      }
      if (std::abs(sl.delta_phi_star - g.expected->delta_phi_star) > 1e-9) {
        row.problems.push_back(g.name + ": dphi* " + fixed(sl.delta_phi_star, 12) + " expected " +
                               fixed(g.expected->delta_phi_star, 12));
      }
      if (!(geo == g.expected->geometry)) {
        row.problems.push_back(g.name + ": geometry " + geo.name() + " expected " + g.expected->geometry.name());
      }
      if (std::abs(sl.t_star - sl.delta_phi_star / c.omega_max) > 1e-9) {
        row.problems.push_back(g.name + ": T* inconsistent with dphi*/omega_max");
      }
    }
    row.match = row.problems.empty();
    rows.push_back(std::move(row));
  }

  bool all = true;
  for (const auto& r : rows) all = all && r.match;

  if (format == "json") {
    Json j;
    j["omega_max"] = c.omega_max;
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back(Json{{"gates", r.gates},
                         {"delta_phi_star", r.delta_phi_star},
                         {"t_star", r.t_star},
                         {"geometry", r.geometry},
                         {"match", r.match}});
    }
    j["rows"] = std::move(arr);
    j["all_match"] = all;
    emit(c, dump(j), out);
  } else {
    std::ostringstream t;
    char line[160];
    std::snprintf(line, sizeof(line), "%-24s %-14s %-14s %-8s %s\n", "gate", "dphi*/pi", "T*", "geometry", "status");
    t << line;
    for (const auto& r : rows) {
      std::string names;
      for (const auto& n : r.gates) names += (names.empty() ? "" : ",") + n;
      std::snprintf(line, sizeof(line), "%-24s %-14s %-14s %-8s %s\n", names.c_str(),
                    fixed(r.delta_phi_star / std::numbers::pi, 10).c_str(), fixed(r.t_star, 10).c_str(), r.geometry.c_str(),
                    r.match ? "ok" : "MISMATCH");
      t << line;
    }
    emit(c, t.str(), out);
  }
  if (!all) {
    for (const auto& r : rows) {
      for (const auto& p : r.problems) err << "mismatch: " << p << "\n";
    }
    return kExitNegative;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact spectral-width quantum speed limits and space-curve geometry"};
  app.name("qslkit");
  app.require_subcommand(1);
  CliConfig c;

  auto add_omega = [&](CLI::App* sub) {
    sub->add_option("--omega-max", c.omega_max, "Spectral-width bound (default 1)")
        ->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.output, "Output path (default stdout)"); };
  const std::string gate_help = "Registry name or path to a JSON unitary {dim, re, im}";

  auto* qsl = app.add_subcommand("qsl", "Minimal time T* and eigenphase spread of a gate");
  qsl->add_option("--gate", c.gate, gate_help)->required();
  add_omega(qsl);
  add_out(qsl);

  auto* curve = app.add_subcommand("curve", "Export the space curve of a Pauli observable under H*");
  curve->add_option("--gate", c.gate, gate_help)->required();
  curve->add_option("--observable", c.observable, "Pauli word, e.g. ZZ")->required();
  curve->add_option("--steps", c.steps, "Sample intervals (>= 16, default 2048)");
  curve->add_option("--format", c.format, "csv or json (default csv)");
  add_omega(curve);
  add_out(curve);

  auto* classify = app.add_subcommand("classify", "Geometry class of a gate's optimal curves");
  classify->add_option("--gate", c.gate, gate_help)->required();
  add_omega(classify);
  add_out(classify);

  auto* certify = app.add_subcommand("certify", "Check that a set of observables certifies (exit 1 if not)");
  certify->add_option("--operators", c.operators_file, "JSON array of operators or Pauli words");
  certify->add_option("--set", c.set_name, "Built-in set: canonical, pq, pq-p, pauli");
  certify->add_option("--dim", c.set_dim, "Dimension for --set canonical (default 4)");
  certify->add_option("--gate", c.gate, "Gate for --set pq / pq-p");
  certify->add_option("--qubits", c.qubits, "Qubits for --set pauli");
  add_out(certify);

  auto* bottleneck = app.add_subcommand("bottleneck", "Certifier lower bounds and planarity diagnostic");
  bottleneck->add_option("--gate", c.gate, gate_help)->required();
  bottleneck->add_option("--certifiers", c.certifiers, "pauli or eigen (default eigen)");
  add_omega(bottleneck);
  add_out(bottleneck);

  auto* table = app.add_subcommand("table", "Recompute the minimal-time table and compare to stored values");
  table->add_option("--format", c.format, "text or json (default text)");
  table->add_option("--inject-mismatch", c.inject_mismatch, "Corrupt a stored expectation (test hook)")
      ->group("");
  add_omega(table);
  add_out(table);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (qsl->parsed()) return cmd_qsl(c, out);
    if (curve->parsed()) return cmd_curve(c, out, err);
    if (classify->parsed()) return cmd_classify(c, out);
    if (certify->parsed()) return cmd_certify(c, out);
    if (bottleneck->parsed()) return cmd_bottleneck(c, out, err);
    if (table->parsed()) return cmd_table(c, out, err);
  } catch (const CliExit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const UnitarityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonUnitary;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qslkit
