#include <gtest/gtest.h>

#include <cmath>

#include "qslkit/errors.hpp"
#include "qslkit/serialization.hpp"
#include "test_support.hpp"

using namespace qslkit;
using qslkit::testing::make_rng;
using qslkit::testing::max_abs_diff;
using qslkit::testing::random_unitary;

namespace {

SpaceCurve cnot_zz_curve(std::size_t steps) {
  const DiagonalGeneratorInfo info = diagonal_generator_info("CNOT", 1.0);
  return tangent_curve(HamiltonianSchedule::constant(info.generator, info.gate_time),
                       PauliString::parse("ZZ").matrix(), pauli_basis(2), steps);
}

}  // namespace

TEST(OperatorJson, RoundTripIsBitExact) {
  auto rng = make_rng(71);
  for (std::size_t n : {2u, 3u, 8u}) {
    const CMatrix m = random_unitary(n, rng).matrix();
    const Json j = operator_to_json(m);
    EXPECT_EQ(j["dim"], n);
    const CMatrix back = operator_from_json(Json::parse(dump(j)));
    EXPECT_EQ(max_abs_diff(m, back), 0.0);
  }
}

TEST(OperatorJson, ImaginaryPartIsOptional) {
  const Json j = Json::parse(R"({"dim": 2, "re": [[0, 1], [1, 0]]})");
  const UnitaryOperator x = unitary_from_json(j);
  EXPECT_EQ(x.matrix()(0, 1), Complex(1.0));
  EXPECT_NO_THROW(hermitian_from_json(j));
}

TEST(OperatorJson, MalformedInputIsRejected) {
  EXPECT_THROW(operator_from_json(Json::parse("[1, 2]")), ParseError);
  EXPECT_THROW(operator_from_json(Json::parse(R"({"dim": 1, "re": [[1]]})")), ParseError);
  EXPECT_THROW(operator_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0]]})")), ParseError);
  EXPECT_THROW(operator_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0], [0, "a"]]})")), ParseError);
  EXPECT_THROW(unitary_from_json(Json::parse(R"({"dim": 2, "re": [[1, 1], [0, 1]]})")), UnitarityError);
  EXPECT_THROW(hermitian_from_json(Json::parse(R"({"dim": 2, "re": [[1, 1], [0, 1]]})")), HermiticityError);
}

TEST(PauliJson, RoundTripAndSign) {
  const PauliString p = PauliString::parse("XZY");
  const PauliString back = pauli_from_json(pauli_to_json(p));
  EXPECT_EQ(back.word, "XZY");
  EXPECT_LT(max_abs_diff(back.matrix().matrix(), p.matrix().matrix()), 1e-15);
  const PauliString neg = pauli_from_json(Json::parse(R"({"word": "ZZ", "sign": -1})"));
  EXPECT_NEAR(neg.matrix().matrix()(0, 0).real(), -1.0, 1e-15);
  EXPECT_THROW(pauli_from_json(Json::parse(R"({"word": "ZQ"})")), ParseError);
  EXPECT_THROW(pauli_from_json(Json::parse(R"({"word": "ZZ", "sign": 2})")), ParseError);
  EXPECT_THROW(pauli_from_json(Json::parse(R"({"letters": "ZZ"})")), ParseError);
}

TEST(ReportJson, SpeedLimitKeys) {
  const Json j = speed_limit_to_json(speed_limit(standard_gate("CNOT").unitary, 1.0), "CNOT");
  for (const char* k : {"gate", "delta_phi_star", "t_star", "omega_max", "phases", "shifts"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_NEAR(j["t_star"].get<double>(), std::numbers::pi, 1e-12);
}

TEST(ReportJson, BottleneckKeysAndPlanarity) {
  const UnitaryOperator g = standard_gate("CNOT").unitary;
  const BottleneckReport r = bottleneck_report(g, pauli_certifier_set(2), 1.0, "CNOT");
  const Json j = bottleneck_to_json(r, planarity_diagnostic(r));
  for (const char* k : {"gate", "certifier_set", "entries", "t_lower", "eta_lower", "t_star", "omega_max", "bottleneck",
                        "bottlenecks", "set_certifies", "bottleneck_closure_dim", "overhead"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j["entries"].size(), 15u);
  EXPECT_EQ(j["bottleneck_closure_dim"], 3);
  EXPECT_TRUE(j["overhead"].get<bool>());
  EXPECT_FALSE(bottleneck_to_json(r).contains("overhead"));
}

TEST(ReportJson, CommutantKeys) {
  const Json j = commutant_to_json(common_commutant_dim(canonical_two_op_set(4)), "canonical", 2);
  EXPECT_EQ(j["dimension"], 1);
  EXPECT_TRUE(j["certifies"].get<bool>());
}

TEST(CurveExport, CsvHeaderAndShape) {
  const SpaceCurve c = cnot_zz_curve(64);
  const std::string csv = curve_to_csv(c);
  const std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(header.rfind("t,tangent_IX,", 0), 0u) << header;
  EXPECT_EQ(header.find(' '), std::string::npos);
  EXPECT_NE(header.find(",base_ZZ"), std::string::npos);
  const CurveTable t = curve_from_csv(csv);
  EXPECT_EQ(t.times.size(), 65u);
  EXPECT_EQ(t.tangent.cols(), 15);
  EXPECT_EQ(t.element_labels, c.element_labels);
}

TEST(CurveExport, CsvAndJsonAgree) {
  const SpaceCurve c = cnot_zz_curve(128);
  const CurveTable a = curve_from_csv(curve_to_csv(c));
  const CurveTable b = curve_from_json(Json::parse(dump(curve_to_json(c, {"CNOT", "ZZ", 1.0, 128}))));
  ASSERT_EQ(a.times.size(), b.times.size());
  auto close = [](double x, double y) { return std::abs(x - y) <= 5e-12 * std::max(1.0, std::abs(y)); };
  for (std::size_t i = 0; i < a.times.size(); ++i) EXPECT_TRUE(close(a.times[i], b.times[i]));
  for (Eigen::Index i = 0; i < a.tangent.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.tangent.cols(); ++k) {
      EXPECT_TRUE(close(a.tangent(i, k), b.tangent(i, k)));
      EXPECT_TRUE(close(a.base(i, k), b.base(i, k)));
    }
  }
  // JSON is lossless
  EXPECT_EQ((b.tangent - c.tangent).cwiseAbs().maxCoeff(), 0.0);
}

TEST(CurveExport, JsonMetadata) {
  const Json j = curve_to_json(cnot_zz_curve(16), {"CNOT", "ZZ", 2.0, 16});
  EXPECT_EQ(j["metadata"]["gate"], "CNOT");
  EXPECT_EQ(j["metadata"]["basis"], "pauli-q2");
  EXPECT_EQ(j["metadata"]["generated_by"], kGeneratedBy);
  EXPECT_EQ(j["t"].size(), 17u);
}

TEST(CurveExport, MalformedInputIsRejected) {
  EXPECT_THROW(curve_from_csv(""), ParseError);
  EXPECT_THROW(curve_from_csv("t,tangent_Z,base_Z\n0,1\n"), ParseError);
  EXPECT_THROW(curve_from_csv("t,tangent_Z,base_Z\n0,x,1\n"), ParseError);
  EXPECT_THROW(curve_from_json(Json::parse(R"({"labels": ["Z"]})")), ParseError);
}

TEST(Registry, DumpCoversEveryGateAndIsDeterministic) {
  const Json j = gate_registry_to_json();
  ASSERT_EQ(j.size(), standard_gate_names().size());
  for (const auto& g : j) {
    const UnitaryOperator u = unitary_from_json(g["unitary"]);
    EXPECT_EQ(max_abs_diff(u.matrix(), standard_gate(g["name"].get<std::string>()).unitary.matrix()), 0.0);
    EXPECT_TRUE(g["expected"].contains("geometry"));
  }
  EXPECT_EQ(dump(j), dump(gate_registry_to_json()));
  EXPECT_EQ(dump(j).back(), '\n');
}
