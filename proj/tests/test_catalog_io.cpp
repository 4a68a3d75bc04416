#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "lieherm/catalog_io.hpp"
#include "lieherm/chern_geometry.hpp"
#include "lieherm/errors.hpp"
#include "testutil.hpp"

using namespace lieherm;
using namespace lieherm::testutil;

namespace {

const char* kMinimalAbelian = R"({
  "schema": 1, "mode": "real", "name": "minimal",
  "dim_real": 2, "brackets": [],
  "J": [[0, -1], [1, 0]],
  "g": [[1, 0], [0, 1]]
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  return text.replace(text.find(from), from.size(), to);
}

}  // namespace

TEST_CASE("minimal real document parses and validates downstream") {
  const AlgebraDocument doc = parse_document(kMinimalAbelian);
  CHECK(doc.mode == AlgebraDocument::Mode::Real);
  CHECK(doc.name == "minimal");
  CHECK(doc.dim_real == 2);
  CHECK(doc.brackets.empty());
  CHECK(validate_real_algebra(to_real_algebra(doc), 1e-10).overall);
}

TEST_CASE("complex document reproduces the Heisenberg tensors") {
  const AlgebraDocument doc = parse_document(R"({
    "schema": 1, "mode": "complex", "name": "h3",
    "n": 3, "C": [[3, 1, 2, 1.0, 0.0]], "D": []
  })");
  const CDTensors cd = to_cd_tensors(doc);
  const CDTensors reference = to_cd_tensors(builtin("complex_heisenberg"));
  CHECK(tensor3_max_diff(cd.C, reference.C) == 0.0);
  CHECK(tensor3_max_diff(cd.D, reference.D) == 0.0);
}

TEST_CASE("structural parse errors") {
  CHECK_THROWS_AS(parse_document("not json"), StructuralError);
  CHECK_THROWS_AS(parse_document("[]"), StructuralError);
  CHECK_THROWS_AS(parse_document(R"({"schema": 2, "mode": "real", "name": "x"})"),
                  StructuralError);
  CHECK_THROWS_WITH_AS(parse_document(replace(kMinimalAbelian, "\"real\"", "\"other\"")),
                       doctest::Contains("unknown mode"), StructuralError);
  CHECK_THROWS_WITH_AS(parse_document(replace(kMinimalAbelian, "\"dim_real\": 2", "\"dim_real\": 3")),
                       doctest::Contains("even"), StructuralError);
  CHECK_THROWS_WITH_AS(
      parse_document(replace(kMinimalAbelian, "\"brackets\": []", "\"brackets\": [], \"extra\": 1")),
      doctest::Contains("unknown top-level key"), StructuralError);
  CHECK_THROWS_WITH_AS(
      parse_document(replace(kMinimalAbelian, "\"brackets\": []", "\"brackets\": [[1, 2, 9, 1.0]]")),
      doctest::Contains("out of range"), StructuralError);
  CHECK_THROWS_AS(
      parse_document(replace(kMinimalAbelian, "\"brackets\": []", "\"brackets\": [[1, 1, 2, 1.0]]")),
      StructuralError);
}

TEST_CASE("duplicate sparse entries are named, including mirrored pairs") {
  const char* doc = R"({
    "schema": 1, "mode": "real", "name": "dup", "dim_real": 4,
    "brackets": [[1, 2, 3, 1.0], [1, 2, 3, 0.5]],
    "J": [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]],
    "g": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]
  })";
  CHECK_THROWS_WITH_AS(parse_document(doc), doctest::Contains("duplicate bracket entry (1,2,3)"),
                       StructuralError);

  const std::string mirrored = replace(doc, "[1, 2, 3, 0.5]", "[2, 1, 3, 0.5]");
  CHECK_THROWS_WITH_AS(parse_document(mirrored), doctest::Contains("duplicate"), StructuralError);

  const char* cdup = R"({
    "schema": 1, "mode": "complex", "name": "dup", "n": 2,
    "C": [], "D": [[1, 2, 1, 0.5, 0.0], [1, 2, 1, 0.25, 0.0]]
  })";
  CHECK_THROWS_WITH_AS(parse_document(cdup), doctest::Contains("duplicate D entry"),
                       StructuralError);

  const char* cdiag = R"({
    "schema": 1, "mode": "complex", "name": "diag", "n": 2,
    "C": [[1, 2, 2, 0.5, 0.0]], "D": []
  })";
  CHECK_THROWS_WITH_AS(parse_document(cdiag), doctest::Contains("antisymmetry"), StructuralError);
}

TEST_CASE("one-sided completion normalizes mirrored input") {
  const AlgebraDocument doc = parse_document(R"({
    "schema": 1, "mode": "real", "name": "flip", "dim_real": 4,
    "brackets": [[2, 1, 3, -1.0]],
    "J": [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]],
    "g": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]
  })");
  REQUIRE(doc.brackets.size() == 1);
  CHECK(doc.brackets[0].a == 1);
  CHECK(doc.brackets[0].b == 2);
  CHECK(doc.brackets[0].value == 1.0);
  // identical dense tensor as the catalog entry
  const RealLieAlgebra lhs = to_real_algebra(doc);
  const RealLieAlgebra rhs = catalog_algebra("kodaira_thurston");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) CHECK(lhs.f(a, b, c) == rhs.f(a, b, c));
}

TEST_CASE("builtin catalog entries") {
  const AlgebraDocument abelian = builtin("abelian_2");
  CHECK(abelian.mode == AlgebraDocument::Mode::Real);
  CHECK(abelian.dim_real == 4);
  CHECK(abelian.brackets.empty());

  const AlgebraDocument kt = builtin("kodaira_thurston");
  REQUIRE(kt.brackets.size() == 1);
  CHECK(kt.brackets[0] == BracketEntry{1, 2, 3, 1.0});

  const AlgebraDocument heis = builtin("complex_heisenberg");
  CHECK(heis.mode == AlgebraDocument::Mode::Complex);
  CHECK(heis.n == 3);

  CHECK_THROWS_WITH_AS(builtin("nope"), doctest::Contains("available"), StructuralError);
  CHECK_THROWS_AS(builtin("abelian_0"), StructuralError);
  CHECK_THROWS_AS(builtin("abelian_x"), StructuralError);
  CHECK(builtin_names().size() == 4);
}

TEST_CASE("round trip: parse after emit is the identity") {
  for (const char* name : {"abelian_1", "abelian_2", "abelian_4", "kodaira_thurston",
                           "iwasawa_real6", "complex_heisenberg"}) {
    const AlgebraDocument doc = builtin(name);
    CHECK(parse_document(emit_document(doc)) == doc);
  }

  AlgebraDocument gnarly = builtin("kodaira_thurston");
  gnarly.name = "gnarly \"quotes\" and \\slashes";
  gnarly.brackets[0].value = 1.0 / 3.0;
  gnarly.g[0][0] = std::sqrt(2.0);
  gnarly.g[1][1] = 1e-17;
  gnarly.J[0][1] = -1.0000000000000002;
  gnarly.J[1][0] = 1.0000000000000002;
  CHECK(parse_document(emit_document(gnarly)) == gnarly);
}

TEST_CASE("emission is deterministic and canonical") {
  const AlgebraDocument doc = builtin("iwasawa_real6");
  const std::string a = emit_document(doc);
  const std::string b = emit_document(doc);
  CHECK(a == b);
  CHECK(a.back() == '\n');
  CHECK(emit_document(parse_document(a)) == a);
}

TEST_CASE("real and complex presentations agree on frame-level quantities") {
  const CDTensors real_cd = catalog_cd("iwasawa_real6");
  const CDTensors complex_cd = catalog_cd("complex_heisenberg");
  const TorsionTensor rt = torsion(real_cd);
  const TorsionTensor ct = torsion(complex_cd);
  CHECK(std::abs(real_cd.D.max_abs() - complex_cd.D.max_abs()) <= 1e-12);
  CHECK(std::abs(rt.T.max_abs() - ct.T.max_abs()) <= 1e-12);
  const CurvatureTensor rr = symmetrize(chern_curvature(real_cd));
  const CurvatureTensor cr = symmetrize(chern_curvature(complex_cd));
  CHECK(std::abs(rr.R.max_abs() - cr.R.max_abs()) <= 1e-12);
  const ConstantHFit rf = constant_h_fit(rr, 1e-10);
  const ConstantHFit cf = constant_h_fit(cr, 1e-10);
  CHECK(std::abs(rf.c_fit - cf.c_fit) <= 1e-12);
  CHECK(std::abs(rf.residual - cf.residual) <= 1e-12);
  CHECK(rf.is_constant == cf.is_constant);
}

TEST_CASE("reports omit absent sections and serialize deterministically") {
  ReportDocument report;
  report.tool_version = "0.1.0";
  report.input_name = "unit";
  report.validation.overall = true;
  report.validation.checks.push_back({"bracket_antisymmetry", 0.0, true});

  const std::string bare = emit_report(report);
  CHECK(bare.find("\"flags\"") == std::string::npos);
  CHECK(bare.find("\"constant_h\"") == std::string::npos);
  CHECK(bare.find("\"salamon\"") == std::string::npos);
  CHECK(bare.find("\"certificate\"") == std::string::npos);
  CHECK(bare.find("\"search\"") == std::string::npos);
  CHECK(bare == emit_report(report));

  report.constant_h = ConstantHFit{0.5, 0.5, false};
  report.flags = GeometryFlags{true, false, false};
  const std::string full = emit_report(report);
  CHECK(full.find("\"constant_h\"") != std::string::npos);

  const nlohmann::json parsed = nlohmann::json::parse(full);
  CHECK(parsed.at("constant_h").at("residual").get<double>() == 0.5);
  CHECK(parsed.at("flags").at("kahler").get<bool>() == true);
}

TEST_CASE("seventeen significant digits round trip through the serializer") {
  ReportDocument report;
  report.tool_version = "0.1.0";
  report.input_name = "roundtrip";
  report.validation.overall = true;
  const double values[] = {1.0 / 3.0, std::sqrt(2.0), 0.1 + 0.2, 6.02214076e23, 5e-324};
  for (double v : values) {
    report.validation.checks = {{"x", v, true}};
    const nlohmann::json parsed = nlohmann::json::parse(emit_report(report));
    CHECK(parsed.at("validation").at("checks").at(0).at("max_residual").get<double>() == v);
  }
}

TEST_CASE("mode mismatch on conversion") {
  CHECK_THROWS_AS(to_real_algebra(builtin("complex_heisenberg")), StructuralError);
  CHECK_THROWS_AS(to_cd_tensors(builtin("kodaira_thurston")), StructuralError);
}
