#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lieherm/chern_geometry.hpp"
#include "lieherm/lie_structure.hpp"
#include "lieherm/metric_search.hpp"
#include "lieherm/theorem_checker.hpp"

namespace lieherm {

/// One sparse bracket coefficient [x_a, x_b] ∋ value * x_c. Indices 1-based,
/// stored one-sided with a < b.
struct BracketEntry {
  int a = 0, b = 0, c = 0;
  double value = 0.0;
  friend bool operator==(const BracketEntry&, const BracketEntry&) = default;
};

/// One sparse structure-constant entry with 1-based indices (j upper, i, k lower).
struct CDEntry {
  int j = 0, i = 0, k = 0;
  double re = 0.0, im = 0.0;
  friend bool operator==(const CDEntry&, const CDEntry&) = default;
};

/// In-memory model of a `.lha.json` document. Indices are 1-based as in files;
/// the conversion helpers below are the only 1-based/0-based boundary.
struct AlgebraDocument {
  enum class Mode { Real, Complex };

  Mode mode = Mode::Real;
  std::string name;

  // real mode
  int dim_real = 0;
  std::vector<BracketEntry> brackets;  // canonical: a < b, sorted by (a,b,c)
  std::vector<std::vector<double>> J;  // row-major
  std::vector<std::vector<double>> g;  // row-major

  // complex mode
  int n = 0;
  std::vector<CDEntry> C;  // canonical: i < k, sorted by (j,i,k)
  std::vector<CDEntry> D;  // sorted by (j,i,k)

  friend bool operator==(const AlgebraDocument&, const AlgebraDocument&) = default;
};

/// Parses and validates a document. Duplicate sparse entries, out-of-range
/// indices, odd dimensions, unknown modes and unknown top-level keys are
/// structural errors.
AlgebraDocument parse_document(std::string_view text);

/// Deterministic serialization: sorted keys, 17-significant-digit floats,
/// newline-terminated. parse_document(emit_document(d)) == d.
std::string emit_document(const AlgebraDocument& doc);

/// Built-in catalog: abelian_<k> (parametric), complex_heisenberg,
/// iwasawa_real6, kodaira_thurston.
AlgebraDocument builtin(const std::string& name);
std::vector<std::string> builtin_names();

RealLieAlgebra to_real_algebra(const AlgebraDocument& doc);
CDTensors to_cd_tensors(const AlgebraDocument& doc);

/// Pipeline report. Optional sections are emitted only when the corresponding
/// stage ran.
struct ReportDocument {
  std::string tool_version;
  std::string input_name;
  ValidationReport validation;
  std::optional<GeometryFlags> flags;
  std::optional<ConstantHFit> constant_h;
  std::optional<SalamonReport> salamon;
  std::optional<FlatnessCertificate> certificate;
  std::optional<SearchResult> search;
};

/// Deterministic report serialization with the same formatting contract as
/// emit_document; byte-identical across runs for identical reports.
std::string emit_report(const ReportDocument& report);

}  // namespace lieherm
