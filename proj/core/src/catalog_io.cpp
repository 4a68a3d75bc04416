#include "lieherm/catalog_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "lieherm/errors.hpp"

namespace lieherm {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// deterministic writer: sorted keys (json objects are std::map), compact,
// floats with 17 significant digits, locale independent
// ---------------------------------------------------------------------------

void write_string(const std::string& s, std::string& out) {
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void write_double(double d, std::string& out) {
  if (!std::isfinite(d)) throw NumericalError("cannot serialize a non-finite number");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

void write_value(const json& v, std::string& out) {
  switch (v.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.cbegin(); it != v.cend(); ++it) {
        if (!first) out += ',';
        first = false;
        write_string(it.key(), out);
        out += ':';
        write_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        write_value(item, out);
      }
      out += ']';
      break;
    }
    case json::value_t::string:
      write_string(v.get_ref<const std::string&>(), out);
      break;
    case json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case json::value_t::number_float:
      write_double(v.get<double>(), out);
      break;
    case json::value_t::null:
      out += "null";
      break;
    default:
      throw StructuralError("unsupported JSON value type");
  }
}

std::string serialize(const json& v) {
  std::string out;
  write_value(v, out);
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// document parsing
// ---------------------------------------------------------------------------

void require_keys(const json& doc, const std::set<std::string>& allowed) {
  for (const auto& item : doc.items())
    if (!allowed.contains(item.key()))
      throw StructuralError("unknown top-level key '" + item.key() + "'");
  for (const auto& key : allowed)
    if (!doc.contains(key)) throw StructuralError("missing required key '" + key + "'");
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw StructuralError(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw StructuralError(where + " must be finite");
  return d;
}

int integer_at(const json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw StructuralError(where + " must be an integer");
  return v.get<int>();
}

std::vector<std::vector<double>> matrix_at(const json& v, int size, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != size)
    throw StructuralError(where + " must be a " + std::to_string(size) + "-row matrix");
  std::vector<std::vector<double>> rows;
  rows.reserve(size);
  for (const auto& row : v) {
    if (!row.is_array() || static_cast<int>(row.size()) != size)
      throw StructuralError(where + " rows must have " + std::to_string(size) + " entries");
    std::vector<double> r;
    r.reserve(size);
    for (const auto& x : row) r.push_back(number_at(x, where + " entry"));
    rows.push_back(std::move(r));
  }
  return rows;
}

void parse_real_mode(const json& doc, AlgebraDocument& out) {
  require_keys(doc, {"schema", "mode", "name", "dim_real", "brackets", "J", "g"});
  out.dim_real = integer_at(doc.at("dim_real"), "dim_real");
  if (out.dim_real <= 0 || out.dim_real % 2 != 0)
    throw StructuralError("dim_real must be a positive even integer");

  const json& brackets = doc.at("brackets");
  if (!brackets.is_array()) throw StructuralError("brackets must be an array");
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& entry : brackets) {
    if (!entry.is_array() || entry.size() != 4)
      throw StructuralError("bracket entries must be [a, b, c, value]");
    int a = integer_at(entry[0], "bracket index a");
    int b = integer_at(entry[1], "bracket index b");
    const int c = integer_at(entry[2], "bracket index c");
    double value = number_at(entry[3], "bracket value");
    if (a < 1 || a > out.dim_real || b < 1 || b > out.dim_real || c < 1 || c > out.dim_real)
      throw StructuralError("bracket index out of range in (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
    if (a == b) throw StructuralError("bracket entry with equal indices (" + std::to_string(a) +
                                      "," + std::to_string(b) + ")");
    if (a > b) {
      std::swap(a, b);
      value = -value;
    }
    if (!seen.insert({a, b, c}).second)
      throw StructuralError("duplicate bracket entry (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
    out.brackets.push_back({a, b, c, value});
  }
  std::sort(out.brackets.begin(), out.brackets.end(), [](const auto& x, const auto& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  });

  out.J = matrix_at(doc.at("J"), out.dim_real, "J");
  out.g = matrix_at(doc.at("g"), out.dim_real, "g");
}

std::vector<CDEntry> parse_cd_entries(const json& v, int n, bool antisymmetric,
                                      const std::string& which) {
  if (!v.is_array()) throw StructuralError(which + " must be an array");
  std::set<std::tuple<int, int, int>> seen;
  std::vector<CDEntry> entries;
  for (const auto& entry : v) {
    if (!entry.is_array() || entry.size() != 5)
      throw StructuralError(which + " entries must be [j, i, k, re, im]");
    const int j = integer_at(entry[0], which + " index j");
    int i = integer_at(entry[1], which + " index i");
    int k = integer_at(entry[2], which + " index k");
    double re = number_at(entry[3], which + " value");
    double im = number_at(entry[4], which + " value");
    if (j < 1 || j > n || i < 1 || i > n || k < 1 || k > n)
      throw StructuralError(which + " index out of range in (" + std::to_string(j) + "," +
                            std::to_string(i) + "," + std::to_string(k) + ")");
    if (antisymmetric) {
      if (i == k)
        throw StructuralError(which + " entry (" + std::to_string(j) + "," + std::to_string(i) +
                              "," + std::to_string(k) + ") must vanish by antisymmetry");
      if (i > k) {
        std::swap(i, k);
        re = -re;
        im = -im;
      }
    }
    if (!seen.insert({j, i, k}).second)
      throw StructuralError("duplicate " + which + " entry (" + std::to_string(j) + "," +
                            std::to_string(i) + "," + std::to_string(k) + ")");
    entries.push_back({j, i, k, re, im});
  }
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return std::tie(x.j, x.i, x.k) < std::tie(y.j, y.i, y.k);
  });
  return entries;
}

void parse_complex_mode(const json& doc, AlgebraDocument& out) {
  require_keys(doc, {"schema", "mode", "name", "n", "C", "D"});
  out.n = integer_at(doc.at("n"), "n");
  if (out.n < 1) throw StructuralError("n must be a positive integer");
  out.C = parse_cd_entries(doc.at("C"), out.n, true, "C");
  out.D = parse_cd_entries(doc.at("D"), out.n, false, "D");
}

json document_to_json(const AlgebraDocument& doc) {
  json j;
  j["schema"] = 1;
  j["name"] = doc.name;
  if (doc.mode == AlgebraDocument::Mode::Real) {
    j["mode"] = "real";
    j["dim_real"] = doc.dim_real;
    json brackets = json::array();
    for (const auto& b : doc.brackets) brackets.push_back({b.a, b.b, b.c, b.value});
    j["brackets"] = std::move(brackets);
    j["J"] = doc.J;
    j["g"] = doc.g;
  } else {
    j["mode"] = "complex";
    j["n"] = doc.n;
    json c = json::array();
    for (const auto& e : doc.C) c.push_back({e.j, e.i, e.k, e.re, e.im});
    j["C"] = std::move(c);
    json d = json::array();
    for (const auto& e : doc.D) d.push_back({e.j, e.i, e.k, e.re, e.im});
    j["D"] = std::move(d);
  }
  return j;
}

// ---------------------------------------------------------------------------
// builtin catalog
// ---------------------------------------------------------------------------

std::vector<std::vector<double>> block_rotation(int dim) {
  std::vector<std::vector<double>> J(dim, std::vector<double>(dim, 0.0));
  for (int p = 0; 2 * p + 1 < dim; ++p) {
    J[2 * p + 1][2 * p] = 1.0;
    J[2 * p][2 * p + 1] = -1.0;
  }
  return J;
}

std::vector<std::vector<double>> scaled_identity(int dim, double s) {
  std::vector<std::vector<double>> g(dim, std::vector<double>(dim, 0.0));
  for (int i = 0; i < dim; ++i) g[i][i] = s;
  return g;
}

AlgebraDocument make_abelian(int k, const std::string& name) {
  AlgebraDocument doc;
  doc.mode = AlgebraDocument::Mode::Real;
  doc.name = name;
  doc.dim_real = 2 * k;
  doc.J = block_rotation(doc.dim_real);
  doc.g = scaled_identity(doc.dim_real, 1.0);
  return doc;
}

AlgebraDocument make_kodaira_thurston() {
  AlgebraDocument doc;
  doc.mode = AlgebraDocument::Mode::Real;
  doc.name = "kodaira_thurston";
  doc.dim_real = 4;
  doc.brackets = {{1, 2, 3, 1.0}};
  doc.J = block_rotation(4);
  doc.g = scaled_identity(4, 1.0);
  return doc;
}

// Real presentation of the complex Heisenberg group: basis z1, iz1, z2, iz2,
// z3, iz3 with [z1, z2] = z3 extended complex-bilinearly. The metric 2*I makes
// the natural unitary frame reproduce a single unit structure constant.
AlgebraDocument make_iwasawa_real6() {
  AlgebraDocument doc;
  doc.mode = AlgebraDocument::Mode::Real;
  doc.name = "iwasawa_real6";
  doc.dim_real = 6;
  doc.brackets = {{1, 3, 5, 1.0}, {1, 4, 6, 1.0}, {2, 3, 6, 1.0}, {2, 4, 5, -1.0}};
  doc.J = block_rotation(6);
  doc.g = scaled_identity(6, 2.0);
  return doc;
}

AlgebraDocument make_complex_heisenberg() {
  AlgebraDocument doc;
  doc.mode = AlgebraDocument::Mode::Complex;
  doc.name = "complex_heisenberg";
  doc.n = 3;
  doc.C = {{3, 1, 2, 1.0, 0.0}};
  return doc;
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

json validation_to_json(const ValidationReport& v) {
  json checks = json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"name", c.name}, {"max_residual", c.max_residual}, {"passed", c.passed}});
  return json{{"checks", std::move(checks)}, {"overall", v.overall}};
}

json flags_to_json(const GeometryFlags& f) {
  return json{{"kahler", f.kahler}, {"chern_flat", f.chern_flat}, {"complex_group", f.complex_group}};
}

json constant_h_to_json(const ConstantHFit& f) {
  return json{{"c_fit", f.c_fit}, {"residual", f.residual}, {"is_constant", f.is_constant}};
}

const char* condition_name(SalamonCondition c) {
  switch (c) {
    case SalamonCondition::CFiltration: return "c_filtration";
    case SalamonCondition::DFiltration: return "d_filtration";
    case SalamonCondition::DTopRow: return "d_top_row";
  }
  return "unknown";
}

json salamon_to_json(const SalamonReport& s) {
  json violations = json::array();
  for (const auto& v : s.violations)
    violations.push_back({{"condition", condition_name(v.condition)},
                          {"tensor", v.in_c ? "C" : "D"},
                          {"j", v.j + 1},
                          {"i", v.i + 1},
                          {"k", v.k + 1},
                          {"value_re", v.value.real()},
                          {"value_im", v.value.imag()}});
  return json{{"satisfied", s.satisfied}, {"violations", std::move(violations)}};
}

const char* conclusion_name(FlatnessConclusion c) {
  switch (c) {
    case FlatnessConclusion::FlatComplexGroup: return "flat_complex_group";
    case FlatnessConclusion::RefutedConstantH: return "refuted_constant_h";
    case FlatnessConclusion::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

json certificate_to_json(const FlatnessCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"claim_id", s.claim_id},
                     {"description", s.description},
                     {"max_residual", s.max_residual},
                     {"passed", s.passed}});
  return json{{"steps", std::move(steps)},
              {"c_value", c.c_value},
              {"conclusion", conclusion_name(c.conclusion)}};
}

json search_to_json(const SearchResult& s) {
  json lmat = json::array();
  for (int i = 0; i < s.best_params.n; ++i) {
    json row = json::array();
    for (int j = 0; j < s.best_params.n; ++j)
      row.push_back({s.best_params.L(i, j).real(), s.best_params.L(i, j).imag()});
    lmat.push_back(std::move(row));
  }
  json trace = json::array();
  for (const auto& t : s.trace) trace.push_back({t.iter, t.residual});
  return json{{"best_params", json{{"n", s.best_params.n}, {"L", std::move(lmat)}}},
              {"best_residual", s.best_residual},
              {"best_c", s.best_c},
              {"trace", std::move(trace)},
              {"converged", s.converged}};
}

}  // namespace

AlgebraDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw StructuralError("document must be a JSON object");
  if (!doc.contains("schema") || !doc.at("schema").is_number_integer() ||
      doc.at("schema").get<int>() != 1)
    throw StructuralError("document must declare \"schema\": 1");
  if (!doc.contains("mode") || !doc.at("mode").is_string())
    throw StructuralError("document must declare a mode");
  if (!doc.contains("name") || !doc.at("name").is_string())
    throw StructuralError("document must declare a name");

  AlgebraDocument out;
  out.name = doc.at("name").get<std::string>();
  const std::string mode = doc.at("mode").get<std::string>();
  if (mode == "real") {
    out.mode = AlgebraDocument::Mode::Real;
    parse_real_mode(doc, out);
  } else if (mode == "complex") {
    out.mode = AlgebraDocument::Mode::Complex;
    parse_complex_mode(doc, out);
  } else {
    throw StructuralError("unknown mode '" + mode + "' (expected \"real\" or \"complex\")");
  }
  return out;
}

std::string emit_document(const AlgebraDocument& doc) {
  return serialize(document_to_json(doc));
}

AlgebraDocument builtin(const std::string& name) {
  if (name.starts_with("abelian_")) {
    const std::string suffix = name.substr(8);
    int k = 0;
    const auto res = std::from_chars(suffix.data(), suffix.data() + suffix.size(), k);
    if (res.ec == std::errc{} && res.ptr == suffix.data() + suffix.size() && k >= 1 && k <= 64)
      return make_abelian(k, name);
  }
  if (name == "kodaira_thurston") return make_kodaira_thurston();
  if (name == "iwasawa_real6") return make_iwasawa_real6();
  if (name == "complex_heisenberg") return make_complex_heisenberg();
  std::string msg = "unknown builtin '" + name + "'; available:";
  for (const auto& b : builtin_names()) msg += " " + b;
  throw StructuralError(msg);
}

std::vector<std::string> builtin_names() {
  return {"abelian_<k>", "complex_heisenberg", "iwasawa_real6", "kodaira_thurston"};
}

RealLieAlgebra to_real_algebra(const AlgebraDocument& doc) {
  if (doc.mode != AlgebraDocument::Mode::Real)
    throw StructuralError("document is not in real mode");
  RealLieAlgebra spec;
  spec.dim_real = doc.dim_real;
  spec.f = RTensor3(doc.dim_real);
  for (const auto& b : doc.brackets) {
    spec.f(b.a - 1, b.b - 1, b.c - 1) = b.value;
    spec.f(b.b - 1, b.a - 1, b.c - 1) = -b.value;
  }
  spec.J.resize(doc.dim_real, doc.dim_real);
  spec.g.resize(doc.dim_real, doc.dim_real);
  for (int r = 0; r < doc.dim_real; ++r)
    for (int c = 0; c < doc.dim_real; ++c) {
      spec.J(r, c) = doc.J[r][c];
      spec.g(r, c) = doc.g[r][c];
    }
  return spec;
}

CDTensors to_cd_tensors(const AlgebraDocument& doc) {
  if (doc.mode != AlgebraDocument::Mode::Complex)
    throw StructuralError("document is not in complex mode");
  CDTensors cd{doc.n, CTensor3(doc.n), CTensor3(doc.n)};
  for (const auto& e : doc.C) {
    cd.C(e.j - 1, e.i - 1, e.k - 1) = Complex{e.re, e.im};
    cd.C(e.j - 1, e.k - 1, e.i - 1) = Complex{-e.re, -e.im};
  }
  for (const auto& e : doc.D) cd.D(e.j - 1, e.i - 1, e.k - 1) = Complex{e.re, e.im};
  return cd;
}

std::string emit_report(const ReportDocument& report) {
  json j;
  j["schema"] = 1;
  j["tool_version"] = report.tool_version;
  j["input_name"] = report.input_name;
  j["validation"] = validation_to_json(report.validation);
  if (report.flags) j["flags"] = flags_to_json(*report.flags);
  if (report.constant_h) j["constant_h"] = constant_h_to_json(*report.constant_h);
  if (report.salamon) j["salamon"] = salamon_to_json(*report.salamon);
  if (report.certificate) j["certificate"] = certificate_to_json(*report.certificate);
  if (report.search) j["search"] = search_to_json(*report.search);
  return serialize(j);
}

}  // namespace lieherm
