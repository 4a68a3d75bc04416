#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lieherm/catalog_io.hpp"
#include "lieherm/chern_geometry.hpp"
#include "lieherm/errors.hpp"
#include "lieherm/lie_structure.hpp"
#include "lieherm/metric_search.hpp"
#include "lieherm/theorem_checker.hpp"
#include "lieherm/version.hpp"

namespace {

constexpr int kExitPositive = 0;   // ran, primary verdict positive
constexpr int kExitNegative = 1;   // ran, mathematical verdict negative
constexpr int kExitStructural = 2; // input or structural error
constexpr int kExitNumerical = 3;  // numerical-domain error

struct Options {
  std::string input_path;
  std::string builtin_name;
  std::string output_path;
  double tol = lieherm::kDefaultTol;
  std::uint64_t seed = 0;
  int restarts = 8;
  int max_iters = 200;
  bool assume_salamon = false;
};

void emit_error(int code, const std::string& kind, const std::string& message) {
  std::string out = "{\"error\":{\"exit_code\":";
  out += std::to_string(code);
  out += ",\"kind\":\"" + kind + "\",\"message\":\"";
  for (const char ch : message) {
    if (ch == '"' || ch == '\\') {
      out += '\\';
      out += ch;
    } else if (ch == '\n') {
      out += "\\n";
    } else {
      out += ch;
    }
  }
  out += "\"}}\n";
  std::fputs(out.c_str(), stderr);
}

lieherm::AlgebraDocument load_document(const Options& opt) {
  const bool has_path = !opt.input_path.empty();
  const bool has_builtin = !opt.builtin_name.empty();
  if (has_path == has_builtin)
    throw lieherm::StructuralError("exactly one input source is required: a document path or --builtin NAME");
  if (has_builtin) return lieherm::builtin(opt.builtin_name);

  std::ifstream in(opt.input_path, std::ios::binary);
  if (!in) throw lieherm::StructuralError("cannot open input file '" + opt.input_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return lieherm::parse_document(buf.str());
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.output_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(opt.output_path, std::ios::binary);
  if (!out) throw lieherm::StructuralError("cannot open output file '" + opt.output_path + "'");
  out << text;
}

struct Loaded {
  lieherm::AlgebraDocument doc;
  std::optional<lieherm::RealLieAlgebra> algebra;
  std::optional<lieherm::CDTensors> cd;  // from the standard frame (real) or the document (complex)
  lieherm::ReportDocument report;
};

Loaded load_and_validate(const Options& opt) {
  Loaded l{load_document(opt), {}, {}, {}};
  l.report.tool_version = lieherm::kToolVersion;
  l.report.input_name = l.doc.name;
  if (l.doc.mode == lieherm::AlgebraDocument::Mode::Real) {
    l.algebra = lieherm::to_real_algebra(l.doc);
    l.report.validation = lieherm::validate_real_algebra(*l.algebra, opt.tol);
  } else {
    l.cd = lieherm::to_cd_tensors(l.doc);
    l.report.validation = lieherm::validate_cd(*l.cd, opt.tol);
  }
  return l;
}

/// Emits the report, then reports a failed validation as a structural error.
int finish_validation_failure(const Options& opt, const Loaded& l) {
  write_output(opt, lieherm::emit_report(l.report));
  std::string failing;
  for (const auto& c : l.report.validation.checks)
    if (!c.passed) {
      failing = c.name;
      break;
    }
  emit_error(kExitStructural, "structural", "validation failed: " + failing);
  return kExitStructural;
}

void analyze_into(const Options& opt, Loaded& l) {
  if (l.algebra) {
    const lieherm::UnitaryFrame frame = lieherm::build_unitary_frame(*l.algebra);
    l.cd = lieherm::extract_structure_constants(*l.algebra, frame);
  }
  l.report.flags = lieherm::classify(*l.cd, opt.tol);
  const lieherm::CurvatureTensor rt = lieherm::symmetrize(lieherm::chern_curvature(*l.cd));
  l.report.constant_h = lieherm::constant_h_fit(rt, opt.tol);
}

int cmd_validate(const Options& opt) {
  Loaded l = load_and_validate(opt);
  if (!l.report.validation.overall) return finish_validation_failure(opt, l);
  write_output(opt, lieherm::emit_report(l.report));
  return kExitPositive;
}

int cmd_analyze(const Options& opt) {
  Loaded l = load_and_validate(opt);
  if (!l.report.validation.overall) return finish_validation_failure(opt, l);
  analyze_into(opt, l);
  write_output(opt, lieherm::emit_report(l.report));
  return l.report.constant_h->is_constant ? kExitPositive : kExitNegative;
}

int cmd_certify(const Options& opt) {
  Loaded l = load_and_validate(opt);
  if (!l.report.validation.overall) return finish_validation_failure(opt, l);
  analyze_into(opt, l);

  lieherm::CDTensors salamon_cd{};
  if (l.algebra) {
    if (!lieherm::nilpotency_class(*l.algebra))
      throw lieherm::StructuralError("certify requires a nilpotent algebra; "
                                     "the lower central series does not terminate");
    const lieherm::UnitaryFrame frame = lieherm::construct_salamon_frame(*l.algebra);
    salamon_cd = lieherm::extract_structure_constants(*l.algebra, frame);
  } else {
    if (!opt.assume_salamon)
      throw lieherm::StructuralError("certify on a complex-mode document requires --assume-salamon");
    salamon_cd = *l.cd;
  }

  l.report.salamon = lieherm::verify_salamon_frame(salamon_cd, opt.tol);
  if (!l.report.salamon->satisfied) {
    write_output(opt, lieherm::emit_report(l.report));
    emit_error(kExitStructural, "structural",
               "structure constants are not in Salamon form; certify cannot proceed");
    return kExitStructural;
  }

  l.report.certificate = lieherm::certify_flatness(salamon_cd, opt.tol);
  write_output(opt, lieherm::emit_report(l.report));
  return l.report.certificate->conclusion == lieherm::FlatnessConclusion::FlatComplexGroup
             ? kExitPositive
             : kExitNegative;
}

int cmd_search(const Options& opt) {
  Loaded l = load_and_validate(opt);
  if (!l.report.validation.overall) return finish_validation_failure(opt, l);
  if (!l.algebra)
    throw lieherm::StructuralError("search varies the metric and requires a real-mode document");
  analyze_into(opt, l);

  lieherm::SearchConfig config;
  config.seed = opt.seed;
  config.restarts = opt.restarts;
  config.max_iters = opt.max_iters;
  config.tol = opt.tol;
  l.report.search = lieherm::search(*l.algebra, config);
  write_output(opt, lieherm::emit_report(l.report));
  return l.report.search->converged ? kExitPositive : kExitNegative;
}

int cmd_catalog(const Options& opt) {
  std::string out = "{\"builtins\":[";
  bool first = true;
  for (const auto& name : lieherm::builtin_names()) {
    if (!first) out += ',';
    first = false;
    out += '"' + name + '"';
  }
  out += "]}\n";
  write_output(opt, out);
  return kExitPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern-connection geometry of left-invariant Hermitian structures"};
  app.require_subcommand(1);

  Options opt;
  auto add_input_flags = [&opt](CLI::App* sub) {
    sub->add_option("input", opt.input_path, "path to a .lha.json document");
    sub->add_option("--builtin", opt.builtin_name, "use a built-in catalog entry");
    sub->add_option("--tol", opt.tol, "tolerance for validation and verdicts");
    sub->add_option("--output", opt.output_path, "write the report to a file instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "check the structural invariants of a document");
  add_input_flags(validate);
  CLI::App* analyze =
      app.add_subcommand("analyze", "validation plus torsion/curvature flags and the constant-H fit");
  add_input_flags(analyze);
  CLI::App* certify =
      app.add_subcommand("certify", "analyze plus Salamon frame verification and the flatness certificate");
  add_input_flags(certify);
  certify->add_flag("--assume-salamon", opt.assume_salamon,
                    "treat complex-mode structure constants as already being in Salamon form");
  CLI::App* search = app.add_subcommand("search", "analyze plus a multi-start metric search");
  add_input_flags(search);
  search->add_option("--seed", opt.seed, "random seed for the restarts");
  search->add_option("--restarts", opt.restarts, "number of descent restarts");
  search->add_option("--max-iters", opt.max_iters, "iteration cap per restart");
  CLI::App* catalog = app.add_subcommand("catalog", "list the built-in documents");
  catalog->add_option("--output", opt.output_path, "write the listing to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(kExitStructural, "usage", e.what());
    return kExitStructural;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (analyze->parsed()) return cmd_analyze(opt);
    if (certify->parsed()) return cmd_certify(opt);
    if (search->parsed()) return cmd_search(opt);
    if (catalog->parsed()) return cmd_catalog(opt);
    emit_error(kExitStructural, "usage", "no subcommand given");
    return kExitStructural;
  } catch (const lieherm::StructuralError& e) {
    emit_error(kExitStructural, "structural", e.what());
    return kExitStructural;
  } catch (const lieherm::NumericalError& e) {
    emit_error(kExitNumerical, "numerical", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    emit_error(kExitNumerical, "internal", e.what());
    return kExitNumerical;
  }
}
