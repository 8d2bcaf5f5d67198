#include "gottlieb/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "gottlieb/derivation.hpp"
#include "gottlieb/dsl.hpp"
#include "gottlieb/fibration.hpp"
#include "gottlieb/random_model.hpp"
#include "gottlieb/report.hpp"

namespace gottlieb {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::string path;
  std::string digest;
  ModelDocument doc;
};

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::optional<ModelDocument> doc;
  try {
    doc.emplace(parse_document(text));
  } catch (const Error& e) {
    throw InputError(path + ":" + e.what());
  }
  return {path, sha256_hex(text), std::move(*doc)};
}

const DgAlgebra& require_algebra(const Loaded& input) {
  if (input.doc.is_fibration()) throw InputError(input.path + ": expected an algebra file");
  return std::get<DgAlgebra>(input.doc.payload);
}

const KsModel& require_fibration(const Loaded& input) {
  if (!input.doc.is_fibration()) throw InputError(input.path + ": expected a fibration file");
  return std::get<KsModel>(input.doc.payload);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::string format_derivation(const PhiDerivation& theta) {
  std::vector<std::string> parts;
  const auto& source = theta.source();
  for (GenIndex g = 0; g < source.size(); ++g) {
    if (!theta.value(g).is_zero()) {
      parts.push_back(source.generator(g).name + " -> " +
                      format_element(theta.target(), theta.value(g)));
    }
  }
  return parts.empty() ? "0" : join(parts, ", ");
}

std::string format_matrix(const RatMatrix& m) {
  std::vector<std::string> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> entries;
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(m(r, c).get_str());
    rows.push_back(join(entries, " "));
  }
  return "[" + join(rows, "; ") + "]";
}

std::vector<int> degree_range(int first, int last) {
  std::vector<int> out;
  for (int n = first; n <= last; ++n) out.push_back(n);
  return out;
}

struct Options {
  std::string file;
  int max_degree = 8;
  int degree = 1;
  std::size_t models = 100;
  std::uint64_t seed = 1;
  bool json = false;
};

void emit(std::ostream& out, const ReportDocument& report) { out << dump(report); }

int cmd_check(const Options& opt, std::ostream& out) {
  const auto input = load(opt.file);
  ReportDocument report{"check", input.digest, {}, Json::array()};
  Json entry;
  if (const auto* model = std::get_if<KsModel>(&input.doc.payload)) {
    const auto v = validate_ks(*model);
    entry["model"] = model->name();
    entry["kind"] = "fibration";
    entry["base_generators"] = model->base().size();
    entry["fibre_generators"] = model->fibre().size();
    entry["base_minimal"] = v.base_minimal;
    entry["fibre_minimal"] = v.fibre_minimal;
    entry["total_minimal"] = v.total_minimal;
    entry["total_linear_term"] = v.total_linear_term ? Json(*v.total_linear_term) : Json(nullptr);
    if (!opt.json) {
      out << "fibration " << model->name() << ": valid KS model (" << model->base().size()
          << " base, " << model->fibre().size() << " fibre generators)\n";
      out << "  base " << (v.base_minimal ? "minimal" : "not minimal") << ", fibre "
          << (v.fibre_minimal ? "minimal" : "not minimal") << ", total "
          << (v.total_minimal ? "minimal" : "not minimal") << "\n";
      if (v.total_linear_term) out << "  linear term: " << *v.total_linear_term << "\n";
    }
  } else {
    const auto& algebra = std::get<DgAlgebra>(input.doc.payload);
    entry["model"] = algebra.name();
    entry["kind"] = "algebra";
    entry["generators"] = algebra.size();
    entry["minimal"] = algebra.is_minimal();
    if (!opt.json) {
      out << "algebra " << algebra.name() << ": valid (" << algebra.size() << " generators, "
          << (algebra.is_minimal() ? "minimal" : "not minimal") << ")\n";
    }
  }
  report.results.push_back(std::move(entry));
  if (opt.json) emit(out, report);
  return kExitOk;
}

int cmd_gottlieb(const Options& opt, std::ostream& out) {
  const auto input = load(opt.file);
  const auto algebra = std::make_shared<const DgAlgebra>(require_algebra(input));
  ReportDocument report{"gottlieb", input.digest, degree_range(2, opt.max_degree),
                        Json::array()};
  Json groups = Json::array();
  std::vector<std::string> summary;
  std::ostringstream details;
  for (int n = 2; n <= opt.max_degree; ++n) {
    const auto g = gottlieb_group(algebra, n);
    Json entry;
    entry["degree"] = n;
    entry["dim"] = g.dim();
    Json names = Json::array();
    for (auto gen : g.generators) names.push_back(algebra->generator(gen).name);
    entry["generators"] = std::move(names);
    entry["basis"] = functionals_json(*algebra, g);
    groups.push_back(std::move(entry));
    summary.push_back("G_" + std::to_string(n) + " = " + std::to_string(g.dim()));
    for (const auto& f : g.functionals.basis()) {
      details << "  G_" << n << " basis: " << format_functional(*algebra, g.generators, f)
              << "\n";
    }
  }
  Json entry;
  entry["model"] = algebra->name();
  entry["groups"] = std::move(groups);
  report.results.push_back(std::move(entry));
  if (opt.json) {
    emit(out, report);
  } else {
    out << "algebra " << algebra->name() << "\n" << details.str() << join(summary, ", ") << "\n";
  }
  return kExitOk;
}

int cmd_der_homology(const Options& opt, std::ostream& out) {
  const auto input = load(opt.file);
  const auto algebra = std::make_shared<const DgAlgebra>(require_algebra(input));
  const DerivationComplex complex(
      std::make_shared<const AlgebraMorphism>(AlgebraMorphism::identity(algebra)));
  const auto h = complex.homology(opt.degree);
  ReportDocument report{"der-homology", input.digest, {opt.degree}, Json::array()};
  Json reps = Json::array();
  for (const auto& r : h.representatives) reps.push_back(derivation_json(r));
  Json entry;
  entry["model"] = algebra->name();
  entry["degree"] = opt.degree;
  entry["slice_dim"] = complex.slice(opt.degree).size();
  entry["cycles_dim"] = h.cycles.dim();
  entry["boundaries_dim"] = h.boundaries.dim();
  entry["dim"] = h.dim();
  entry["representatives"] = std::move(reps);
  report.results.push_back(std::move(entry));
  if (opt.json) {
    emit(out, report);
  } else {
    out << "algebra " << algebra->name() << "\n";
    out << "H_" << opt.degree << "(Der) = " << h.dim() << "  (cycles " << h.cycles.dim()
        << ", boundaries " << h.boundaries.dim() << ")\n";
    for (std::size_t i = 0; i < h.dim(); ++i) {
      out << "  [" << i + 1 << "] " << format_derivation(h.representatives[i]) << "\n";
    }
  }
  return kExitOk;
}

int cmd_classify(const Options& opt, std::ostream& out) {
  const auto input = load(opt.file);
  const auto& model = require_fibration(input);
  const auto classes = classify(model);
  std::set<int> degrees;
  for (const auto& c : classes.classes) degrees.insert(c.base_degree);
  ReportDocument report{"classify", input.digest, {degrees.begin(), degrees.end()},
                        Json::array()};
  Json list = Json::array();
  for (const auto& c : classes.classes) list.push_back(theta_class_json(model, c));
  Json entry;
  entry["model"] = model.name();
  entry["classes"] = std::move(list);
  entry["nontrivial_degrees"] = classes.nontrivial_degrees;
  entry["trivial"] = classes.trivial();
  report.results.push_back(std::move(entry));
  if (opt.json) {
    emit(out, report);
    return kExitOk;
  }
  out << "fibration " << model.name() << "\n";
  for (const auto& c : classes.classes) {
    out << "theta_" << model.base().generator(c.base_generator).name << " (degree "
        << c.base_degree - 1 << "): ";
    if (c.is_boundary) {
      out << "boundary of {" << format_derivation(*c.witness) << "}\n";
    } else {
      std::vector<std::string> coords;
      for (const auto& q : c.class_coordinates) coords.push_back(q.get_str());
      out << "not a boundary, class [" << join(coords, " ") << "]\n";
    }
  }
  if (classes.trivial()) {
    out << "classifying map: rationally trivial\n";
  } else {
    std::vector<std::string> ds;
    for (int n : classes.nontrivial_degrees) ds.push_back(std::to_string(n));
    out << "classifying map: rationally nonzero in degree " << join(ds, ", ") << "\n";
  }
  return kExitOk;
}

int cmd_sequence(const Options& opt, std::ostream& out) {
  const auto input = load(opt.file);
  const auto& model = require_fibration(input);
  const auto rows = gottlieb_sequences(model, 2, opt.max_degree);
  const auto verdict = is_rationally_gottlieb_trivial(model, opt.max_degree);
  const auto& witness = verdict.witness_degree;
  std::vector<std::string> failing_degrees;
  for (const auto& r : rows) {
    if (!r.exact()) failing_degrees.push_back(std::to_string(r.degree));
  }
  ReportDocument report{"sequence", input.digest, degree_range(2, opt.max_degree),
                        Json::array()};
  Json seq = Json::array();
  Json gh = Json::object();
  for (const auto& r : rows) {
    seq.push_back(sequence_json(model, r));
    gh[std::to_string(r.degree)] = r.gottlieb_homology_dim;
  }
  Json entry;
  entry["model"] = model.name();
  entry["sequence"] = std::move(seq);
  entry["gottlieb_homology"] = std::move(gh);
  entry["verdict_degrees"] = verdict.degrees_checked;
  entry["rationally_gottlieb_trivial"] = verdict.trivial;
  entry["witness_degree"] = witness ? Json(*witness) : Json(nullptr);
  report.results.push_back(std::move(entry));
  if (opt.json) {
    emit(out, report);
    return kExitOk;
  }
  out << "fibration " << model.name() << "\n";
  for (const auto& r : rows) {
    const auto n = std::to_string(r.degree);
    out << "n = " << n << ":  0 -> G_" << n << "(X) [" << r.fibre_gottlieb_dim << "] -> G_" << n
        << "(E,X;J) [" << r.evaluation_dim << "] -> Hom_" << n << "(W,Q) [" << r.base_dual_dim
        << "] -> 0   ";
    if (r.exact()) {
      out << "EXACT";
    } else {
      std::vector<std::string> failing;
      if (!r.exact_left) failing.push_back("left");
      if (!r.exact_middle) failing.push_back("middle");
      if (!r.exact_right) failing.push_back("right");
      out << "NOT-EXACT (" << join(failing, ", ") << ")";
    }
    out << "   GH_" << n << " = " << r.gottlieb_homology_dim << "\n";
  }
  if (!failing_degrees.empty()) out << "not exact in degree " << join(failing_degrees, ", ") << "\n";
  if (witness) {
    out << "verdict: not rationally Gottlieb trivial, witness degree " << *witness << "\n";
  } else {
    out << "verdict: rationally Gottlieb trivial through degree " << opt.max_degree << "\n";
  }
  return kExitOk;
}

int cmd_holonomy(const Options& opt, std::ostream& out) {
  const auto input = load(opt.file);
  const auto& model = require_fibration(input);
  ReportDocument report{"holonomy", input.digest, degree_range(0, opt.max_degree),
                        Json::array()};
  Json maps = Json::array();
  std::ostringstream human;
  human << "fibration " << model.name() << "\n";
  for (GenIndex w = 0; w < model.base().size(); ++w) {
    const auto h = holonomy_representation(model, w, opt.max_degree);
    maps.push_back(holonomy_json(model, h));
    human << "theta_" << model.base().generator(w).name << " (degree " << h.derivation_degree
          << ")\n";
    if (h.blocks.empty()) human << "  no degree pair with nonzero source and target\n";
    for (const auto& b : h.blocks) {
      human << "  H^" << b.source_degree << " -> H^" << b.target_degree << ": "
            << format_matrix(b.matrix) << "\n";
    }
  }
  Json entry;
  entry["model"] = model.name();
  entry["maps"] = std::move(maps);
  report.results.push_back(std::move(entry));
  if (opt.json) {
    emit(out, report);
  } else {
    out << human.str();
  }
  return kExitOk;
}

int cmd_fuzz(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto corpus = random_corpus(opt.seed, opt.models);
  ReportDocument report{
      "fuzz",
      sha256_hex("models=" + std::to_string(opt.models) + " seed=" + std::to_string(opt.seed)),
      {},
      Json::array()};
  std::set<int> all_degrees;
  std::size_t agree = 0;
  std::size_t trivial = 0;
  for (const auto& model : corpus) {
    Json entry;
    entry["model"] = model.name();
    entry["model_text"] = render_ks(model);
    try {
      const auto r = tri_equivalence_check(model, model.max_generator_degree());
      all_degrees.insert(r.degrees_checked.begin(), r.degrees_checked.end());
      entry["classifying_map_trivial"] = r.classifying_map_trivial;
      entry["gottlieb_trivial"] = r.gottlieb_trivial;
      entry["surjective"] = r.surjective;
      entry["agree"] = r.agree();
      if (r.agree()) {
        ++agree;
        if (r.gottlieb_trivial) ++trivial;
      } else {
        entry["counterexample"] = r.counterexample;
        err << "disagreement: " << r.counterexample << "\n" << render_ks(model);
      }
    } catch (const Error& e) {
      entry["agree"] = false;
      entry["error"] = e.what();
      err << "error on " << model.name() << ": " << e.what() << "\n" << render_ks(model);
    }
    report.results.push_back(std::move(entry));
  }
  report.degrees_checked.assign(all_degrees.begin(), all_degrees.end());
  if (opt.json) {
    emit(out, report);
  } else {
    out << "tri-equivalence: " << agree << "/" << corpus.size() << " models agree (" << trivial
        << " trivial, " << agree - trivial << " nontrivial), seed " << opt.seed << "\n";
  }
  return agree == corpus.size() ? kExitOk : kExitInternal;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InternalInvariant:
    case ErrorKind::NotASubspace:
    case ErrorKind::NotACycle:
      return kExitInternal;
    default:
      return kExitInvalidInput;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational Gottlieb groups and Gottlieb sequences of Koszul-Sullivan models",
               "gottlieb"};
  app.require_subcommand(1);
  Options opt;

  auto add_file = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("file", opt.file, what)->required();
    sub->add_flag("--json", opt.json, "Emit a JSON report");
  };
  auto* check = app.add_subcommand("check", "Validate an algebra or fibration file");
  add_file(check, "Model file");
  auto* gottlieb = app.add_subcommand("gottlieb", "Rational Gottlieb groups G_n, n = 2..N");
  add_file(gottlieb, "Algebra file");
  gottlieb->add_option("--max-degree", opt.max_degree)->required()->check(CLI::Range(2, 200));
  auto* der = app.add_subcommand("der-homology", "Homology of the derivation complex");
  add_file(der, "Algebra file");
  der->add_option("--degree", opt.degree)->required()->check(CLI::Range(1, 200));
  auto* cls = app.add_subcommand("classify", "Homology classes of the twisting derivations");
  add_file(cls, "Fibration file");
  auto* seq = app.add_subcommand("sequence", "Gottlieb sequence in degrees 2..N");
  add_file(seq, "Fibration file");
  seq->add_option("--max-degree", opt.max_degree)->required()->check(CLI::Range(2, 200));
  auto* hol = app.add_subcommand("holonomy", "Induced action on fibre cohomology");
  add_file(hol, "Fibration file");
  hol->add_option("--max-degree", opt.max_degree)->required()->check(CLI::Range(0, 200));
  auto* fuzz = app.add_subcommand("fuzz", "Tri-equivalence check on a random corpus");
  fuzz->add_option("--models", opt.models)->required()->check(CLI::Range(1, 100000));
  fuzz->add_option("--seed", opt.seed)->required();
  fuzz->add_flag("--json", opt.json, "Emit a JSON report");

  std::vector<std::string> argv_storage{"gottlieb"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (check->parsed()) return cmd_check(opt, out);
    if (gottlieb->parsed()) return cmd_gottlieb(opt, out);
    if (der->parsed()) return cmd_der_homology(opt, out);
    if (cls->parsed()) return cmd_classify(opt, out);
    if (seq->parsed()) return cmd_sequence(opt, out);
    if (hol->parsed()) return cmd_holonomy(opt, out);
    if (fuzz->parsed()) return cmd_fuzz(opt, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "error: " << opt.file << ": " << e.what() << "\n";
    if (e.kind() == ErrorKind::ThetaNotCycle) {
      const auto input = load(opt.file);
      return validate_ks(std::get<KsModel>(input.doc.payload)).base_minimal ? kExitInternal
                                                                            : kExitInvalidInput;
    }
    return exit_code_for(e);
  }
  return kExitInvalidInput;
}

}  // namespace gottlieb
