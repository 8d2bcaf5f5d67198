// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gottlieb/cli.hpp"
#include "gottlieb/derivation.hpp"
#include "gottlieb/dsl.hpp"
#include "gottlieb/fibration.hpp"
#include "gottlieb/random_model.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace gottlieb;

namespace {

constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr std::size_t kCorpusSize = 100;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

const std::vector<KsModel>& corpus() {
  static const auto models = random_corpus(kCorpusSeed, kCorpusSize);
  return models;
}

std::shared_ptr<const AlgebraMorphism> identity_of(const std::shared_ptr<const DgAlgebra>& a) {
  return std::make_shared<const AlgebraMorphism>(AlgebraMorphism::identity(a));
}

Outcome twisted_cp2() {
  Outcome o;
  const auto model = testing::load_ks("twisted-cp2.ks");
  const auto classes = classify(model);
  for (const auto& c : classes.classes) {
    if (model.base().generator(c.base_generator).name == "w4") {
      o.expect(!c.is_boundary, "theta_w4 is not a D-boundary");
    }
  }
  const auto seq = gottlieb_sequence(model, 4);
  o.expect(rank(seq.linearized_p) == 0, "image of Q(P)* in degree 4 has dimension 0");
  o.expect(seq.base_dual_dim == 1, "Hom_4(W,Q) has dimension 1");
  const auto verdict = is_rationally_gottlieb_trivial(model, 8);
  o.expect(!verdict.trivial && verdict.witness_degree == 4, "verdict: not trivial, witness 4");
  return o;
}

Outcome untwisted_cp2() {
  Outcome o;
  const auto model = testing::load_ks("untwisted-cp2.ks");
  o.expect(classify(model).trivial(), "classify trivial in all degrees");
  for (const auto& seq : gottlieb_sequences(model, 2, 8)) {
    o.expect(seq.exact(), "sequence exact in degree " + std::to_string(seq.degree));
    o.expect(seq.gottlieb_homology_dim == 0, "GH_" + std::to_string(seq.degree) + " = 0");
  }
  o.expect(is_rationally_gottlieb_trivial(model, 8).trivial, "verdict trivial");
  return o;
}

Outcome ghn_family() {
  Outcome o;
  for (const auto& [k, n] : std::vector<std::pair<int, int>>{{3, 1}, {3, 3}, {3, 5}, {5, 3}}) {
    const auto model =
        testing::load_ks("ghn-k" + std::to_string(k) + "n" + std::to_string(n) + ".ks");
    const auto tag = "(k,n)=(" + std::to_string(k) + "," + std::to_string(n) + ")";
    const auto gh = gottlieb_homology_dim(model, k);
    o.note(tag + ": GH_" + std::to_string(k) + " = " + std::to_string(gh));
    o.expect(gh == static_cast<std::size_t>(n),
             tag + " GH_" + std::to_string(k) + " = " + std::to_string(n) + " (got " +
                 std::to_string(gh) + ")");
    const int top = k * (n + 1) - 1;
    for (const auto& seq : gottlieb_sequences(model, 2, top)) {
      const std::size_t expected = seq.degree == top ? 1 : 0;
      o.expect(seq.fibre_gottlieb_dim == expected,
               tag + " fibre G_" + std::to_string(seq.degree) + " = " + std::to_string(expected));
    }
  }
  return o;
}

Outcome tri_equivalence() {
  Outcome o;
  std::size_t agree = 0;
  for (const auto& model : corpus()) {
    const auto r = tri_equivalence_check(model, model.max_generator_degree());
    if (r.agree()) {
      ++agree;
    } else {
      o.expect(false, r.counterexample);
    }
  }
  o.note(std::to_string(agree) + "/" + std::to_string(corpus().size()) + " models agree");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli({"fuzz", "--models", std::to_string(kCorpusSize), "--seed",
                            std::to_string(kCorpusSeed)},
                           out, err);
  o.expect(code == kExitOk, "fuzz command exits 0 (got " + std::to_string(code) + ")");
  return o;
}

Outcome property_suite() {
  Outcome o;
  std::mt19937_64 rng(4242);
  const auto& models = corpus();
  auto pick = [&]() -> const KsModel& {
    return models[static_cast<std::size_t>(testing::draw(rng, 0, static_cast<int>(models.size()) - 1))];
  };
  std::size_t failures[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 1000; ++i) {
    const auto& a = pick().total();
    const int p = testing::random_populated_degree(rng, a, 12);
    const int q = testing::random_populated_degree(rng, a, 12);
    const int r = testing::random_populated_degree(rng, a, 12);
    const auto x = testing::random_element(rng, a, p);
    const auto y = testing::random_element(rng, a, q);
    const auto z = testing::random_element(rng, a, r);
    if (!(a.multiply(x, y) == Rational((p * q) % 2 ? -1 : 1) * a.multiply(y, x))) ++failures[0];
    if (!(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)))) ++failures[1];
    const Element leibniz =
        a.multiply(a.apply_d(x), y) + Rational(p % 2 ? -1 : 1) * a.multiply(x, a.apply_d(y));
    if (!(a.apply_d(a.multiply(x, y)) == leibniz)) ++failures[2];
    if (!a.apply_d(a.apply_d(x)).is_zero()) ++failures[4];
  }
  for (int i = 0; i < 1000; ++i) {
    const auto& model = pick();
    const DerivationComplex complex(model.projection());
    const auto& source = model.total();
    const auto& target = model.fibre();
    int n = 0;
    for (int tries = 0; tries < 16 && complex.slice(n).empty(); ++tries) n = testing::draw(rng, 0, 8);
    Vector coords(complex.slice(n).size());
    for (auto& c : coords) c = testing::draw(rng, -2, 2);
    const auto theta = complex.derivation(n, coords);
    const int p = testing::random_populated_degree(rng, source, 12);
    const int q = testing::random_populated_degree(rng, source, 12);
    const auto x = testing::random_element(rng, source, p);
    const auto y = testing::random_element(rng, source, q);
    const auto& phi = *model.projection();
    const Element rhs = target.multiply(theta.evaluate(x), phi.apply(y)) +
                        Rational((n * p) % 2 ? -1 : 1) * target.multiply(phi.apply(x), theta.evaluate(y));
    if (!(theta.evaluate(source.multiply(x, y)) == rhs)) ++failures[3];
  }
  const char* names[5] = {"graded commutativity", "associativity", "Leibniz for d",
                          "product rule for derivations", "d^2 = 0"};
  for (int k = 0; k < 5; ++k) {
    o.expect(failures[k] == 0, std::string(names[k]) + ": " + std::to_string(failures[k]) + "/1000");
  }
  std::size_t slices = 0;
  for (const auto& model : models) {
    for (const auto& phi : {model.projection(), identity_of(model.fibre_ptr())}) {
      const DerivationComplex complex(phi);
      for (int n = 1; n <= model.max_generator_degree() + 1; ++n) {
        if (complex.slice(n).empty()) continue;
        ++slices;
        if (!(complex.d_matrix(n - 1) * complex.d_matrix(n)).is_zero()) {
          o.expect(false, "D^2 = 0 on " + model.name() + " slice " + std::to_string(n));
        }
      }
    }
  }
  o.note("1000 checks per identity; D^2 = 0 on " + std::to_string(slices) + " populated slices");
  return o;
}

Outcome homology_oracle() {
  Outcome o;
  std::size_t compared = 0;
  for (const auto& model : corpus()) {
    for (const auto& phi : {model.projection(), identity_of(model.fibre_ptr())}) {
      const DerivationComplex complex(phi);
      for (int n = 0; n <= 8; ++n) {
        ++compared;
        if (complex.homology(n).dim() != oracle::homology_dim(phi, n)) {
          o.expect(false, model.name() + " Der homology in degree " + std::to_string(n));
        }
      }
    }
    for (int m = 0; m <= 8; ++m) {
      ++compared;
      if (model.total().cohomology_dim(m) != oracle::cohomology_dim(model.total(), m)) {
        o.expect(false, model.name() + " cohomology in degree " + std::to_string(m));
      }
    }
  }
  o.note(std::to_string(compared) + " homology dimensions compared");
  return o;
}

std::string run_binary(const std::string& args) {
  const auto out = std::filesystem::path(GOTTLIEB_TEST_TMP) / "acceptance-run.json";
  const std::string command = std::string(GOTTLIEB_CLI_PATH) + " " + args + " > " + out.string();
  if (std::system(command.c_str()) != 0) return "<failed: " + command + ">";
  return testing::slurp(out.string());
}

Outcome parser_and_reports() {
  Outcome o;
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(GOTTLIEB_MODELS_DIR)) {
    const auto rendered = render(parse_document(testing::slurp(entry.path().string())));
    o.expect(render(parse_document(rendered)) == rendered,
             "round trip of " + entry.path().filename().string());
    ++files;
  }
  o.note(std::to_string(files) + " bundled files round-trip");
  const std::vector<std::string> runs{
      "fuzz --models 100 --seed " + std::to_string(kCorpusSeed) + " --json",
      "sequence " + testing::model_path("ghn-k3n3.ks") + " --max-degree 12 --json",
      "classify " + testing::model_path("twisted-cp2.ks") + " --json",
      "gottlieb " + testing::model_path("cp2.dga") + " --max-degree 6 --json"};
  for (const auto& args : runs) {
    const auto first = run_binary(args);
    const auto second = run_binary(args);
    o.expect(first == second && first.rfind("<failed", 0) != 0, "byte-identical JSON for " + args);
  }
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0 means no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "twisted CP^2 over S^4: theta_w4 nonzero, witness degree 4", 1, twisted_cp2},
      {2, "untwisted CP^2 over S^4: trivial, GH = 0 through degree 8", 1, untwisted_cp2},
      {3, "GH = n family: GH_k = n and fibre Gottlieb groups", 30, ghn_family},
      {4, "tri-equivalence on 100 random models", 300, tri_equivalence},
      {5, "algebra property suite", 120, property_suite},
      {6, "homology dimensions agree with reference ranks", 0, homology_oracle},
      {7, "parser round trip and byte-identical JSON", 0, parser_and_reports},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      o.expect(false, "time limit " + std::to_string(c.limit_seconds) + " s exceeded");
    }
    all &= o.pass;
    std::printf("%s criterion %d: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                seconds);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  }
  return all ? 0 : 1;
}
