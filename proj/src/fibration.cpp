#include "gottlieb/fibration.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gottlieb/error.hpp"

namespace gottlieb {

namespace {

// Relabels letters through a monotone index map; canonical order is kept.
Monomial relabel(const Monomial& m, const std::vector<GenIndex>& map) {
  std::vector<Letter> letters;
  letters.reserve(m.letters().size());
  for (const auto& [g, e] : m.letters()) letters.push_back({map.at(g), e});
  return Monomial(std::move(letters), m.degree());
}

Element relabel(const Element& x, const std::vector<GenIndex>& map) {
  Element out;
  for (const auto& [m, c] : x.terms()) out.add_term(relabel(m, map), c);
  return out;
}

std::vector<GenIndex> embedding(const DgAlgebra& part, const DgAlgebra& total) {
  std::vector<GenIndex> map;
  for (const auto& g : part.generators()) map.push_back(total.index_of(g.name));
  return map;
}

}  // namespace

DgAlgebra KsModel::product_algebra(const DgAlgebra& base, const DgAlgebra& fibre,
                                   const std::string& name) {
  std::vector<Generator> gens = base.generators();
  for (const auto& g : fibre.generators()) {
    if (base.find(g.name)) {
      throw Error(ErrorKind::DuplicateGenerator,
                  "generator '" + g.name + "' appears in both base and fibre");
    }
    gens.push_back(g);
  }
  DgAlgebra total(name, std::move(gens));
  const auto base_map = embedding(base, total);
  const auto fibre_map = embedding(fibre, total);
  for (GenIndex w = 0; w < base.size(); ++w) {
    total.set_differential(base_map[w], relabel(base.differential(w), base_map));
  }
  for (GenIndex v = 0; v < fibre.size(); ++v) {
    total.set_differential(fibre_map[v], relabel(fibre.differential(v), fibre_map));
  }
  return total;
}

KsModel::KsModel(std::string name, DgAlgebra base, DgAlgebra fibre,
                 const std::map<std::string, Element>& twisting)
    : name_(std::move(name)),
      base_(std::make_shared<const DgAlgebra>(std::move(base))),
      fibre_(std::make_shared<const DgAlgebra>(std::move(fibre))) {
  DgAlgebra total = product_algebra(*base_, *fibre_, name_ + ".total");
  for (const auto& [gen_name, value] : twisting) {
    if (base_->find(gen_name)) {
      throw Error(ErrorKind::BaseDifferentialOverride,
                  "d_E on base generator '" + gen_name + "' is fixed to d_B");
    }
    if (!fibre_->find(gen_name)) {
      throw Error(ErrorKind::UnknownGenerator, "unknown fibre generator '" + gen_name + "'");
    }
    total.set_differential(total.index_of(gen_name), value);
  }
  total_ = std::make_shared<const DgAlgebra>(std::move(total));
  base_to_total_ = embedding(*base_, *total_);
  fibre_to_total_ = embedding(*fibre_, *total_);
  is_base_.assign(total_->size(), false);
  local_index_.assign(total_->size(), 0);
  for (GenIndex w = 0; w < base_to_total_.size(); ++w) {
    is_base_[base_to_total_[w]] = true;
    local_index_[base_to_total_[w]] = w;
  }
  for (GenIndex v = 0; v < fibre_to_total_.size(); ++v) local_index_[fibre_to_total_[v]] = v;

  std::vector<Element> p_images;
  for (GenIndex w = 0; w < base_->size(); ++w) {
    p_images.push_back(total_->generator_element(base_to_total_[w]));
  }
  inclusion_ = std::make_shared<const AlgebraMorphism>(base_, total_, std::move(p_images));
  std::vector<Element> j_images(total_->size());
  for (GenIndex v = 0; v < fibre_->size(); ++v) {
    j_images[fibre_to_total_[v]] = fibre_->generator_element(v);
  }
  projection_ = std::make_shared<const AlgebraMorphism>(total_, fibre_, std::move(j_images));
}

std::uint32_t KsModel::base_word_count(const Monomial& m) const {
  std::uint32_t count = 0;
  for (const auto& [g, e] : m.letters()) {
    if (is_base_[g]) count += e;
  }
  return count;
}

Monomial KsModel::to_fibre_monomial(const Monomial& m) const {
  std::vector<Letter> letters;
  for (const auto& [g, e] : m.letters()) {
    if (is_base_[g]) {
      throw Error(ErrorKind::InternalInvariant, "monomial has base letters");
    }
    letters.push_back({local_index_[g], e});
  }
  return Monomial(std::move(letters), m.degree());
}

Element KsModel::to_fibre_element(const Element& x) const {
  Element out;
  for (const auto& [m, c] : x.terms()) out.add_term(to_fibre_monomial(m), c);
  return out;
}

Element KsModel::from_fibre_element(const Element& x) const {
  return relabel(x, fibre_to_total_);
}

Element KsModel::from_base_element(const Element& x) const {
  return relabel(x, base_to_total_);
}

// ---------------------------------------------------------------------------

KsValidation validate_ks(const KsModel& model) {
  KsValidation out;
  const auto& total = model.total();
  for (const auto& issue : model.base().check().issues) {
    out.issues.push_back({"base_dga", issue.message + ": " +
                                          format_element(model.base(), issue.residual)});
  }
  for (const auto& issue : model.fibre().check().issues) {
    out.issues.push_back({"fibre_dga", issue.message + ": " +
                                           format_element(model.fibre(), issue.residual)});
  }
  for (const auto& issue : total.check().issues) {
    out.issues.push_back({issue.kind == DgaIssue::Kind::DSquaredNonzero ? "d_squared" : "degree",
                          issue.message + ": " + format_element(total, issue.residual)});
  }
  for (GenIndex w = 0; w < model.base().size(); ++w) {
    const auto t = model.total_index_of_base(w);
    if (total.differential(t) != model.from_base_element(model.base().differential(w))) {
      out.issues.push_back({"base_restriction", "d_E(" + total.generator(t).name +
                                                    ") differs from d_B"});
    }
  }
  for (GenIndex v = 0; v < model.fibre().size(); ++v) {
    const auto t = model.total_index_of_fibre(v);
    Element untwisted;
    for (const auto& [m, c] : total.differential(t).terms()) {
      if (model.base_word_count(m) == 0) untwisted.add_term(m, c);
    }
    const Element expected = model.from_fibre_element(model.fibre().differential(v));
    if (untwisted != expected) {
      const Element residual = untwisted - expected;
      out.issues.push_back(
          {"fibre_projection",
           "d_E(" + total.generator(t).name + ") - d_X(" + total.generator(t).name +
               ") is not in the ideal of the base: offending terms " +
               format_element(total, residual)});
    }
  }
  out.base_minimal = model.base().is_minimal();
  out.fibre_minimal = model.fibre().is_minimal();
  if (auto linear = total.first_linear_term()) {
    out.total_linear_term = "d(" + total.generator(linear->first).name + ") contains " +
                            format_monomial(total, linear->second);
  }
  out.total_minimal = !out.total_linear_term.has_value();
  return out;
}

ThetaFamily extract_theta(const KsModel& model) {
  const auto& total = model.total();
  const auto& fibre = model.fibre();
  ThetaFamily family;
  family.fibre_identity =
      std::make_shared<const AlgebraMorphism>(AlgebraMorphism::identity(model.fibre_ptr()));
  for (GenIndex w = 0; w < model.base().size(); ++w) {
    family.entries.push_back(
        {w, PhiDerivation(family.fibre_identity, model.base().generator(w).degree - 1)});
  }
  std::vector<std::vector<Element>> values(model.base().size(),
                                           std::vector<Element>(fibre.size()));
  family.remainder.resize(fibre.size());
  for (GenIndex v = 0; v < fibre.size(); ++v) {
    for (const auto& [m, c] : total.differential(model.total_index_of_fibre(v)).terms()) {
      const auto count = model.base_word_count(m);
      if (count == 0) continue;
      if (count >= 2) {
        family.remainder[v].add_term(m, c);
        continue;
      }
      // Write the term as w·μ: moving w to the front past the letters before it.
      std::vector<Letter> rest;
      int preceding_degree = 0;
      std::optional<GenIndex> w_total;
      for (const auto& letter : m.letters()) {
        if (model.is_base_generator(letter.gen)) {
          w_total = letter.gen;
        } else {
          rest.push_back(letter);
          if (!w_total) {
            preceding_degree += total.generator(letter.gen).degree * static_cast<int>(letter.exponent);
          }
        }
      }
      const int w_degree = total.generator(*w_total).degree;
      Rational coefficient = c;
      if ((w_degree * preceding_degree) % 2 != 0) coefficient = -coefficient;
      const Monomial mu = model.to_fibre_monomial(Monomial(std::move(rest), m.degree() - w_degree));
      values[model.local_index(*w_total)][v].add_term(mu, coefficient);
    }
  }
  const DerivationComplex complex(family.fibre_identity);
  for (auto& entry : family.entries) {
    entry.theta = PhiDerivation(family.fibre_identity, entry.theta.degree(),
                                std::move(values[entry.base_generator]));
    if (!complex.d_phi(entry.theta).is_zero()) {
      throw Error(ErrorKind::ThetaNotCycle,
                  "twisting derivation of '" + model.base().generator(entry.base_generator).name +
                      "' is not a D-cycle");
    }
  }
  return family;
}

ThetaClassReport classify(const KsModel& model) {
  const auto family = extract_theta(model);
  const DerivationComplex complex(family.fibre_identity);
  ThetaClassReport report;
  std::set<int> nontrivial;
  for (const auto& entry : family.entries) {
    ThetaClass cls;
    cls.base_generator = entry.base_generator;
    cls.base_degree = model.base().generator(entry.base_generator).degree;
    cls.witness = complex.is_boundary(entry.theta);
    cls.is_boundary = cls.witness.has_value();
    if (cls.witness && complex.d_phi(*cls.witness) != entry.theta) {
      throw Error(ErrorKind::InternalInvariant, "boundary witness does not reproduce theta");
    }
    const auto homology = complex.homology(entry.theta.degree());
    auto coords = homology.class_coordinates(complex.coordinates(entry.theta));
    if (!coords) throw Error(ErrorKind::InternalInvariant, "theta is not a cycle");
    cls.class_coordinates = std::move(*coords);
    if (cls.is_boundary != is_zero(cls.class_coordinates)) {
      throw Error(ErrorKind::InternalInvariant, "boundary test disagrees with homology class");
    }
    if (!cls.is_boundary) nontrivial.insert(cls.base_degree);
    report.classes.push_back(std::move(cls));
  }
  report.nontrivial_degrees.assign(nontrivial.begin(), nontrivial.end());
  return report;
}

// ---------------------------------------------------------------------------

namespace {

void require_sequence_model(const KsModel& model) {
  const auto validation = validate_ks(model);
  if (!validation.valid()) {
    const auto& issue = validation.issues.front();
    throw Error(ErrorKind::InvalidKsModel, issue.invariant + ": " + issue.message);
  }
  if (!validation.total_minimal) {
    throw Error(ErrorKind::TotalNotMinimal,
                "the total algebra is not minimal (" + *validation.total_linear_term +
                    "); the Gottlieb sequence needs a vanishing connecting map");
  }
}

// Shares derivation complexes and θ_j across degrees.
class SequenceAnalyzer {
 public:
  explicit SequenceAnalyzer(const KsModel& model)
      : model_(model),
        family_(extract_theta(model)),
        fibre_complex_(family_.fibre_identity),
        total_complex_(model.projection()) {}

  SequenceReport run(int n) const {
    if (n < 2) {
      throw Error(ErrorKind::DegreeTooSmall, "the Gottlieb sequence starts in degree 2");
    }
    SequenceReport r;
    r.degree = n;
    r.fibre_gottlieb = fibre_complex_.evaluation_subgroup(n);
    r.evaluation = total_complex_.evaluation_subgroup(n);
    r.base_generators = model_.base().generators_of_degree(n);
    r.fibre_gottlieb_dim = r.fibre_gottlieb.dim();
    r.evaluation_dim = r.evaluation.dim();
    r.base_dual_dim = r.base_generators.size();

    check_obstruction_identity(n);
    check_transport(n);

    const auto& total_gens = r.evaluation.generators;
    // Q(J)*: extend a fibre functional by zero on W.
    std::vector<Vector> j_columns;
    for (const auto& f : r.fibre_gottlieb.functionals.basis()) {
      Vector extended(total_gens.size());
      for (std::size_t i = 0; i < r.fibre_gottlieb.generators.size(); ++i) {
        const auto t = model_.total_index_of_fibre(r.fibre_gottlieb.generators[i]);
        const auto pos = std::find(total_gens.begin(), total_gens.end(), t) - total_gens.begin();
        extended[static_cast<std::size_t>(pos)] = f[i];
      }
      auto coords = r.evaluation.functionals.coordinates(extended);
      if (!coords) {
        throw Error(ErrorKind::InternalInvariant,
                    "Q(J)* does not land in the evaluation subgroup in degree " +
                        std::to_string(n));
      }
      j_columns.push_back(std::move(*coords));
    }
    r.linearized_j = RatMatrix::from_columns(r.evaluation_dim, j_columns);

    // Q(P)*: restrict to the W-duals.
    std::vector<Vector> p_columns;
    for (const auto& g : r.evaluation.functionals.basis()) {
      Vector restricted;
      for (std::size_t i = 0; i < total_gens.size(); ++i) {
        if (model_.is_base_generator(total_gens[i])) restricted.push_back(g[i]);
      }
      p_columns.push_back(std::move(restricted));
    }
    r.linearized_p = RatMatrix::from_columns(r.base_dual_dim, p_columns);

    if (!(r.linearized_p * r.linearized_j).is_zero()) {
      throw Error(ErrorKind::InternalInvariant, "Q(P)* ∘ Q(J)* is nonzero");
    }
    const auto rank_j = rank(r.linearized_j);
    const auto rank_p = rank(r.linearized_p);
    const auto kernel_p = r.evaluation_dim - rank_p;
    r.exact_left = rank_j == r.fibre_gottlieb_dim;
    r.exact_middle = kernel_p == rank_j;
    r.exact_right = rank_p == r.base_dual_dim;
    r.gottlieb_homology_dim = kernel_p - rank_j;
    return r;
  }

  const ThetaFamily& family() const noexcept { return family_; }

 private:
  // 0 = D(ψ_X)(v) - (-1)^n Σ_j ψ(w_j)·θ_j(v) for every J-derivation cycle ψ.
  void check_obstruction_identity(int n) const {
    const auto& fibre = model_.fibre();
    const auto cycles = kernel_basis(total_complex_.d_matrix(n));
    for (const auto& cycle : cycles.basis()) {
      const auto psi = total_complex_.derivation(n, cycle);
      std::vector<Element> restricted;
      for (GenIndex v = 0; v < fibre.size(); ++v) {
        restricted.push_back(psi.value(model_.total_index_of_fibre(v)));
      }
      const PhiDerivation psi_x(family_.fibre_identity, n, std::move(restricted));
      const auto d_psi_x = fibre_complex_.d_phi(psi_x);
      for (GenIndex v = 0; v < fibre.size(); ++v) {
        Element sum;
        for (const auto& entry : family_.entries) {
          const auto& psi_w = psi.value(model_.total_index_of_base(entry.base_generator));
          sum += fibre.multiply(psi_w, entry.theta.value(v));
        }
        Element residual = d_psi_x.value(v);
        if (n % 2 == 0) {
          residual -= sum;
        } else {
          residual += sum;
        }
        if (!residual.is_zero()) {
          throw Error(ErrorKind::InternalInvariant,
                      "obstruction identity fails on '" + fibre.generator(v).name + "'");
        }
      }
    }
  }

  // θ ↦ θ∘J sends D-cycles to D_J-cycles and ε_* commutes with it.
  void check_transport(int n) const {
    const auto cycles = kernel_basis(fibre_complex_.d_matrix(n));
    for (const auto& cycle : cycles.basis()) {
      const auto theta = fibre_complex_.derivation(n, cycle);
      const auto lifted = precompose(theta, *model_.projection(), model_.projection());
      if (!total_complex_.d_phi(lifted).is_zero()) {
        throw Error(ErrorKind::InternalInvariant, "θ∘J is not a D_J-cycle");
      }
      const auto eps_theta = fibre_complex_.epsilon_pushforward(theta);
      const auto eps_lifted = total_complex_.epsilon_pushforward(lifted);
      for (GenIndex t = 0; t < model_.total().size(); ++t) {
        const Rational expected =
            model_.is_base_generator(t) ? Rational(0) : eps_theta[model_.local_index(t)];
        if (eps_lifted[t] != expected) {
          throw Error(ErrorKind::InternalInvariant, "ε∘(θ∘J) differs from Q(J)*(ε∘θ)");
        }
      }
    }
  }

  const KsModel& model_;
  ThetaFamily family_;
  DerivationComplex fibre_complex_;
  DerivationComplex total_complex_;
};

std::vector<int> checked_degrees(const KsModel& model, int max_degree) {
  std::vector<int> out;
  for (int n = 2; n <= std::min(max_degree, model.max_generator_degree()); ++n) out.push_back(n);
  return out;
}

}  // namespace

SequenceReport gottlieb_sequence(const KsModel& model, int n) {
  require_sequence_model(model);
  return SequenceAnalyzer(model).run(n);
}

std::vector<SequenceReport> gottlieb_sequences(const KsModel& model, int first, int last) {
  require_sequence_model(model);
  const SequenceAnalyzer analyzer(model);
  std::vector<SequenceReport> out;
  for (int n = first; n <= last; ++n) out.push_back(analyzer.run(n));
  return out;
}

std::size_t gottlieb_homology_dim(const KsModel& model, int n) {
  return gottlieb_sequence(model, n).gottlieb_homology_dim;
}

TrivialityVerdict is_rationally_gottlieb_trivial(const KsModel& model, int max_degree) {
  require_sequence_model(model);
  const SequenceAnalyzer analyzer(model);
  TrivialityVerdict verdict;
  std::set<int> base_degrees;
  for (const auto& w : model.base().generators()) {
    if (w.degree >= 2 && w.degree <= max_degree) base_degrees.insert(w.degree);
  }
  for (int n : base_degrees) {
    verdict.degrees_checked.push_back(n);
    if (!analyzer.run(n).exact()) {
      verdict.trivial = false;
      verdict.witness_degree = n;
      break;
    }
  }
  return verdict;
}

TriEquivalenceReport tri_equivalence_check(const KsModel& model, int max_degree) {
  require_sequence_model(model);
  TriEquivalenceReport report;
  report.degrees_checked = checked_degrees(model, max_degree);

  const auto classes = classify(model);
  report.classifying_map_trivial = std::none_of(
      classes.nontrivial_degrees.begin(), classes.nontrivial_degrees.end(),
      [&](int n) { return n <= max_degree; });

  const SequenceAnalyzer analyzer(model);
  report.gottlieb_trivial = true;
  report.surjective = true;
  std::ostringstream dump;
  for (int n : report.degrees_checked) {
    const auto seq = analyzer.run(n);
    if (!seq.exact()) report.gottlieb_trivial = false;
    if (!seq.base_generators.empty() && !seq.exact_right) report.surjective = false;
    dump << "n=" << n << " G(X)=" << seq.fibre_gottlieb_dim << " G(E;J)=" << seq.evaluation_dim
         << " Hom(W)=" << seq.base_dual_dim << " exact=" << seq.exact_left << seq.exact_middle
         << seq.exact_right << "; ";
  }
  if (!report.agree()) {
    std::ostringstream head;
    head << "predicates disagree for '" << model.name() << "': (1)="
         << report.classifying_map_trivial << " (2)=" << report.gottlieb_trivial
         << " (3)=" << report.surjective << "; nontrivial theta degrees:";
    for (int n : classes.nontrivial_degrees) head << ' ' << n;
    report.counterexample = head.str() + "; " + dump.str();
  }
  return report;
}

HolonomyReport holonomy_representation(const KsModel& model, GenIndex base_generator,
                                       int max_degree) {
  const auto family = extract_theta(model);
  const auto& theta = family.entries.at(base_generator).theta;
  const auto& fibre = model.fibre();
  HolonomyReport report;
  report.base_generator = base_generator;
  report.derivation_degree = theta.degree();

  std::vector<CohomologyBasis> cohomology;
  for (int m = 0; m <= max_degree; ++m) {
    cohomology.push_back(fibre.cohomology_basis(m));
    report.cohomology_dims.push_back(cohomology.back().dim());
  }
  for (int m = 0; m <= max_degree; ++m) {
    const int t = m - theta.degree();
    if (t < 0) continue;
    const auto& source = cohomology[static_cast<std::size_t>(m)];
    const auto& target = cohomology[static_cast<std::size_t>(t)];
    // Boundaries must go to boundaries for the induced map to be defined.
    for (const auto& b : source.boundaries.basis()) {
      const auto image = fibre.to_vector(theta.evaluate(fibre.from_vector(b, m)), t);
      if (!target.boundaries.contains(image)) {
        throw Error(ErrorKind::InternalInvariant, "induced derivation is not well defined");
      }
    }
    if (source.dim() == 0 || target.dim() == 0) continue;
    std::vector<Vector> columns;
    for (const auto& rep : source.representatives) {
      const auto image = fibre.to_vector(theta.evaluate(fibre.from_vector(rep, m)), t);
      auto coords = target.class_coordinates(image);
      if (!coords) {
        throw Error(ErrorKind::InternalInvariant, "θ maps a cocycle to a non-cocycle");
      }
      columns.push_back(std::move(*coords));
    }
    report.blocks.push_back({m, t, RatMatrix::from_columns(target.dim(), columns)});
  }
  return report;
}

}  // namespace gottlieb
