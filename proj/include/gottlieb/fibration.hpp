#pragma once

// Koszul-Sullivan models ΛW -> Λ(W ⊕ V) -> ΛV of fibrations and the
// rationalized Gottlieb sequence computed from them.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gottlieb/algebra.hpp"
#include "gottlieb/derivation.hpp"

namespace gottlieb {

class KsModel {
 public:
  /// The total algebra on W ⊕ V with d_E = d_B on W and d_E = d_X on V.
  /// Generator names of base and fibre must be disjoint.
  static DgAlgebra product_algebra(const DgAlgebra& base, const DgAlgebra& fibre,
                                   const std::string& name = "total");

  /// `twisting` overrides d_E on fibre generators; elements are written over
  /// product_algebra(base, fibre). Throws BaseDifferentialOverride when a
  /// base generator is listed and UnknownGenerator for unknown names.
  KsModel(std::string name, DgAlgebra base, DgAlgebra fibre,
          const std::map<std::string, Element>& twisting = {});

  const std::string& name() const noexcept { return name_; }
  const DgAlgebra& base() const noexcept { return *base_; }
  const DgAlgebra& fibre() const noexcept { return *fibre_; }
  const DgAlgebra& total() const noexcept { return *total_; }
  const std::shared_ptr<const DgAlgebra>& base_ptr() const noexcept { return base_; }
  const std::shared_ptr<const DgAlgebra>& fibre_ptr() const noexcept { return fibre_; }
  const std::shared_ptr<const DgAlgebra>& total_ptr() const noexcept { return total_; }

  /// P: ΛW -> Λ(W ⊕ V), the inclusion.
  const std::shared_ptr<const AlgebraMorphism>& inclusion() const noexcept { return inclusion_; }
  /// J: Λ(W ⊕ V) -> ΛV, w -> 0 and v -> v.
  const std::shared_ptr<const AlgebraMorphism>& projection() const noexcept { return projection_; }

  GenIndex total_index_of_base(GenIndex w) const { return base_to_total_.at(w); }
  GenIndex total_index_of_fibre(GenIndex v) const { return fibre_to_total_.at(v); }
  bool is_base_generator(GenIndex total_gen) const { return is_base_.at(total_gen); }
  /// Index in the base (resp. fibre) algebra of a total generator.
  GenIndex local_index(GenIndex total_gen) const { return local_index_.at(total_gen); }

  /// Number of W letters (with multiplicity) in a total monomial.
  std::uint32_t base_word_count(const Monomial& m) const;
  /// Rewrites a total monomial with no W letters as a fibre monomial.
  Monomial to_fibre_monomial(const Monomial& m) const;
  Element to_fibre_element(const Element& x) const;
  Element from_fibre_element(const Element& x) const;
  Element from_base_element(const Element& x) const;

  int max_generator_degree() const noexcept { return total_->max_generator_degree(); }

 private:
  std::string name_;
  std::shared_ptr<const DgAlgebra> base_;
  std::shared_ptr<const DgAlgebra> fibre_;
  std::shared_ptr<const DgAlgebra> total_;
  std::vector<GenIndex> base_to_total_;
  std::vector<GenIndex> fibre_to_total_;
  std::vector<bool> is_base_;
  std::vector<GenIndex> local_index_;
  std::shared_ptr<const AlgebraMorphism> inclusion_;
  std::shared_ptr<const AlgebraMorphism> projection_;
};

struct KsIssue {
  std::string invariant;  // e.g. "d_squared", "fibre_projection"
  std::string message;
};

struct KsValidation {
  std::vector<KsIssue> issues;
  bool base_minimal = false;
  bool fibre_minimal = false;
  bool total_minimal = false;
  /// Set when the total algebra is not minimal: the offending linear term.
  std::optional<std::string> total_linear_term;

  bool valid() const noexcept { return issues.empty(); }
};

KsValidation validate_ks(const KsModel& model);

struct ThetaEntry {
  GenIndex base_generator;  // index in the base algebra
  PhiDerivation theta;      // in Der_{|w|-1}(ΛV, ΛV; 1)
};

struct ThetaFamily {
  std::shared_ptr<const AlgebraMorphism> fibre_identity;
  std::vector<ThetaEntry> entries;  // one per base generator, canonical order
  /// Part of d_E(v) with at least two W letters, per fibre generator.
  std::vector<Element> remainder;
};

/// Reads θ_j off the linear-in-W part of d_E. Throws ThetaNotCycle if some
/// θ_j fails D(θ_j) = 0.
ThetaFamily extract_theta(const KsModel& model);

struct ThetaClass {
  GenIndex base_generator;
  int base_degree;  // |w_j|; θ_j has degree |w_j| - 1
  bool is_boundary;
  std::optional<PhiDerivation> witness;  // D(witness) = θ_j
  Vector class_coordinates;              // in the homology representative basis
};

struct ThetaClassReport {
  std::vector<ThetaClass> classes;
  /// Base degrees n in which the classifying map is rationally nonzero.
  std::vector<int> nontrivial_degrees;

  bool trivial() const noexcept { return nontrivial_degrees.empty(); }
};

ThetaClassReport classify(const KsModel& model);

struct SequenceReport {
  int degree = 0;
  std::size_t fibre_gottlieb_dim = 0;      // G_n(ΛV)
  std::size_t evaluation_dim = 0;          // G_n(Λ(W ⊕ V), ΛV; J)
  std::size_t base_dual_dim = 0;           // Hom_n(W, Q)
  EvaluationSubgroup fibre_gottlieb;
  EvaluationSubgroup evaluation;
  std::vector<GenIndex> base_generators;   // degree-n base generators (base indices)
  RatMatrix linearized_j;  // G_n(ΛV) -> G_n(E; J) in subgroup bases
  RatMatrix linearized_p;  // G_n(E; J) -> Hom_n(W, Q)
  bool exact_left = false;
  bool exact_middle = false;
  bool exact_right = false;
  std::size_t gottlieb_homology_dim = 0;

  bool exact() const noexcept { return exact_left && exact_middle && exact_right; }
};

/// Requires a valid model with minimal total algebra (TotalNotMinimal) and
/// n >= 2 (DegreeTooSmall).
SequenceReport gottlieb_sequence(const KsModel& model, int n);
/// Reports for degrees first..last, sharing the derivation complexes.
std::vector<SequenceReport> gottlieb_sequences(const KsModel& model, int first, int last);
std::size_t gottlieb_homology_dim(const KsModel& model, int n);

struct TrivialityVerdict {
  bool trivial = true;
  std::optional<int> witness_degree;  // least base generator degree where exactness fails
  std::vector<int> degrees_checked;
};

/// Exactness is tested in the base generator degrees 2..max_degree; elsewhere
/// Hom_n(W, Q) = 0 and the theorem makes the verdict agree with full exactness.
TrivialityVerdict is_rationally_gottlieb_trivial(const KsModel& model, int max_degree);

struct TriEquivalenceReport {
  bool classifying_map_trivial = false;  // (1) every θ_j a boundary
  bool gottlieb_trivial = false;         // (2) exact in every checked degree
  bool surjective = false;               // (3) Q(P)* onto in every W degree
  std::vector<int> degrees_checked;
  std::string counterexample;  // filled when the predicates disagree

  bool agree() const noexcept {
    return classifying_map_trivial == gottlieb_trivial && gottlieb_trivial == surjective;
  }
};

TriEquivalenceReport tri_equivalence_check(const KsModel& model, int max_degree);

struct HolonomyBlock {
  int source_degree = 0;  // m
  int target_degree = 0;  // m - |θ_j|
  RatMatrix matrix;       // H^m -> H^{m-|θ_j|} in cohomology representative bases
};

struct HolonomyReport {
  GenIndex base_generator;
  int derivation_degree = 0;
  std::vector<HolonomyBlock> blocks;  // only blocks with nonzero source and target
  std::vector<std::size_t> cohomology_dims;  // H^m(ΛV) for m = 0..max_degree
};

HolonomyReport holonomy_representation(const KsModel& model, GenIndex base_generator,
                                       int max_degree);

}  // namespace gottlieb
