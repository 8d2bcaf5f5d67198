#pragma once

// The chain complex Der_*(A, B; φ) of φ-derivations between free DG algebras.
//
// A φ-derivation θ of degree n lowers degree by n and satisfies
//
//   θ(xy) = θ(x)φ(y) + (-1)^(n|x|) φ(x)θ(y),
//
// so it is determined by its values on the generators of A. The differential
// is D(θ) = d_B∘θ - (-1)^n θ∘d_A.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gottlieb/algebra.hpp"
#include "gottlieb/linalg.hpp"

namespace gottlieb {

class PhiDerivation {
 public:
  /// The zero derivation of the given degree.
  PhiDerivation(std::shared_ptr<const AlgebraMorphism> phi, int degree);
  PhiDerivation(std::shared_ptr<const AlgebraMorphism> phi, int degree,
                std::vector<Element> values);

  int degree() const noexcept { return degree_; }
  const AlgebraMorphism& phi() const noexcept { return *phi_; }
  const std::shared_ptr<const AlgebraMorphism>& phi_ptr() const noexcept { return phi_; }
  const DgAlgebra& source() const noexcept { return phi_->source(); }
  const DgAlgebra& target() const noexcept { return phi_->target(); }

  const Element& value(GenIndex g) const { return values_.at(g); }
  const std::vector<Element>& values() const noexcept { return values_; }
  /// Throws DegreeMismatch unless |value| = |g| - degree().
  void set_value(GenIndex g, Element value);

  Element evaluate(const Monomial& m) const;
  Element evaluate(const Element& x) const;

  bool is_zero() const;
  bool operator==(const PhiDerivation& other) const;
  PhiDerivation& operator+=(const PhiDerivation& other);
  PhiDerivation& operator-=(const PhiDerivation& other);
  PhiDerivation& operator*=(const Rational& c);

 private:
  Element evaluate_cached(const Monomial& m, std::map<Monomial, Element>& memo) const;

  std::shared_ptr<const AlgebraMorphism> phi_;
  int degree_;
  std::vector<Element> values_;
};

struct DerCoordinate {
  GenIndex generator;
  Monomial target;  // |target| = |generator| - degree
};

/// Coordinate basis of Der_n(A, B; φ): one entry per (generator, target monomial).
struct DerSlice {
  int degree = 0;
  std::vector<DerCoordinate> coordinates;

  std::size_t size() const noexcept { return coordinates.size(); }
  bool empty() const noexcept { return coordinates.empty(); }
};

struct DerHomology {
  int degree = 0;
  Subspace cycles;      // in slice coordinates
  Subspace boundaries;  // image of D from degree + 1
  std::vector<PhiDerivation> representatives;
  std::vector<Vector> representative_coordinates;

  std::size_t dim() const noexcept { return representatives.size(); }
  /// Coordinates of the class of a cycle in the representative basis.
  std::optional<Vector> class_coordinates(const Vector& cycle) const;
};

/// Subspace of Hom_n(generators of degree n, Q) realized by derivation cycles.
struct EvaluationSubgroup {
  int degree = 0;
  std::vector<GenIndex> generators;  // degree-n source generators, canonical order
  Subspace functionals;

  std::size_t dim() const noexcept { return functionals.dim(); }
};

class DerivationComplex {
 public:
  explicit DerivationComplex(std::shared_ptr<const AlgebraMorphism> phi);
  ~DerivationComplex();
  DerivationComplex(DerivationComplex&&) noexcept;
  DerivationComplex& operator=(DerivationComplex&&) noexcept;

  const AlgebraMorphism& phi() const noexcept { return *phi_; }
  const std::shared_ptr<const AlgebraMorphism>& phi_ptr() const noexcept { return phi_; }

  /// Empty for n < 0 and for n above every generator degree.
  const DerSlice& slice(int n) const;
  Vector coordinates(const PhiDerivation& theta) const;
  PhiDerivation derivation(int n, const Vector& coords) const;

  PhiDerivation d_phi(const PhiDerivation& theta) const;
  /// Matrix of D from slice(n) to slice(n - 1). The complex is truncated
  /// below degree 0, so D is zero on slice(0).
  const RatMatrix& d_matrix(int n) const;

  DerHomology homology(int n) const;
  /// A preimage under D, or nullopt. Throws NotACycle if D(theta) != 0.
  std::optional<PhiDerivation> is_boundary(const PhiDerivation& theta) const;

  /// ε∘θ: the scalar part of θ on each source generator (indexed by generator).
  Vector epsilon_pushforward(const PhiDerivation& theta) const;
  /// Requires a minimal source (SourceNotMinimal) and n >= 2 (DegreeTooSmall).
  EvaluationSubgroup evaluation_subgroup(int n) const;

 private:
  struct Cache;

  std::shared_ptr<const AlgebraMorphism> phi_;
  std::unique_ptr<Cache> cache_;
};

/// G_n(ΛV): the evaluation subgroup of the identity.
EvaluationSubgroup gottlieb_group(const std::shared_ptr<const DgAlgebra>& algebra, int n);

/// θ∘ψ for θ a φ-derivation and ψ: A' -> A; `composite` must be φ∘ψ.
PhiDerivation precompose(const PhiDerivation& theta, const AlgebraMorphism& inner,
                         std::shared_ptr<const AlgebraMorphism> composite);

}  // namespace gottlieb
