#pragma once

// Free graded-commutative algebras over Q with differentials.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gottlieb/linalg.hpp"

namespace gottlieb {

using GenIndex = std::uint32_t;

struct Generator {
  std::string name;
  int degree = 1;

  bool is_odd() const noexcept { return degree % 2 != 0; }
};

struct Letter {
  GenIndex gen = 0;
  std::uint32_t exponent = 1;

  auto operator<=>(const Letter&) const = default;
};

/// Product of generators in canonical order (ascending generator index,
/// which is ascending (degree, name)). Odd generators carry exponent 1.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::vector<Letter> letters, int degree)
      : letters_(std::move(letters)), degree_(degree) {}

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  int degree() const noexcept { return degree_; }
  bool is_unit() const noexcept { return letters_.empty(); }
  std::uint32_t word_length() const noexcept;
  std::uint32_t exponent_of(GenIndex g) const noexcept;

  std::strong_ordering operator<=>(const Monomial& other) const {
    return letters_ <=> other.letters_;
  }
  bool operator==(const Monomial& other) const { return letters_ == other.letters_; }

 private:
  std::vector<Letter> letters_;
  int degree_ = 0;
};

/// Homogeneous exact-rational combination of monomials. The zero element has
/// no terms and no degree.
class Element {
 public:
  using Terms = std::map<Monomial, Rational>;

  Element() = default;
  static Element of(const Monomial& m, const Rational& coefficient = 1);
  static Element scalar(const Rational& c);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::optional<int> degree() const;
  const Terms& terms() const noexcept { return terms_; }
  Rational coefficient(const Monomial& m) const;

  /// Adds c·m; throws InhomogeneousElement on a degree clash.
  void add_term(const Monomial& m, const Rational& c);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  Element operator-() const { return Rational(-1) * *this; }
  bool operator==(const Element& other) const { return terms_ == other.terms_; }

 private:
  Terms terms_;
};

struct NormalizedWord {
  int sign = 1;  // 0 when an odd generator repeats
  Monomial monomial;
};

struct DgaIssue {
  enum class Kind { DegreeMismatch, DSquaredNonzero, ForeignGenerator };
  Kind kind;
  GenIndex generator;
  Element residual;
  std::string message;
};

struct DgaReport {
  std::vector<DgaIssue> issues;
  bool valid() const noexcept { return issues.empty(); }
};

/// Cocycle / coboundary data of one degree of H*(ΛV, d).
struct CohomologyBasis {
  int degree = 0;
  Subspace cycles;
  Subspace boundaries;
  std::vector<Vector> representatives;  // coordinates over basis_of_degree(degree)

  std::size_t dim() const noexcept { return representatives.size(); }
  /// Class of a cocycle in the representative basis; nullopt if not a cocycle.
  std::optional<Vector> class_coordinates(const Vector& cocycle) const;
};

class DgAlgebra {
 public:
  /// Sorts generators into canonical (degree, name) order. Throws
  /// DuplicateGenerator, or DegreeMismatch for degrees < 1.
  DgAlgebra(std::string name, std::vector<Generator> generators);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const Generator& generator(GenIndex g) const { return generators_.at(g); }
  std::optional<GenIndex> find(std::string_view name) const;
  GenIndex index_of(std::string_view name) const;  // throws UnknownGenerator
  std::vector<GenIndex> generators_of_degree(int degree) const;
  int max_generator_degree() const noexcept;

  void set_differential(GenIndex g, Element value);
  const Element& differential(GenIndex g) const { return differential_.at(g); }

  Monomial generator_monomial(GenIndex g, std::uint32_t exponent = 1) const;
  Element generator_element(GenIndex g) const;

  /// Sorts an arbitrary word into canonical order with its Koszul sign.
  NormalizedWord normalize(std::span<const GenIndex> word) const;
  NormalizedWord multiply(const Monomial& a, const Monomial& b) const;
  Element multiply(const Element& a, const Element& b) const;
  Element power(const Element& a, std::uint32_t exponent) const;

  Element apply_d(const Element& x) const;
  Element apply_d(const Monomial& m) const;

  /// Checks d raises degree by one and d∘d = 0 on every generator.
  DgaReport check() const;
  /// True iff no d(generator) has a word-length-1 term.
  bool is_minimal() const;
  /// First (generator, linear monomial) pair violating minimality.
  std::optional<std::pair<GenIndex, Monomial>> first_linear_term() const;

  /// All canonical monomials of the given degree, memoized.
  const std::vector<Monomial>& basis_of_degree(int degree) const;
  std::optional<std::size_t> basis_index(const Monomial& m) const;
  Vector to_vector(const Element& x, int degree) const;
  Element from_vector(const Vector& v, int degree) const;

  /// Matrix of d from degree m to degree m + 1 in monomial bases.
  RatMatrix differential_matrix(int degree) const;
  std::size_t cohomology_dim(int degree) const;
  CohomologyBasis cohomology_basis(int degree) const;

 private:
  struct BasisCache;

  std::string name_;
  std::vector<Generator> generators_;
  std::vector<Element> differential_;
  std::map<std::string, GenIndex, std::less<>> index_;
  std::shared_ptr<BasisCache> cache_;
};

struct MorphismIssue {
  GenIndex generator;
  Element residual;
  std::string message;
};

class AlgebraMorphism {
 public:
  AlgebraMorphism(std::shared_ptr<const DgAlgebra> source,
                  std::shared_ptr<const DgAlgebra> target, std::vector<Element> images);

  static AlgebraMorphism identity(const std::shared_ptr<const DgAlgebra>& algebra);
  /// ε: every generator to zero, landing in Q.
  static AlgebraMorphism augmentation(const std::shared_ptr<const DgAlgebra>& algebra);

  const DgAlgebra& source() const noexcept { return *source_; }
  const DgAlgebra& target() const noexcept { return *target_; }
  const std::shared_ptr<const DgAlgebra>& source_ptr() const noexcept { return source_; }
  const std::shared_ptr<const DgAlgebra>& target_ptr() const noexcept { return target_; }
  const Element& image(GenIndex g) const { return images_.at(g); }

  Element apply(const Monomial& m) const;
  Element apply(const Element& x) const;

  /// Degree preservation and φ∘d = d∘φ on generators.
  std::vector<MorphismIssue> check() const;

 private:
  std::shared_ptr<const DgAlgebra> source_;
  std::shared_ptr<const DgAlgebra> target_;
  std::vector<Element> images_;
};

/// The ground field Q as a DG algebra concentrated in degree 0.
std::shared_ptr<const DgAlgebra> rationals();

/// "v2^3*v5"; the unit prints as "1".
std::string format_monomial(const DgAlgebra& algebra, const Monomial& m);
/// "v2^3 - 1/2*w4*v2"; zero prints as "0". Reparses with the model grammar.
std::string format_element(const DgAlgebra& algebra, const Element& x);

}  // namespace gottlieb
