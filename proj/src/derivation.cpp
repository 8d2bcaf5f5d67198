#include "gottlieb/derivation.hpp"

#include <mutex>

#include "gottlieb/error.hpp"

namespace gottlieb {

PhiDerivation::PhiDerivation(std::shared_ptr<const AlgebraMorphism> phi, int degree)
    : phi_(std::move(phi)), degree_(degree), values_(phi_->source().size()) {}

PhiDerivation::PhiDerivation(std::shared_ptr<const AlgebraMorphism> phi, int degree,
                             std::vector<Element> values)
    : PhiDerivation(std::move(phi), degree) {
  if (values.size() != values_.size()) {
    throw Error(ErrorKind::InternalInvariant, "derivation needs one value per source generator");
  }
  for (GenIndex g = 0; g < values.size(); ++g) set_value(g, std::move(values[g]));
}

void PhiDerivation::set_value(GenIndex g, Element value) {
  const int expected = source().generator(g).degree - degree_;
  if (auto d = value.degree(); d && *d != expected) {
    throw Error(ErrorKind::DegreeMismatch,
                "derivation value on '" + source().generator(g).name + "' has degree " +
                    std::to_string(*d) + ", expected " + std::to_string(expected));
  }
  values_.at(g) = std::move(value);
}

Element PhiDerivation::evaluate_cached(const Monomial& m,
                                       std::map<Monomial, Element>& memo) const {
  if (m.is_unit()) return {};
  if (auto it = memo.find(m); it != memo.end()) return it->second;

  // Peel off the first letter: m = x·rest with x the smallest generator.
  const auto& letters = m.letters();
  const GenIndex x = letters.front().gen;
  const int x_degree = source().generator(x).degree;
  std::vector<Letter> rest_letters(letters.begin(), letters.end());
  if (--rest_letters.front().exponent == 0) rest_letters.erase(rest_letters.begin());
  const Monomial rest(std::move(rest_letters), m.degree() - x_degree);

  const auto& target = phi_->target();
  Element out = target.multiply(values_[x], phi_->apply(rest));
  Element tail = target.multiply(phi_->image(x), evaluate_cached(rest, memo));
  if ((degree_ * x_degree) % 2 != 0) tail *= -1;
  out += tail;
  memo.emplace(m, out);
  return out;
}

Element PhiDerivation::evaluate(const Monomial& m) const {
  std::map<Monomial, Element> memo;
  return evaluate_cached(m, memo);
}

Element PhiDerivation::evaluate(const Element& x) const {
  std::map<Monomial, Element> memo;
  Element out;
  for (const auto& [m, c] : x.terms()) out += c * evaluate_cached(m, memo);
  return out;
}

bool PhiDerivation::is_zero() const {
  for (const auto& v : values_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

bool PhiDerivation::operator==(const PhiDerivation& other) const {
  return degree_ == other.degree_ && values_ == other.values_;
}

PhiDerivation& PhiDerivation::operator+=(const PhiDerivation& other) {
  for (GenIndex g = 0; g < values_.size(); ++g) values_[g] += other.values_.at(g);
  return *this;
}

PhiDerivation& PhiDerivation::operator-=(const PhiDerivation& other) {
  for (GenIndex g = 0; g < values_.size(); ++g) values_[g] -= other.values_.at(g);
  return *this;
}

PhiDerivation& PhiDerivation::operator*=(const Rational& c) {
  for (auto& v : values_) v *= c;
  return *this;
}

// ---------------------------------------------------------------------------

struct DerivationComplex::Cache {
  std::mutex mutex;
  std::map<int, DerSlice> slices;
  std::map<int, std::map<std::pair<GenIndex, Monomial>, std::size_t>> positions;
  std::map<int, RatMatrix> matrices;
};

DerivationComplex::DerivationComplex(std::shared_ptr<const AlgebraMorphism> phi)
    : phi_(std::move(phi)), cache_(std::make_unique<Cache>()) {}

DerivationComplex::~DerivationComplex() = default;
DerivationComplex::DerivationComplex(DerivationComplex&&) noexcept = default;
DerivationComplex& DerivationComplex::operator=(DerivationComplex&&) noexcept = default;

const DerSlice& DerivationComplex::slice(int n) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->slices.find(n); it != cache_->slices.end()) return it->second;
  }
  DerSlice s;
  s.degree = n;
  const auto& source = phi_->source();
  const auto& target = phi_->target();
  if (n >= 0) {
    for (GenIndex g = 0; g < source.size(); ++g) {
      const int value_degree = source.generator(g).degree - n;
      if (value_degree < 0) continue;
      for (const auto& mono : target.basis_of_degree(value_degree)) {
        s.coordinates.push_back({g, mono});
      }
    }
  }
  std::lock_guard lock(cache_->mutex);
  auto& positions = cache_->positions[n];
  for (std::size_t i = 0; i < s.coordinates.size(); ++i) {
    positions.emplace(std::make_pair(s.coordinates[i].generator, s.coordinates[i].target), i);
  }
  return cache_->slices.emplace(n, std::move(s)).first->second;
}

Vector DerivationComplex::coordinates(const PhiDerivation& theta) const {
  const int n = theta.degree();
  Vector v(slice(n).size());
  std::lock_guard lock(cache_->mutex);
  const auto& positions = cache_->positions.at(n);
  for (GenIndex g = 0; g < theta.values().size(); ++g) {
    for (const auto& [mono, c] : theta.value(g).terms()) {
      v[positions.at({g, mono})] = c;
    }
  }
  return v;
}

PhiDerivation DerivationComplex::derivation(int n, const Vector& coords) const {
  const auto& s = slice(n);
  if (coords.size() != s.size()) {
    throw Error(ErrorKind::InternalInvariant, "coordinate vector does not match slice size");
  }
  std::vector<Element> values(phi_->source().size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    values[s.coordinates[i].generator].add_term(s.coordinates[i].target, coords[i]);
  }
  return PhiDerivation(phi_, n, std::move(values));
}

PhiDerivation DerivationComplex::d_phi(const PhiDerivation& theta) const {
  const int n = theta.degree();
  const auto& source = phi_->source();
  const auto& target = phi_->target();
  PhiDerivation out(phi_, n - 1);
  for (GenIndex g = 0; g < source.size(); ++g) {
    Element value = target.apply_d(theta.value(g));
    Element correction = theta.evaluate(source.differential(g));
    if (n % 2 == 0) {
      value -= correction;
    } else {
      value += correction;
    }
    out.set_value(g, std::move(value));
  }
  return out;
}

const RatMatrix& DerivationComplex::d_matrix(int n) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->matrices.find(n); it != cache_->matrices.end()) return it->second;
  }
  const auto& from = slice(n);
  const auto& to = slice(n - 1);
  RatMatrix m(to.size(), from.size());
  for (std::size_t c = 0; c < from.size() && n > 0; ++c) {
    PhiDerivation elementary(phi_, n);
    elementary.set_value(from.coordinates[c].generator, Element::of(from.coordinates[c].target));
    const Vector column = coordinates(d_phi(elementary));
    for (std::size_t r = 0; r < to.size(); ++r) m(r, c) = column[r];
  }
  std::lock_guard lock(cache_->mutex);
  return cache_->matrices.emplace(n, std::move(m)).first->second;
}

DerHomology DerivationComplex::homology(int n) const {
  DerHomology h;
  h.degree = n;
  h.cycles = kernel_basis(d_matrix(n));
  h.boundaries = image_basis(d_matrix(n + 1));
  h.representative_coordinates = quotient_representatives(h.cycles, h.boundaries);
  for (const auto& v : h.representative_coordinates) h.representatives.push_back(derivation(n, v));
  return h;
}

std::optional<Vector> DerHomology::class_coordinates(const Vector& cycle) const {
  if (!cycles.contains(cycle)) return std::nullopt;
  std::vector<Vector> columns = boundaries.basis();
  columns.insert(columns.end(), representative_coordinates.begin(),
                 representative_coordinates.end());
  auto x = solve(RatMatrix::from_columns(cycles.ambient_dim(), columns), cycle);
  if (!x) return std::nullopt;
  return Vector(x->begin() + static_cast<std::ptrdiff_t>(boundaries.dim()), x->end());
}

std::optional<PhiDerivation> DerivationComplex::is_boundary(const PhiDerivation& theta) const {
  if (!d_phi(theta).is_zero()) {
    throw Error(ErrorKind::NotACycle, "derivation of degree " + std::to_string(theta.degree()) +
                                          " is not a D-cycle");
  }
  const int n = theta.degree();
  auto preimage = solve(d_matrix(n + 1), coordinates(theta));
  if (!preimage) return std::nullopt;
  return derivation(n + 1, *preimage);
}

Vector DerivationComplex::epsilon_pushforward(const PhiDerivation& theta) const {
  Vector out(phi_->source().size());
  for (GenIndex g = 0; g < out.size(); ++g) out[g] = theta.value(g).coefficient(Monomial{});
  return out;
}

EvaluationSubgroup DerivationComplex::evaluation_subgroup(int n) const {
  const auto& source = phi_->source();
  if (n < 2) {
    throw Error(ErrorKind::DegreeTooSmall, "evaluation subgroups are defined for degree >= 2");
  }
  if (auto linear = source.first_linear_term()) {
    throw Error(ErrorKind::SourceNotMinimal,
                "source algebra '" + source.name() + "' is not minimal: d(" +
                    source.generator(linear->first).name + ") has a linear term");
  }
  EvaluationSubgroup out;
  out.degree = n;
  out.generators = source.generators_of_degree(n);
  std::vector<Vector> functionals;
  const auto cycles = kernel_basis(d_matrix(n));
  for (const auto& cycle : cycles.basis()) {
    const Vector full = epsilon_pushforward(derivation(n, cycle));
    Vector restricted;
    for (auto g : out.generators) restricted.push_back(full[g]);
    functionals.push_back(std::move(restricted));
  }
  // Reduced echelon rows give a canonical basis.
  const auto reduced = rref(RatMatrix::from_rows(out.generators.size(), functionals));
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < reduced.pivots.size(); ++i) rows.push_back(reduced.reduced.row(i));
  out.functionals = Subspace::span(out.generators.size(), rows);
  return out;
}

EvaluationSubgroup gottlieb_group(const std::shared_ptr<const DgAlgebra>& algebra, int n) {
  DerivationComplex complex(
      std::make_shared<const AlgebraMorphism>(AlgebraMorphism::identity(algebra)));
  return complex.evaluation_subgroup(n);
}

PhiDerivation precompose(const PhiDerivation& theta, const AlgebraMorphism& inner,
                         std::shared_ptr<const AlgebraMorphism> composite) {
  if (&composite->source() != &inner.source() || &inner.target() != &theta.source()) {
    throw Error(ErrorKind::InternalInvariant, "precompose: morphisms do not line up");
  }
  std::vector<Element> values;
  for (GenIndex g = 0; g < inner.source().size(); ++g) {
    values.push_back(theta.evaluate(inner.image(g)));
  }
  return PhiDerivation(std::move(composite), theta.degree(), std::move(values));
}

}  // namespace gottlieb
