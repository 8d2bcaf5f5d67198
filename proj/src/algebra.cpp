#include "gottlieb/algebra.hpp"

#include <algorithm>
#include <mutex>

#include "gottlieb/error.hpp"

namespace gottlieb {

std::uint32_t Monomial::word_length() const noexcept {
  std::uint32_t n = 0;
  for (const auto& l : letters_) n += l.exponent;
  return n;
}

std::uint32_t Monomial::exponent_of(GenIndex g) const noexcept {
  for (const auto& l : letters_) {
    if (l.gen == g) return l.exponent;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Element

Element Element::of(const Monomial& m, const Rational& coefficient) {
  Element e;
  e.add_term(m, coefficient);
  return e;
}

Element Element::scalar(const Rational& c) { return of(Monomial{}, c); }

std::optional<int> Element::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.degree();
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  if (auto d = degree(); d && *d != m.degree()) {
    throw Error(ErrorKind::InhomogeneousElement,
                "cannot add a degree " + std::to_string(m.degree()) +
                    " term to a degree " + std::to_string(*d) + " element");
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

// ---------------------------------------------------------------------------
// DgAlgebra

struct DgAlgebra::BasisCache {
  std::mutex mutex;
  std::map<int, std::vector<Monomial>> bases;
  std::map<int, std::map<Monomial, std::size_t>> positions;
};

DgAlgebra::DgAlgebra(std::string name, std::vector<Generator> generators)
    : name_(std::move(name)),
      generators_(std::move(generators)),
      cache_(std::make_shared<BasisCache>()) {
  std::stable_sort(generators_.begin(), generators_.end(),
                   [](const Generator& a, const Generator& b) {
                     return std::tie(a.degree, a.name) < std::tie(b.degree, b.name);
                   });
  for (GenIndex i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.name.empty()) {
      throw Error(ErrorKind::Syntax, "generator name must be nonempty");
    }
    if (g.degree < 1) {
      throw Error(ErrorKind::DegreeMismatch,
                  "generator '" + g.name + "' must have positive degree");
    }
    if (!index_.emplace(g.name, i).second) {
      throw Error(ErrorKind::DuplicateGenerator, "generator '" + g.name + "' declared twice");
    }
  }
  differential_.resize(generators_.size());
}

std::optional<GenIndex> DgAlgebra::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GenIndex DgAlgebra::index_of(std::string_view name) const {
  if (auto g = find(name)) return *g;
  throw Error(ErrorKind::UnknownGenerator,
              "unknown generator '" + std::string(name) + "' in algebra '" + name_ + "'");
}

std::vector<GenIndex> DgAlgebra::generators_of_degree(int degree) const {
  std::vector<GenIndex> out;
  for (GenIndex i = 0; i < generators_.size(); ++i) {
    if (generators_[i].degree == degree) out.push_back(i);
  }
  return out;
}

int DgAlgebra::max_generator_degree() const noexcept {
  return generators_.empty() ? 0 : generators_.back().degree;
}

void DgAlgebra::set_differential(GenIndex g, Element value) {
  differential_.at(g) = std::move(value);
}

Monomial DgAlgebra::generator_monomial(GenIndex g, std::uint32_t exponent) const {
  if (exponent == 0) return Monomial{};
  return Monomial({Letter{g, exponent}},
                  generator(g).degree * static_cast<int>(exponent));
}

Element DgAlgebra::generator_element(GenIndex g) const {
  return Element::of(generator_monomial(g));
}

NormalizedWord DgAlgebra::normalize(std::span<const GenIndex> word) const {
  int sign = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] >= generators_.size()) {
      throw Error(ErrorKind::UnknownGenerator, "generator index out of range");
    }
    if (!generators_[word[i]].is_odd()) continue;
    for (std::size_t j = i + 1; j < word.size(); ++j) {
      if (!generators_[word[j]].is_odd()) continue;
      if (word[i] == word[j]) return {0, Monomial{}};
      if (word[i] > word[j]) sign = -sign;
    }
  }
  std::vector<GenIndex> sorted(word.begin(), word.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Letter> letters;
  int degree = 0;
  for (auto g : sorted) {
    degree += generators_[g].degree;
    if (!letters.empty() && letters.back().gen == g) {
      ++letters.back().exponent;
    } else {
      letters.push_back({g, 1});
    }
  }
  return {sign, Monomial(std::move(letters), degree)};
}

NormalizedWord DgAlgebra::multiply(const Monomial& a, const Monomial& b) const {
  // Each odd letter of b passes every larger odd letter of a.
  int sign = 1;
  for (const auto& lb : b.letters()) {
    if (!generators_[lb.gen].is_odd()) continue;
    for (const auto& la : a.letters()) {
      if (!generators_[la.gen].is_odd()) continue;
      if (la.gen == lb.gen) return {0, Monomial{}};
      if (la.gen > lb.gen) sign = -sign;
    }
  }
  std::vector<Letter> merged;
  merged.reserve(a.letters().size() + b.letters().size());
  auto ia = a.letters().begin();
  auto ib = b.letters().begin();
  while (ia != a.letters().end() || ib != b.letters().end()) {
    if (ib == b.letters().end() || (ia != a.letters().end() && ia->gen < ib->gen)) {
      merged.push_back(*ia++);
    } else if (ia == a.letters().end() || ib->gen < ia->gen) {
      merged.push_back(*ib++);
    } else {
      merged.push_back({ia->gen, ia->exponent + ib->exponent});
      ++ia;
      ++ib;
    }
  }
  return {sign, Monomial(std::move(merged), a.degree() + b.degree())};
}

Element DgAlgebra::multiply(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto [sign, m] = multiply(ma, mb);
      if (sign != 0) out.add_term(m, sign * ca * cb);
    }
  }
  return out;
}

Element DgAlgebra::power(const Element& a, std::uint32_t exponent) const {
  Element out = Element::scalar(1);
  for (std::uint32_t i = 0; i < exponent; ++i) out = multiply(out, a);
  return out;
}

Element DgAlgebra::apply_d(const Monomial& m) const {
  Element out;
  const auto& letters = m.letters();
  int prefix_degree = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const auto [g, e] = letters[i];
    const auto& dg = differential_[g];
    if (!dg.is_zero()) {
      Monomial prefix(std::vector<Letter>(letters.begin(), letters.begin() + i), prefix_degree);
      Monomial suffix(std::vector<Letter>(letters.begin() + i + 1, letters.end()),
                      m.degree() - prefix_degree - generators_[g].degree * static_cast<int>(e));
      // d(g^e) = e·g^(e-1)·d(g); only even generators reach e > 1.
      Element middle = multiply(Element::of(generator_monomial(g, e - 1), e), dg);
      Element term = multiply(multiply(Element::of(prefix), middle), Element::of(suffix));
      if (prefix_degree % 2 != 0) term *= -1;
      out += term;
    }
    prefix_degree += generators_[g].degree * static_cast<int>(e);
  }
  return out;
}

Element DgAlgebra::apply_d(const Element& x) const {
  Element out;
  for (const auto& [m, c] : x.terms()) out += c * apply_d(m);
  return out;
}

DgaReport DgAlgebra::check() const {
  DgaReport report;
  for (GenIndex g = 0; g < generators_.size(); ++g) {
    const auto& dg = differential_[g];
    bool foreign = false;
    for (const auto& [m, c] : dg.terms()) {
      for (const auto& l : m.letters()) {
        if (l.gen >= generators_.size()) foreign = true;
      }
    }
    if (foreign) {
      report.issues.push_back({DgaIssue::Kind::ForeignGenerator, g, dg,
                               "d(" + generators_[g].name + ") mentions a foreign generator"});
      continue;
    }
    if (auto deg = dg.degree(); deg && *deg != generators_[g].degree + 1) {
      report.issues.push_back(
          {DgaIssue::Kind::DegreeMismatch, g, dg,
           "d(" + generators_[g].name + ") has degree " + std::to_string(*deg) +
               ", expected " + std::to_string(generators_[g].degree + 1)});
      continue;
    }
    Element dd = apply_d(dg);
    if (!dd.is_zero()) {
      report.issues.push_back({DgaIssue::Kind::DSquaredNonzero, g, dd,
                               "d(d(" + generators_[g].name + ")) is nonzero"});
    }
  }
  return report;
}

std::optional<std::pair<GenIndex, Monomial>> DgAlgebra::first_linear_term() const {
  for (GenIndex g = 0; g < generators_.size(); ++g) {
    for (const auto& [m, c] : differential_[g].terms()) {
      if (m.word_length() <= 1) return std::make_pair(g, m);
    }
  }
  return std::nullopt;
}

bool DgAlgebra::is_minimal() const { return !first_linear_term().has_value(); }

namespace {

void enumerate_monomials(const std::vector<Generator>& gens, GenIndex next, int remaining,
                         std::vector<Letter>& current, int total,
                         std::vector<Monomial>& out) {
  if (remaining == 0) {
    out.emplace_back(current, total);
    return;
  }
  for (GenIndex g = next; g < gens.size(); ++g) {
    const int deg = gens[g].degree;
    if (deg > remaining) break;  // generators are sorted by degree
    const std::uint32_t max_exp = gens[g].is_odd() ? 1u : static_cast<std::uint32_t>(remaining / deg);
    for (std::uint32_t e = 1; e <= max_exp; ++e) {
      current.push_back({g, e});
      enumerate_monomials(gens, g + 1, remaining - deg * static_cast<int>(e), current, total, out);
      current.pop_back();
    }
  }
}

}  // namespace

const std::vector<Monomial>& DgAlgebra::basis_of_degree(int degree) const {
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->bases.find(degree);
  if (it != cache_->bases.end()) return it->second;
  std::vector<Monomial> basis;
  if (degree >= 0) {
    std::vector<Letter> scratch;
    enumerate_monomials(generators_, 0, degree, scratch, degree, basis);
    std::sort(basis.begin(), basis.end());
  }
  auto& positions = cache_->positions[degree];
  for (std::size_t i = 0; i < basis.size(); ++i) positions.emplace(basis[i], i);
  return cache_->bases.emplace(degree, std::move(basis)).first->second;
}

std::optional<std::size_t> DgAlgebra::basis_index(const Monomial& m) const {
  basis_of_degree(m.degree());
  std::lock_guard lock(cache_->mutex);
  const auto& positions = cache_->positions.at(m.degree());
  auto it = positions.find(m);
  if (it == positions.end()) return std::nullopt;
  return it->second;
}

Vector DgAlgebra::to_vector(const Element& x, int degree) const {
  Vector v(basis_of_degree(degree).size());
  for (const auto& [m, c] : x.terms()) {
    auto idx = m.degree() == degree ? basis_index(m) : std::nullopt;
    if (!idx) {
      throw Error(ErrorKind::DegreeMismatch,
                  "element is not in degree " + std::to_string(degree) + " of '" + name_ + "'");
    }
    v[*idx] = c;
  }
  return v;
}

Element DgAlgebra::from_vector(const Vector& v, int degree) const {
  const auto& basis = basis_of_degree(degree);
  Element out;
  for (std::size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], v.at(i));
  return out;
}

RatMatrix DgAlgebra::differential_matrix(int degree) const {
  const auto& source = basis_of_degree(degree);
  const auto& target = basis_of_degree(degree + 1);
  RatMatrix m(target.size(), source.size());
  for (std::size_t c = 0; c < source.size(); ++c) {
    const auto image = apply_d(source[c]);
    for (const auto& [mono, coeff] : image.terms()) {
      m(*basis_index(mono), c) = coeff;
    }
  }
  return m;
}

CohomologyBasis DgAlgebra::cohomology_basis(int degree) const {
  CohomologyBasis out;
  out.degree = degree;
  out.cycles = kernel_basis(differential_matrix(degree));
  out.boundaries = degree >= 1 ? image_basis(differential_matrix(degree - 1))
                               : Subspace(basis_of_degree(degree).size());
  out.representatives = quotient_representatives(out.cycles, out.boundaries);
  return out;
}

std::optional<Vector> CohomologyBasis::class_coordinates(const Vector& cocycle) const {
  if (!cycles.contains(cocycle)) return std::nullopt;
  std::vector<Vector> columns = boundaries.basis();
  columns.insert(columns.end(), representatives.begin(), representatives.end());
  auto x = solve(RatMatrix::from_columns(cycles.ambient_dim(), columns), cocycle);
  if (!x) return std::nullopt;
  return Vector(x->begin() + static_cast<std::ptrdiff_t>(boundaries.dim()), x->end());
}

std::size_t DgAlgebra::cohomology_dim(int degree) const {
  if (degree < 0) return 0;
  const auto cycles = basis_of_degree(degree).size() - rank(differential_matrix(degree));
  const auto boundaries = degree >= 1 ? rank(differential_matrix(degree - 1)) : 0;
  return cycles - boundaries;
}

// ---------------------------------------------------------------------------
// AlgebraMorphism

AlgebraMorphism::AlgebraMorphism(std::shared_ptr<const DgAlgebra> source,
                                 std::shared_ptr<const DgAlgebra> target,
                                 std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->size()) {
    throw Error(ErrorKind::InternalInvariant, "morphism needs one image per source generator");
  }
}

AlgebraMorphism AlgebraMorphism::identity(const std::shared_ptr<const DgAlgebra>& algebra) {
  std::vector<Element> images;
  for (GenIndex g = 0; g < algebra->size(); ++g) images.push_back(algebra->generator_element(g));
  return AlgebraMorphism(algebra, algebra, std::move(images));
}

AlgebraMorphism AlgebraMorphism::augmentation(const std::shared_ptr<const DgAlgebra>& algebra) {
  return AlgebraMorphism(algebra, rationals(), std::vector<Element>(algebra->size()));
}

Element AlgebraMorphism::apply(const Monomial& m) const {
  Element out = Element::scalar(1);
  for (const auto& [g, e] : m.letters()) {
    for (std::uint32_t i = 0; i < e; ++i) out = target_->multiply(out, images_[g]);
    if (out.is_zero()) break;
  }
  return out;
}

Element AlgebraMorphism::apply(const Element& x) const {
  Element out;
  for (const auto& [m, c] : x.terms()) out += c * apply(m);
  return out;
}

std::vector<MorphismIssue> AlgebraMorphism::check() const {
  std::vector<MorphismIssue> issues;
  for (GenIndex g = 0; g < source_->size(); ++g) {
    const auto& gen = source_->generator(g);
    if (auto d = images_[g].degree(); d && *d != gen.degree) {
      issues.push_back({g, images_[g], "image of '" + gen.name + "' has the wrong degree"});
      continue;
    }
    Element residual = apply(source_->differential(g)) - target_->apply_d(images_[g]);
    if (!residual.is_zero()) {
      issues.push_back({g, residual, "map does not commute with d on '" + gen.name + "'"});
    }
  }
  return issues;
}

std::string format_monomial(const DgAlgebra& algebra, const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string out;
  for (const auto& [g, e] : m.letters()) {
    if (!out.empty()) out += "*";
    out += algebra.generator(g).name;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string format_element(const DgAlgebra& algebra, const Element& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : x.terms()) {
    const bool negative = sgn(c) < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const Rational magnitude = abs(c);
    if (m.is_unit()) {
      out += magnitude.get_str();
    } else {
      if (magnitude != 1) out += magnitude.get_str() + "*";
      out += format_monomial(algebra, m);
    }
  }
  return out;
}

std::shared_ptr<const DgAlgebra> rationals() {
  static const auto q = std::make_shared<const DgAlgebra>("Q", std::vector<Generator>{});
  return q;
}

}  // namespace gottlieb
