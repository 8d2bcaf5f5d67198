#include "doctest.h"

#include <random>

#include "gottlieb/derivation.hpp"
#include "gottlieb/error.hpp"
#include "gottlieb/random_model.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace gottlieb;

namespace {

std::shared_ptr<const DgAlgebra> shared(DgAlgebra a) {
  return std::make_shared<const DgAlgebra>(std::move(a));
}

std::shared_ptr<const AlgebraMorphism> identity_of(const std::shared_ptr<const DgAlgebra>& a) {
  return std::make_shared<const AlgebraMorphism>(AlgebraMorphism::identity(a));
}

// θ evaluated on a left-nested word with θ(xy) = θ(x)y - (-1)^(n|x|) xθ(y).
Element minus_rule(const DgAlgebra& a, int n, const Element& theta_x, GenIndex x,
                   std::uint32_t power, bool peel_left) {
  if (power == 1) return theta_x;
  const Element gx = a.generator_element(x);
  const int dx = a.generator(x).degree;
  if (peel_left) {
    const Element rest = a.power(gx, power - 1);
    const Element theta_rest = minus_rule(a, n, theta_x, x, power - 1, peel_left);
    return a.multiply(theta_x, rest) - Rational((n * dx) % 2 ? -1 : 1) * a.multiply(gx, theta_rest);
  }
  const Element rest = a.power(gx, power - 1);
  const Element theta_rest = minus_rule(a, n, theta_x, x, power - 1, peel_left);
  const int drest = dx * static_cast<int>(power - 1);
  return a.multiply(theta_rest, gx) - Rational((n * drest) % 2 ? -1 : 1) * a.multiply(rest, theta_x);
}

}  // namespace

TEST_CASE("the minus-sign product rule is not well defined") {
  const auto a = shared(DgAlgebra("a", {{"x", 2}}));
  const Element one = Element::scalar(1);
  // θ of degree 2 with θ(x) = 1, applied to x^3 = x*(x^2) and to (x^2)*x.
  const auto left = minus_rule(*a, 2, one, 0, 3, true);
  const auto right = minus_rule(*a, 2, one, 0, 3, false);
  CHECK(left == a->power(a->generator_element(0), 2));
  CHECK(right == -a->power(a->generator_element(0), 2));
  CHECK_FALSE(left == right);

  PhiDerivation theta(identity_of(a), 2);
  theta.set_value(0, one);
  CHECK(theta.evaluate(a->generator_monomial(0, 3)) == Rational(3) * a->power(a->generator_element(0), 2));
}

TEST_CASE("evaluate matches the closed form on random corpus models") {
  std::mt19937_64 rng(99);
  for (const auto& model : random_corpus(3, 12)) {
    const auto phi = model.projection();
    const auto& source = phi->source();
    for (int n = 0; n <= 6; ++n) {
      const DerivationComplex complex(phi);
      const auto& s = complex.slice(n);
      if (s.empty()) continue;
      Vector coords(s.size());
      for (auto& q : coords) q = testing::draw(rng, -2, 2);
      const auto theta = complex.derivation(n, coords);
      for (int i = 0; i < 5; ++i) {
        const int p = testing::random_populated_degree(rng, source, 14);
        const auto x = testing::random_element(rng, source, p);
        CHECK(theta.evaluate(x) == oracle::evaluate(theta, x));
      }
    }
  }
}

TEST_CASE("evaluate obeys the product rule it is built from") {
  std::mt19937_64 rng(5);
  for (const auto& model : random_corpus(8, 10)) {
    const auto phi = model.projection();
    const DerivationComplex complex(phi);
    const auto& source = phi->source();
    const auto& target = phi->target();
    for (int n = 1; n <= 5; ++n) {
      const auto& s = complex.slice(n);
      if (s.empty()) continue;
      Vector coords(s.size());
      for (auto& q : coords) q = testing::draw(rng, -2, 2);
      const auto theta = complex.derivation(n, coords);
      const int p = testing::random_populated_degree(rng, source, 10);
      const int q = testing::random_populated_degree(rng, source, 10);
      const auto x = testing::random_element(rng, source, p);
      const auto y = testing::random_element(rng, source, q);
      const Element rhs = target.multiply(theta.evaluate(x), phi->apply(y)) +
                          Rational((n * p) % 2 ? -1 : 1) * target.multiply(phi->apply(x), theta.evaluate(y));
      CHECK(theta.evaluate(source.multiply(x, y)) == rhs);
    }
  }
}

TEST_CASE("D matrices square to zero and match the reference construction") {
  for (const auto& model : random_corpus(21, 12)) {
    for (const auto& phi : {model.projection(), identity_of(model.fibre_ptr())}) {
      const DerivationComplex complex(phi);
      for (int n = 1; n <= model.max_generator_degree() + 1; ++n) {
        CHECK((complex.d_matrix(n - 1) * complex.d_matrix(n)).is_zero());
        CHECK(oracle::bareiss_rank(complex.d_matrix(n)) == oracle::bareiss_rank(oracle::d_matrix(phi, n)));
        CHECK(complex.slice(n).size() == oracle::slice(*phi, n).coords.size());
      }
    }
  }
}

TEST_CASE("homology and evaluation dims match the reference") {
  for (const auto& model : random_corpus(34, 12)) {
    for (const auto& phi : {model.projection(), identity_of(model.fibre_ptr())}) {
      const DerivationComplex complex(phi);
      for (int n = 2; n <= 8; ++n) {
        CHECK(complex.homology(n).dim() == oracle::homology_dim(phi, n));
        CHECK(complex.evaluation_subgroup(n).dim() == oracle::evaluation_dim(phi, n));
      }
    }
  }
}

TEST_CASE("Gottlieb groups of CP^2") {
  const auto a = shared(testing::load_dga("cp2.dga"));
  const std::vector<std::size_t> expected{0, 0, 0, 1, 0};
  for (int n = 2; n <= 6; ++n) {
    const auto g = gottlieb_group(a, n);
    CHECK(g.dim() == expected[static_cast<std::size_t>(n - 2)]);
    CHECK(g.dim() == oracle::evaluation_dim(identity_of(a), n));
  }
  CHECK(gottlieb_group(a, 5).functionals.basis().front() == Vector{1});
}

TEST_CASE("Gottlieb groups of odd spheres and products") {
  const auto s3 = shared(testing::load_dga("s3.dga"));
  CHECK(gottlieb_group(s3, 3).dim() == 1);
  const auto s3s3 = shared(testing::load_dga("s3xs3.dga"));
  CHECK(gottlieb_group(s3s3, 3).dim() == 2);
  const auto s4 = shared(testing::load_dga("s4.dga"));
  CHECK(gottlieb_group(s4, 4).dim() == 0);
  CHECK(gottlieb_group(s4, 7).dim() == 1);
}

TEST_CASE("derivation homology of CP^2 in degree 3") {
  const auto a = shared(testing::load_dga("cp2.dga"));
  const DerivationComplex complex(identity_of(a));
  const auto h = complex.homology(3);
  REQUIRE(h.dim() == 1);
  CHECK(format_element(*a, h.representatives[0].value(a->index_of("v5"))) == "v2");
  const auto cls = h.class_coordinates(complex.coordinates(h.representatives[0]));
  REQUIRE(cls);
  CHECK(*cls == Vector{1});
}

TEST_CASE("is_boundary returns a preimage") {
  const auto a = shared(testing::load_dga("cp2.dga"));
  const DerivationComplex complex(identity_of(a));
  // θ(v5) = v2^2 is D of the degree-2 derivation v2 -> 1, up to a factor.
  PhiDerivation theta(complex.phi_ptr(), 1);
  theta.set_value(a->index_of("v5"), a->power(a->generator_element(a->index_of("v2")), 2));
  const auto pre = complex.is_boundary(theta);
  REQUIRE(pre);
  CHECK(complex.d_phi(*pre) == theta);
  PhiDerivation bad(complex.phi_ptr(), 2);
  bad.set_value(a->index_of("v2"), Element::scalar(1));
  CHECK_THROWS_AS(complex.is_boundary(bad), Error);
}

TEST_CASE("evaluation subgroup preconditions") {
  DgAlgebra a("a", {{"x", 3}, {"y", 4}});
  a.set_differential(0, a.generator_element(1));
  const auto p = shared(a);
  const DerivationComplex complex(identity_of(p));
  CHECK_THROWS_AS(complex.evaluation_subgroup(3), Error);
  const auto s3 = shared(testing::load_dga("s3.dga"));
  CHECK_THROWS_AS(gottlieb_group(s3, 1), Error);
}

TEST_CASE("set_value checks degrees") {
  const auto a = shared(testing::load_dga("cp2.dga"));
  PhiDerivation theta(identity_of(a), 3);
  CHECK_THROWS_AS(theta.set_value(a->index_of("v5"), Element::scalar(1)), Error);
}
