#pragma once

// Slow reference computations used to cross-check the library. They share
// only the monomial arithmetic of DgAlgebra; ranks, bases of monomials,
// derivation slices and the evaluation of derivations are recomputed here.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "gottlieb/algebra.hpp"
#include "gottlieb/derivation.hpp"

namespace oracle {

using gottlieb::AlgebraMorphism;
using gottlieb::DgAlgebra;
using gottlieb::Element;
using gottlieb::GenIndex;
using gottlieb::Monomial;
using gottlieb::PhiDerivation;
using gottlieb::RatMatrix;
using gottlieb::Rational;

// Fraction-free Gaussian elimination on the integer matrix obtained by
// clearing the denominators of each row.
inline std::size_t bareiss_rank(const RatMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Exponent vectors e with sum e_i |g_i| = degree; odd generators get e_i <= 1.
inline std::vector<std::vector<unsigned>> exponent_vectors(const std::vector<int>& degrees,
                                                           int degree) {
  std::vector<std::vector<unsigned>> out;
  if (degree < 0) return out;
  std::vector<unsigned> e(degrees.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == degrees.size()) {
      if (remaining == 0) out.push_back(e);
      return;
    }
    const unsigned cap = degrees[i] % 2 ? 1u : static_cast<unsigned>(remaining / degrees[i]);
    for (unsigned k = 0; k <= cap && static_cast<int>(k) * degrees[i] <= remaining; ++k) {
      e[i] = k;
      self(self, i + 1, remaining - static_cast<int>(k) * degrees[i]);
    }
    e[i] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

inline std::vector<int> generator_degrees(const DgAlgebra& a) {
  std::vector<int> out;
  for (const auto& g : a.generators()) out.push_back(g.degree);
  return out;
}

inline std::vector<GenIndex> word_of(const std::vector<unsigned>& exponents) {
  std::vector<GenIndex> word;
  for (GenIndex g = 0; g < exponents.size(); ++g) word.insert(word.end(), exponents[g], g);
  return word;
}

inline std::vector<GenIndex> word_of(const Monomial& m) {
  std::vector<GenIndex> word;
  for (const auto& l : m.letters()) word.insert(word.end(), l.exponent, l.gen);
  return word;
}

inline Monomial monomial_of(const DgAlgebra& a, const std::vector<unsigned>& exponents) {
  return a.normalize(word_of(exponents)).monomial;
}

// θ(x_1...x_k) = Σ_i (-1)^(n(|x_1|+...+|x_{i-1}|)) φ(x_1...x_{i-1}) θ(x_i) φ(x_{i+1}...x_k).
inline Element evaluate_word(const PhiDerivation& theta, const std::vector<GenIndex>& word) {
  const auto& phi = theta.phi();
  const auto& source = theta.source();
  const auto& target = theta.target();
  Element total;
  int before = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    Element term = Element::scalar(1);
    for (std::size_t j = 0; j < i; ++j) term = target.multiply(term, phi.image(word[j]));
    term = target.multiply(term, theta.value(word[i]));
    for (std::size_t j = i + 1; j < word.size(); ++j) {
      term = target.multiply(term, phi.image(word[j]));
    }
    if ((theta.degree() * before) % 2 != 0) term = -term;
    total += term;
    before += source.generator(word[i]).degree;
  }
  if (word.empty()) return Element();
  return total;
}

inline Element evaluate(const PhiDerivation& theta, const Element& x) {
  Element out;
  for (const auto& [m, c] : x.terms()) out += c * evaluate_word(theta, word_of(m));
  return out;
}

struct Slice {
  std::vector<std::pair<GenIndex, Monomial>> coords;
  std::map<std::pair<GenIndex, Monomial>, std::size_t> index;
};

inline Slice slice(const AlgebraMorphism& phi, int n) {
  Slice s;
  if (n < 0) return s;
  const auto& target = phi.target();
  const auto degrees = generator_degrees(target);
  for (GenIndex g = 0; g < phi.source().size(); ++g) {
    for (const auto& e : exponent_vectors(degrees, phi.source().generator(g).degree - n)) {
      s.index.emplace(std::make_pair(g, monomial_of(target, e)), s.coords.size());
      s.coords.emplace_back(g, monomial_of(target, e));
    }
  }
  return s;
}

// Matrix of D: slice(n) -> slice(n - 1), built with the closed-form evaluation.
inline RatMatrix d_matrix(const std::shared_ptr<const AlgebraMorphism>& phi, int n) {
  const auto from = slice(*phi, n);
  const auto to = slice(*phi, n - 1);
  const auto& source = phi->source();
  const auto& target = phi->target();
  RatMatrix m(to.coords.size(), from.coords.size());
  if (n <= 0) return m;
  for (std::size_t c = 0; c < from.coords.size(); ++c) {
    PhiDerivation theta(phi, n);
    theta.set_value(from.coords[c].first, Element::of(from.coords[c].second));
    for (GenIndex h = 0; h < source.size(); ++h) {
      Element value = target.apply_d(theta.value(h));
      const Element correction = evaluate(theta, source.differential(h));
      if (n % 2 == 0) {
        value -= correction;
      } else {
        value += correction;
      }
      for (const auto& [mono, q] : value.terms()) m(to.index.at({h, mono}), c) = q;
    }
  }
  return m;
}

inline std::size_t homology_dim(const std::shared_ptr<const AlgebraMorphism>& phi, int n) {
  const auto size = slice(*phi, n).coords.size();
  return size - bareiss_rank(d_matrix(phi, n)) - bareiss_rank(d_matrix(phi, n + 1));
}

// dim ε_*(ker D_n) = nullity(D_n) - nullity(D_n stacked on the ε rows).
inline std::size_t evaluation_dim(const std::shared_ptr<const AlgebraMorphism>& phi, int n) {
  const auto s = slice(*phi, n);
  const auto d = d_matrix(phi, n);
  std::vector<std::size_t> unit_coords;
  for (std::size_t i = 0; i < s.coords.size(); ++i) {
    if (s.coords[i].second.is_unit()) unit_coords.push_back(i);
  }
  RatMatrix stacked(d.rows() + unit_coords.size(), d.cols());
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) stacked(r, c) = d(r, c);
  }
  for (std::size_t k = 0; k < unit_coords.size(); ++k) stacked(d.rows() + k, unit_coords[k]) = 1;
  const auto nullity = d.cols() - bareiss_rank(d);
  const auto stacked_nullity = d.cols() - bareiss_rank(stacked);
  return nullity - stacked_nullity;
}

// dim H^m(ΛV) from monomial enumeration and Bareiss ranks.
inline std::size_t cohomology_dim(const DgAlgebra& a, int m) {
  if (m < 0) return 0;
  const auto degrees = generator_degrees(a);
  auto d_rank = [&](int k) -> std::size_t {
    if (k < 0) return 0;
    const auto src = exponent_vectors(degrees, k);
    const auto dst = exponent_vectors(degrees, k + 1);
    std::map<Monomial, std::size_t> pos;
    for (std::size_t i = 0; i < dst.size(); ++i) pos.emplace(monomial_of(a, dst[i]), i);
    RatMatrix d(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const auto image = a.apply_d(Element::of(monomial_of(a, src[c])));
      for (const auto& [mono, q] : image.terms()) d(pos.at(mono), c) = q;
    }
    return bareiss_rank(d);
  };
  return exponent_vectors(degrees, m).size() - d_rank(m) - d_rank(m - 1);
}

}  // namespace oracle
