#include "gottlieb/random_model.hpp"

#include <optional>
#include <string>

namespace gottlieb {

namespace {

// Uniform in [lo, hi]; written out so corpora agree across standard libraries.
int draw(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng() % span);
}

bool coin(std::mt19937_64& rng, int percent) { return draw(rng, 1, 100) <= percent; }

std::vector<Generator> draw_generators(std::mt19937_64& rng, const std::string& prefix,
                                       int count, int lo, int hi) {
  std::vector<Generator> gens;
  for (int i = 0; i < count; ++i) {
    const int degree = draw(rng, lo, hi);
    gens.push_back({prefix + std::to_string(i + 1) + "d" + std::to_string(degree), degree});
  }
  return gens;
}

Element sparse_combination(std::mt19937_64& rng, const std::vector<Monomial>& candidates) {
  Element out;
  if (candidates.empty()) return out;
  const int terms = draw(rng, 1, std::min<int>(2, static_cast<int>(candidates.size())));
  for (int i = 0; i < terms; ++i) {
    const auto& m = candidates[static_cast<std::size_t>(
        draw(rng, 0, static_cast<int>(candidates.size()) - 1))];
    int c = 0;
    while (c == 0) c = draw(rng, -2, 2);
    out += Element::of(m, c);
  }
  return out;
}

std::vector<Monomial> decomposables(const DgAlgebra& algebra, int degree) {
  std::vector<Monomial> out;
  for (const auto& m : algebra.basis_of_degree(degree)) {
    if (m.word_length() >= 2) out.push_back(m);
  }
  return out;
}

// Sets d on every generator in order, redrawing until d(d(g)) = 0.
void fill_differentials(std::mt19937_64& rng, DgAlgebra& algebra, int percent,
                        int max_attempts) {
  for (GenIndex g = 0; g < algebra.size(); ++g) {
    if (!coin(rng, percent)) continue;
    const auto candidates = decomposables(algebra, algebra.generator(g).degree + 1);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      auto value = sparse_combination(rng, candidates);
      if (algebra.apply_d(value).is_zero()) {
        algebra.set_differential(g, std::move(value));
        break;
      }
    }
  }
}

std::optional<KsModel> try_random_model(std::mt19937_64& rng, const std::string& name,
                                        const RandomModelOptions& options) {
  DgAlgebra base(name + "base",
                 draw_generators(rng, "w", draw(rng, 1, options.max_base_generators),
                                 options.base_min_degree, options.base_max_degree));
  fill_differentials(rng, base, 60, options.max_attempts);
  DgAlgebra fibre(name + "fibre",
                  draw_generators(rng, "v", draw(rng, 1, options.max_fibre_generators),
                                  options.fibre_min_degree, options.fibre_max_degree));
  fill_differentials(rng, fibre, 70, options.max_attempts);

  const KsModel untwisted(name, base, fibre);
  DgAlgebra total = untwisted.total();
  std::map<std::string, Element> twisting;
  for (GenIndex v = 0; v < fibre.size(); ++v) {
    const auto t = untwisted.total_index_of_fibre(v);
    std::vector<Monomial> candidates;
    for (const auto& m : total.basis_of_degree(total.generator(t).degree + 1)) {
      if (untwisted.base_word_count(m) == 1 && m.word_length() >= 2) candidates.push_back(m);
    }
    const Element untouched = total.differential(t);
    // Twisting of lower generators can break d^2 = 0 here, so an untwisted
    // generator may still need a twisting term.
    const bool wants_twist = !candidates.empty() && coin(rng, 75);
    bool done = !wants_twist && total.apply_d(untouched).is_zero();
    for (int attempt = 0; !done && attempt < options.max_attempts; ++attempt) {
      const Element value = untouched + sparse_combination(rng, candidates);
      if (total.apply_d(value).is_zero()) {
        if (value != untouched) {
          total.set_differential(t, value);
          twisting.emplace(total.generator(t).name, value);
        }
        done = true;
      }
    }
    if (!done) return std::nullopt;
  }
  return KsModel(name, std::move(base), std::move(fibre), twisting);
}

}  // namespace

KsModel random_ks_model(std::mt19937_64& rng, const std::string& name,
                        const RandomModelOptions& options) {
  while (true) {
    if (auto model = try_random_model(rng, name, options)) return std::move(*model);
  }
}

std::vector<KsModel> random_corpus(std::uint64_t seed, std::size_t count,
                                   const RandomModelOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<KsModel> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_ks_model(rng, "m" + std::to_string(i), options));
  }
  return out;
}

}  // namespace gottlieb
