#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gottlieb/algebra.hpp"
#include "gottlieb/dsl.hpp"
#include "gottlieb/fibration.hpp"

namespace testing {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string model_path(const std::string& file) {
  return std::string(GOTTLIEB_MODELS_DIR) + "/" + file;
}

inline gottlieb::DgAlgebra load_dga(const std::string& file) {
  return gottlieb::parse_dga(slurp(model_path(file)));
}

inline gottlieb::KsModel load_ks(const std::string& file) {
  return gottlieb::parse_ks(slurp(model_path(file)));
}

inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random element of the given degree with small integer coefficients; zero
/// when that degree is empty.
inline gottlieb::Element random_element(std::mt19937_64& rng, const gottlieb::DgAlgebra& a,
                                        int degree) {
  gottlieb::Element out;
  const auto& basis = a.basis_of_degree(degree);
  if (basis.empty()) return out;
  const int terms = draw(rng, 1, 3);
  for (int i = 0; i < terms; ++i) {
    const auto& m = basis[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(basis.size()) - 1))];
    out += gottlieb::Element::of(m, draw(rng, -3, 3));
  }
  return out;
}

/// A degree in [0, max_degree] whose monomial basis is nonempty.
inline int random_populated_degree(std::mt19937_64& rng, const gottlieb::DgAlgebra& a,
                                   int max_degree) {
  for (int tries = 0; tries < 64; ++tries) {
    const int d = draw(rng, 0, max_degree);
    if (!a.basis_of_degree(d).empty()) return d;
  }
  return 0;
}

}  // namespace testing
