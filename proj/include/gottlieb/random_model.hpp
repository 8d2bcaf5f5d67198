#pragma once

// Seeded random Koszul-Sullivan models with minimal total algebra.

#include <cstdint>
#include <random>
#include <vector>

#include "gottlieb/fibration.hpp"

namespace gottlieb {

struct RandomModelOptions {
  int max_base_generators = 3;
  int base_min_degree = 2;
  int base_max_degree = 8;
  int max_fibre_generators = 4;
  int fibre_min_degree = 2;
  int fibre_max_degree = 11;
  /// Redraws of one differential before it falls back to zero.
  int max_attempts = 32;
};

/// A valid model whose base, fibre and total algebras are all minimal.
/// Differentials are drawn from degree-compatible decomposable monomials and
/// twisting terms from monomials w*m with exactly one base letter; d^2 = 0 is
/// enforced by rejection.
KsModel random_ks_model(std::mt19937_64& rng, const std::string& name,
                        const RandomModelOptions& options = {});

std::vector<KsModel> random_corpus(std::uint64_t seed, std::size_t count,
                                   const RandomModelOptions& options = {});

}  // namespace gottlieb
