#pragma once

// Seeded generators for random validated complexes and chain self-maps.

#include <cstdint>
#include <random>

#include "telescope/complex.hpp"

namespace telescope {

using Rng = std::mt19937_64;

struct PopulationShape {
  std::size_t max_rank = 3;
  int max_degree = 2;  // complexes live in degrees 0..d with d <= max_degree
  int entry_bound = 2;
};

/// Complex over Q (or over Q[pi] with rational boundaries) with d o d = 0:
/// each boundary is a random combination of the kernel of the previous one.
ChainComplex random_complex(Rng& rng, const PopulationShape& shape, const GroupPtr& group = FiniteGroup::trivial());

/// Random chain self-map: a random combination of a basis of solutions of
/// h d = d h, plus u * I for a random u in Q[pi] when pi is nontrivial.
ChainMap random_self_map(Rng& rng, const ChainComplex& p, int entry_bound = 2);

struct SelfMapCase {
  ChainComplex p;
  ChainMap h;
};

/// Case i of the seeded population; every fourth case is over Z/2.
SelfMapCase population_case(std::uint64_t seed, std::size_t i, const PopulationShape& shape = {});

}  // namespace telescope
