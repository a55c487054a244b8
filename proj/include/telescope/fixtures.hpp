#pragma once

// Worked examples as executable fixtures. Every run recomputes its
// expectations from scratch.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "telescope/certificates.hpp"

namespace telescope {

struct FixtureCheck {
  std::string name;
  bool passed = false;
  nlohmann::json expected;
  nlohmann::json observed;
};

struct FixtureResult {
  std::string name;
  bool exploratory = false;
  std::vector<FixtureCheck> checks;

  bool passed() const;
  void check(std::string name, nlohmann::json expected, nlohmann::json observed);
  void check(std::string name, bool ok, nlohmann::json expected, nlohmann::json observed);
  nlohmann::json to_json() const;
};

/// Finite complex over Q with Euler characteristic n: ranks
/// (1 + max(n,0), 1 + max(-n,0)) in degrees 0, 1 with zero boundary.
ChainComplex fixture_euler_all_integers(long n);

/// The Z/2 wall pipeline with p = (e+g)/2 and ell = 2, plus the p = 0 and
/// p = e variants and the duality sign law on the z = 1 specialization.
FixtureResult fixture_z2_wall(int depth = 6);

/// The wall complex against its transpose: classes [P] and 0, and an
/// exact truncated inverse of the transpose over Q.
FixtureResult fixture_transpose_duality(int depth = 6);

FixtureResult fixture_euler_range(long lo = -5, long hi = 5);

/// Plus and minus contractions and geometric inverses over the seeded
/// population.
FixtureResult fixture_contraction_population(std::uint64_t seed, std::size_t count = 50, int depth = 8);

/// Window index of the ray model at k in {1/4, 1/2, 2, 4}. Exploratory.
FixtureResult fixture_ray_index(std::vector<int> depths = {32, 64});

struct FixtureEntry {
  std::string name;
  std::string description;
  std::function<FixtureResult(std::uint64_t seed)> run;
};

const std::vector<FixtureEntry>& fixture_registry();

/// Throws ParseError for an unknown name.
FixtureResult run_fixture(const std::string& name, std::uint64_t seed);

/// Runs every fixture in registry order.
std::vector<FixtureResult> run_all_fixtures(std::uint64_t seed);

}  // namespace telescope
