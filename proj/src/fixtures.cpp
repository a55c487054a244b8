#include "telescope/fixtures.hpp"

#include <algorithm>

#include "telescope/error.hpp"
#include "telescope/io.hpp"
#include "telescope/parallel.hpp"
#include "telescope/population.hpp"
#include "telescope/spectral.hpp"

namespace telescope {

using nlohmann::json;

bool FixtureResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.passed; });
}

void FixtureResult::check(std::string name, json expected, json observed) {
  const bool ok = expected == observed;
  checks.push_back({std::move(name), ok, std::move(expected), std::move(observed)});
}

void FixtureResult::check(std::string name, bool ok, json expected, json observed) {
  checks.push_back({std::move(name), ok, std::move(expected), std::move(observed)});
}

json FixtureResult::to_json() const {
  json list = json::array();
  for (const auto& c : checks)
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"expected", c.expected}, {"observed", c.observed}});
  return {{"name", name}, {"exploratory", exploratory}, {"passed", passed()}, {"checks", list}};
}

ChainComplex fixture_euler_all_integers(long n) {
  const auto even = static_cast<std::size_t>(1 + std::max(n, 0L));
  const auto odd = static_cast<std::size_t>(1 + std::max(-n, 0L));
  auto group = FiniteGroup::trivial();
  return ChainComplex::make(RingTag::Rational, group, 0, {even, odd}, {LaurentMatrix(group, even, odd)});
}

namespace {

GroupRingElement z2_element(const GroupPtr& z2, long e_num, long g_num, long den) {
  return GroupRingElement(z2, {BigRational(e_num, den), BigRational(g_num, den)});
}

json chars(const VirtualCharacter& chi) { return chi.strings(); }

json homology_characters(const HomologyReport& h) {
  json out = json::object();
  for (const auto& d : h.degrees)
    out[std::to_string(d.degree)] = d.character ? chars(*d.character) : json(d.dim);
  return out;
}

}  // namespace

FixtureResult fixture_z2_wall(int depth) {
  FixtureResult r{"z2-wall", false, {}};
  auto z2 = FiniteGroup::cyclic(2);

  const WallComplex wall = wall_complex(z2_element(z2, 1, 1, 2), BigRational(2));
  const WallEulerReport rep = wall_euler_class(wall, depth);
  r.check("character", json{"1", "1"}, chars(rep.character));
  r.check("character_next_depth", chars(rep.character), chars(rep.character_next));
  r.check("matches_image_of_p", true, rep.matches_image_of_p);
  r.check("reduced_nonzero", true, !rep.reduced_zero);
  r.check("depth_stable", true, wall_euler_class(wall, depth + 2).character == rep.character);

  const WallEulerReport zero = wall_euler_class(wall_complex(GroupRingElement::zero(z2)), depth);
  r.check("p_zero_character", json{"0", "0"}, chars(zero.character));

  const WallEulerReport unit = wall_euler_class(wall_complex(GroupRingElement::one(z2)), depth);
  r.check("p_e_character", chars(VirtualCharacter::regular(z2)), chars(unit.character));
  r.check("p_e_reduced_zero", true, unit.reduced_zero);

  // Duality sign law on the z = 1 specialization, degree by degree.
  const ChainComplex c1 = specialize(wall.extended.base, GaussianRational(1));
  const HomologyReport h1 = homology(c1);
  const VirtualCharacter chi1 = equivariant_euler(c1).from_homology;
  for (int n : {2, 3}) {
    const ChainComplex d = dual_complex(c1, n);
    const HomologyReport hd = homology(d);
    json expected = json::object();
    for (const auto& deg : h1.degrees)
      expected[std::to_string(n - deg.degree)] = chars(deg.character->conjugate());
    r.check("dual_homology_n" + std::to_string(n), expected, homology_characters(hd));
    const VirtualCharacter chid = equivariant_euler(d).from_homology;
    const VirtualCharacter law = n % 2 == 0 ? chi1.conjugate() : -chi1.conjugate();
    r.check("dual_euler_sign_n" + std::to_string(n), chars(law), chars(chid));
    r.check("dual_dimension_sign_n" + std::to_string(n), (n % 2 == 0 ? 1 : -1) * euler_characteristic(c1),
            euler_characteristic(d));
  }
  return r;
}

FixtureResult fixture_transpose_duality(int depth) {
  FixtureResult r{"transpose-duality", false, {}};
  auto z2 = FiniteGroup::cyclic(2);
  const GroupRingElement p = z2_element(z2, 1, 1, 2);

  for (long ell : {2L, 4L}) {
    const std::string tag = "_ell" + std::to_string(ell);
    const WallComplex c = wall_complex(p, BigRational(ell));
    const WallComplex ct = wall_complex_transpose(p, BigRational(ell));
    r.check("class_c" + tag, json{"1", "1"}, chars(wall_euler_class(c, depth).character));
    r.check("class_ct" + tag, json{"0", "0"}, chars(wall_euler_class(ct, depth).character));
    const TransposeInverse inv = transpose_inverse(ct, depth);
    r.check("exact_identity" + tag, true, inv.exact_identity);
    r.check("window_identity" + tag, true, inv.window_identity);
  }

  const GroupRingElement zero = GroupRingElement::zero(z2);
  r.check("p_zero_class_c", json{"0", "0"}, chars(wall_euler_class(wall_complex(zero), depth).character));
  r.check("p_zero_class_ct", json{"0", "0"}, chars(wall_euler_class(wall_complex_transpose(zero), depth).character));
  return r;
}

FixtureResult fixture_euler_range(long lo, long hi) {
  FixtureResult r{"euler-all-integers", false, {}};
  for (long n = lo; n <= hi; ++n) {
    const ChainComplex c = fixture_euler_all_integers(n);
    validate_complex(c);
    const HomologyReport h = homology(c);
    long from_homology = 0;
    for (const auto& d : h.degrees) from_homology += (d.degree % 2 == 0 ? 1 : -1) * static_cast<long>(d.dim);
    r.check("chi_" + std::to_string(n), json{n, n}, json{euler_characteristic(c), from_homology});
  }
  return r;
}

FixtureResult fixture_contraction_population(std::uint64_t seed, std::size_t count, int depth) {
  FixtureResult r{"contraction-population", false, {}};
  struct Outcome {
    bool plus = false, minus = false, inverse = false;
  };
  std::vector<Outcome> out(count);
  parallel_for(count, [&](std::size_t i) {
    const SelfMapCase c = population_case(seed, i);
    const Weight k(BigRational(1, 2));
    out[i].plus = plus_contraction(c.h, k, depth).verified;
    out[i].minus = minus_contraction(c.h, k, depth).verified;
    out[i].inverse = geometric_inverse(total_matrix(c.h), depth).verified;
  });
  auto failures = [&](bool Outcome::*field) {
    json bad = json::array();
    for (std::size_t i = 0; i < count; ++i)
      if (!(out[i].*field)) bad.push_back(i);
    return bad;
  };
  r.check("plus_verified_failures", json::array(), failures(&Outcome::plus));
  r.check("minus_verified_failures", json::array(), failures(&Outcome::minus));
  r.check("geometric_inverse_failures", json::array(), failures(&Outcome::inverse));
  return r;
}

FixtureResult fixture_ray_index(std::vector<int> depths) {
  FixtureResult r{"ray-index", true, {}};
  const IndexReport rep = index_window_experiment(ray_model(), 1.0, {0.25, 0.5, 2.0, 4.0}, std::move(depths));
  for (const auto& p : rep.points) {
    const std::string name = "k_" + json(p.k).dump();
    if (!p.stable) {
      r.check(name + "_unstable", true, p.expected ? json(*p.expected) : json(nullptr), nullptr);
      continue;
    }
    r.check(name, p.matches.value_or(true), p.expected ? json(*p.expected) : json(nullptr), *p.stabilized_index);
  }
  return r;
}

const std::vector<FixtureEntry>& fixture_registry() {
  static const std::vector<FixtureEntry> registry = {
      {"euler-all-integers", "complexes over Q with every Euler characteristic in -5..5",
       [](std::uint64_t) { return fixture_euler_range(); }},
      {"z2-wall", "Z/2 wall complex with p = (e+g)/2, ell = 2: class (1,1), not reduced to zero",
       [](std::uint64_t) { return fixture_z2_wall(); }},
      {"transpose-duality", "wall complex against its transpose, ell in {2, 4}",
       [](std::uint64_t) { return fixture_transpose_duality(); }},
      {"contraction-population", "plus/minus contractions at depth 8 over 50 seeded self-maps",
       [](std::uint64_t seed) { return fixture_contraction_population(seed); }},
      {"ray-index", "exploratory window index of the ray model",
       [](std::uint64_t) { return fixture_ray_index(); }},
  };
  return registry;
}

FixtureResult run_fixture(const std::string& name, std::uint64_t seed) {
  for (const auto& f : fixture_registry())
    if (f.name == name) return f.run(seed);
  json known = json::array();
  for (const auto& f : fixture_registry()) known.push_back(f.name);
  throw Error(ErrorCode::ParseError, "unknown fixture '" + name + "'", {{"fixture", name}, {"known", known}});
}

std::vector<FixtureResult> run_all_fixtures(std::uint64_t seed) {
  const auto& reg = fixture_registry();
  std::vector<FixtureResult> out(reg.size());
  for (std::size_t i = 0; i < reg.size(); ++i) out[i] = reg[i].run(seed);
  return out;
}

}  // namespace telescope
