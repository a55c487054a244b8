#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "telescope/error.hpp"
#include "telescope/population.hpp"

using namespace telescope;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

LaurentMatrix scalar(const GroupPtr& g, long v) {
  RationalMatrix m(1, 1);
  m(0, 0) = v;
  return LaurentMatrix::constant(GroupAlgebraMatrix::from_rational(g, m));
}

ChainComplex point(const GroupPtr& g) { return ChainComplex::make(g->order() == 1 ? RingTag::Rational : RingTag::GroupRing, g, 0, {1}, {}); }

}  // namespace

TEST_CASE("make rejects inconsistent shapes") {
  auto triv = FiniteGroup::trivial();
  CHECK(code_of([&] { ChainComplex::make(RingTag::Rational, triv, 0, {1, 2}, {scalar(triv, 1)}); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { ChainComplex::make(RingTag::Rational, triv, 0, {1, 1}, {}); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] {
          ChainComplex::make(RingTag::Rational, triv, 0, {1, 1}, {LaurentMatrix::monomial(1, GroupAlgebraMatrix::identity(triv, 1))});
        }) == ErrorCode::LaurentRing);
}

TEST_CASE("validate_complex names the offending degree") {
  auto triv = FiniteGroup::trivial();
  const ChainComplex bad = ChainComplex::make(RingTag::Rational, triv, 0, {1, 1, 1}, {scalar(triv, 1), scalar(triv, 1)});
  try {
    validate_complex(bad);
    FAIL("expected NotAComplex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAComplex);
    CHECK(e.detail()["degree"] == 2);
  }
  const ChainComplex good = ChainComplex::make(RingTag::Rational, triv, 0, {1, 1, 1}, {scalar(triv, 1), scalar(triv, 0)});
  CHECK_NOTHROW(validate_complex(good));
}

TEST_CASE("homology dimensions match rank counts on random complexes") {
  for (std::size_t i = 0; i < 40; ++i) {
    Rng rng(100 + i);
    const GroupPtr g = i % 3 == 0 ? FiniteGroup::cyclic(2) : FiniteGroup::trivial();
    const ChainComplex c = validate_complex(random_complex(rng, PopulationShape{}, g));
    const HomologyReport h = homology(c);
    const std::size_t m = g->order();
    for (int j = c.d_min; j <= c.d_max(); ++j) {
      auto r = [&](int deg) {
        const LaurentMatrix d = c.boundary(deg);
        return d.rows() && d.cols() ? rank(oracle::regular(d.coefficient(0))) : std::size_t{0};
      };
      CHECK(h.dim(j) == c.rank(j) * m - r(j) - r(j + 1));
    }
    const EquivariantEuler eq = equivariant_euler(c);
    CHECK(eq.agree);
  }
}

TEST_CASE("homology witnesses are cycles") {
  auto triv = FiniteGroup::trivial();
  const ChainComplex c = ChainComplex::make(RingTag::Rational, triv, 0, {2, 1}, {[&] {
    RationalMatrix m(2, 1);
    m(0, 0) = 1;
    return LaurentMatrix::constant(GroupAlgebraMatrix::from_rational(triv, m));
  }()});
  const HomologyReport h = homology(c);
  CHECK(h.dim(0) == 1);
  CHECK(h.dim(1) == 0);
  REQUIRE(h.degrees[0].witnesses);
  CHECK(h.degrees[0].witnesses->cols() == 1);
}

TEST_CASE("mapping cone of the identity is acyclic") {
  for (std::size_t i = 0; i < 10; ++i) {
    Rng rng(200 + i);
    const ChainComplex c = validate_complex(random_complex(rng, PopulationShape{}));
    const ChainComplex cone = validate_complex(mapping_cone(identity_map(c)));
    CHECK(homology(cone).vanishes());
    CHECK(euler_characteristic(cone) == 0);
  }
}

TEST_CASE("chain map validation") {
  auto triv = FiniteGroup::trivial();
  const ChainComplex c = ChainComplex::make(RingTag::Rational, triv, 0, {1, 1}, {scalar(triv, 1)});
  ChainMap f{c, c, {{0, scalar(triv, 1)}, {1, scalar(triv, 2)}}};
  CHECK(code_of([&] { validate_chain_map(f); }) == ErrorCode::NotAChainMap);
  f.components[1] = scalar(triv, 1);
  CHECK_NOTHROW(validate_chain_map(f));
}

TEST_CASE("mapping torus specializations") {
  auto triv = FiniteGroup::trivial();
  const ChainComplex p = point(triv);
  const ChainMap h{p, p, {{0, scalar(triv, 1)}}};
  const ChainComplex t = validate_complex(mapping_torus(h));
  CHECK(t.ring == RingTag::Laurent);
  CHECK(t.ranks == std::vector<std::size_t>{1, 1});
  CHECK(code_of([&] { homology(t); }) == ErrorCode::LaurentRing);
  CHECK(code_of([&] { specialize(t, GaussianRational(0)); }) == ErrorCode::ZeroLambda);
  CHECK_FALSE(homology(specialize(t, GaussianRational(1))).vanishes());
  CHECK(homology(specialize(t, GaussianRational(2))).vanishes());
  const ChainComplex gi = specialize(t, GaussianRational::parse("3/5+4/5i"));
  CHECK(gi.ring == RingTag::GaussianGroupRing);
  CHECK(homology(gi).vanishes());
}

TEST_CASE("duality sign law and reversal") {
  for (std::size_t i = 0; i < 30; ++i) {
    Rng rng(300 + i);
    const GroupPtr g = i % 2 ? FiniteGroup::symmetric(3) : FiniteGroup::trivial();
    const ChainComplex c = validate_complex(random_complex(rng, PopulationShape{}, g));
    for (int n = 0; n <= 5; ++n) {
      const ChainComplex d = validate_complex(dual_complex(c, n));
      CHECK(euler_characteristic(d) == (n % 2 ? -1 : 1) * euler_characteristic(c));
      const VirtualCharacter chi = equivariant_euler(c).from_homology.conjugate();
      CHECK(equivariant_euler(d).from_homology == (n % 2 ? -chi : chi));
      CHECK(dual_complex(d, n).differentials.size() == c.differentials.size());
    }
    const ChainComplex lc = extend_to_laurent(c);
    CHECK(reverse_complex(reverse_complex(lc)).differentials == lc.differentials);
  }
}

TEST_CASE("ring tags round trip") {
  for (RingTag t : {RingTag::Rational, RingTag::GroupRing, RingTag::Laurent, RingTag::GaussianGroupRing})
    CHECK(ring_tag_from_string(to_string(t)) == t);
  CHECK(ring_tag_from_string("laurent") == RingTag::Laurent);
  CHECK(code_of([] { ring_tag_from_string("Z"); }) == ErrorCode::ParseError);
}
