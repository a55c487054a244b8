#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "telescope/certificates.hpp"
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

ChainMap scalar_map(long v) {
  auto triv = FiniteGroup::trivial();
  const ChainComplex p = ChainComplex::make(RingTag::Rational, triv, 0, {1}, {});
  RationalMatrix m(1, 1);
  m(0, 0) = v;
  return ChainMap{p, p, {{0, LaurentMatrix::constant(GroupAlgebraMatrix::from_rational(triv, m))}}};
}

/// dH + Hd - I on the Laurent level, from the certificate's own torus and homotopy.
oracle::Dense defect(const ContractionCertificate& c, int j) {
  const ChainComplex& t = c.torus;
  const std::size_t g = t.group->order();
  auto hom = [&](int i) {
    auto it = c.homotopy.find(i);
    return it == c.homotopy.end() ? oracle::Dense{t.rank(i + 1) * g, t.rank(i) * g, {}} : oracle::Dense::from(it->second);
  };
  return oracle::Dense::from(t.boundary(j + 1)) * hom(j) + hom(j - 1) * oracle::Dense::from(t.boundary(j)) -
         oracle::identity(t.rank(j) * g);
}

GroupRingElement z2(long e_num, long g_num, long den) {
  return GroupRingElement(FiniteGroup::cyclic(2), {BigRational(e_num, den), BigRational(g_num, den)});
}

}  // namespace

TEST_CASE("plus certificate for h = 1") {
  const ContractionCertificate c = plus_contraction(scalar_map(1), Weight(BigRational(1, 2)), 8);
  CHECK(c.verified);
  CHECK(c.identity == "plus");
  CHECK(c.slack == 1);
  CHECK(c.interior == std::make_pair(0, 7));
  CHECK(c.overflow_band == std::make_pair(8, 9));
  REQUIRE(c.margin_k);
  CHECK(*c.margin_k == doctest::Approx(0.5));
  CHECK(c.series_converges);
  for (int j = c.torus.d_min; j <= c.torus.d_max(); ++j) {
    const oracle::Dense d = defect(c, j);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms.begin()->first == 9);
  }
}

TEST_CASE("plus certificate for h = 0 has no margin") {
  const ContractionCertificate c = plus_contraction(scalar_map(0), Weight(BigRational(3)), 4);
  CHECK(c.verified);
  CHECK_FALSE(c.margin_k);
  CHECK(c.slack == 0);
}

TEST_CASE("certificates over the population agree with the dense oracle") {
  for (std::size_t i = 0; i < 12; ++i) {
    const SelfMapCase pc = population_case(42, i);
    const ContractionCertificate plus = plus_contraction(pc.h, Weight(BigRational(2, 3)), 5);
    CHECK(plus.verified);
    for (int j = plus.torus.d_min; j <= plus.torus.d_max(); ++j)
      for (const auto& [deg, term] : defect(plus, j).terms) CHECK(deg == 6);
    const ContractionCertificate minus = minus_contraction(pc.h, Weight(BigRational(2, 3)), 5);
    CHECK(minus.verified);
    CHECK(minus.window == std::make_pair(-5, 0));
    for (const auto& [name, ok] : minus.checks) CHECK_MESSAGE(ok, name);
  }
}

TEST_CASE("a tampered homotopy is caught by the oracle") {
  ContractionCertificate c = plus_contraction(scalar_map(2), Weight(BigRational(1, 4)), 6);
  REQUIRE(c.verified);
  auto it = std::find_if(c.homotopy.begin(), c.homotopy.end(),
                         [](const auto& e) { return e.second.rows() > 0 && e.second.cols() > 0; });
  REQUIRE(it != c.homotopy.end());
  GroupAlgebraMatrix bump(it->second.group(), it->second.rows(), it->second.cols());
  bump(0, 0) = GroupRingElement::one(it->second.group());
  it->second.add_term(2, bump);
  bool low_degree_defect = false;
  for (int j = c.torus.d_min; j <= c.torus.d_max(); ++j)
    for (const auto& [deg, term] : defect(c, j).terms) low_degree_defect = low_degree_defect || deg <= 6;
  CHECK(low_degree_defect);
}

TEST_CASE("depth checks") {
  CHECK(code_of([] { geometric_inverse(total_matrix(scalar_map(1)), -1); }) == ErrorCode::DepthTooSmall);
  CHECK(code_of([] { plus_contraction(scalar_map(1), Weight(BigRational(1)), 0); }) == ErrorCode::DepthTooSmall);
  CHECK(code_of([] { minus_contraction(scalar_map(1), Weight(BigRational(1)), 0); }) == ErrorCode::DepthTooSmall);
}

TEST_CASE("geometric inverse") {
  const GroupAlgebraMatrix h = total_matrix(scalar_map(3));
  for (int n = 0; n <= 6; ++n) {
    const GeometricInverse g = geometric_inverse(h, n);
    CHECK(g.verified);
    CHECK(g.remainder.coefficient(n + 1)(0, 0)[0] == BigRational(3).pow(n + 1));
    CHECK_FALSE(g.remainder_zero);
  }
  CHECK(geometric_inverse(total_matrix(scalar_map(0)), 3).remainder_zero);
}

TEST_CASE("Novikov sides") {
  const ChainMap h = scalar_map(2);
  const NovikovCertificate z = novikov_vanishing(h, NovikovSide::Z, 5);
  CHECK(z.verified);
  CHECK(z.remainder_exponent == 6);
  CHECK(code_of([&] { novikov_vanishing(h, NovikovSide::ZInverse, 5); }) == ErrorCode::MissingInverse);
  CHECK(code_of([&] { novikov_vanishing(h, NovikovSide::ZInverse, 5, scalar_map(3)); }) == ErrorCode::MissingInverse);
  ChainMap inv = scalar_map(1);
  RationalMatrix half(1, 1);
  half(0, 0) = BigRational(1, 2);
  inv.components[0] = LaurentMatrix::constant(GroupAlgebraMatrix::from_rational(FiniteGroup::trivial(), half));
  const NovikovCertificate zi = novikov_vanishing(h, NovikovSide::ZInverse, 5, inv);
  CHECK(zi.verified);
  REQUIRE(zi.factorization_verified);
  CHECK(*zi.factorization_verified);
  CHECK(zi.remainder_exponent == -6);
  CHECK(zi.remainder.min_degree() == -6);
}

TEST_CASE("wall complex construction and errors") {
  const WallComplex w = wall_complex(z2(1, 1, 2));
  CHECK(w.ell == BigRational(2));
  CHECK(w.extended.plus);
  CHECK_FALSE(w.extended.minus);
  CHECK(code_of([] { wall_complex(z2(1, 1, 1)); }) == ErrorCode::NotIdempotent);
  CHECK(code_of([] { wall_complex(z2(1, 1, 2), BigRational(1)); }) == ErrorCode::BadScale);
  CHECK(code_of([] { wall_complex(z2(1, 1, 2), BigRational(-2)); }) == ErrorCode::BadScale);
  CHECK(code_of([] { wall_complex(z2(1, 1, 2), BigRational(5, 2)); }) == ErrorCode::BadScale);
  // (e + t)/2 for a transposition in S3 is idempotent but not central.
  auto s3 = FiniteGroup::symmetric(3);
  std::size_t t = 0;
  for (std::size_t g = 1; g < 6; ++g)
    if (s3->mul(g, g) == 0) t = g;
  GroupRingElement p(s3);
  p[0] = BigRational(1, 2);
  p[t] = BigRational(1, 2);
  CHECK(code_of([&] { wall_complex(p); }) == ErrorCode::NotIdempotent);
  const WallComplex tr = wall_complex_transpose(z2(1, 1, 2));
  CHECK(tr.transpose);
  CHECK(tr.extended.minus);
}

TEST_CASE("wall classes") {
  const WallEulerReport half = wall_euler_class(wall_complex(z2(1, 1, 2)), 6);
  CHECK(half.character.strings() == std::vector<std::string>{"1", "1"});
  CHECK(half.stable);
  CHECK(half.injective);
  CHECK(half.matches_image_of_p);
  CHECK_FALSE(half.reduced_zero);
  const WallEulerReport other = wall_euler_class(wall_complex(z2(1, -1, 2)), 6);
  CHECK(other.character.strings() == std::vector<std::string>{"1", "-1"});
  const WallEulerReport unit = wall_euler_class(wall_complex(z2(1, 0, 1)), 6);
  CHECK(unit.reduced_zero);
  CHECK(wall_euler_class(wall_complex(z2(0, 0, 1)), 6).character.is_zero());
  CHECK(wall_euler_class(wall_complex_transpose(z2(1, 1, 2)), 6).character.is_zero());
}

TEST_CASE("transpose inverse") {
  for (long ell : {2L, 4L}) {
    const WallComplex ct = wall_complex_transpose(z2(1, 1, 2), BigRational(ell));
    for (int n : {1, 3, 6}) {
      const TransposeInverse ti = transpose_inverse(ct, n);
      CHECK(ti.exact_identity);
      CHECK(ti.window_identity);
      CHECK(ti.remainder.min_degree() == -(n + 1));
    }
  }
}

TEST_CASE("extended complexes check side closure") {
  auto triv = FiniteGroup::trivial();
  const ChainComplex c = ChainComplex::make(RingTag::Laurent, triv, 0, {1, 1},
                                            {LaurentMatrix::monomial(-1, GroupAlgebraMatrix::identity(triv, 1))});
  CHECK(minus_side_closed(c));
  CHECK_FALSE(plus_side_closed(c));
  CHECK(code_of([&] { make_extended(c, true, false); }) == ErrorCode::DimensionMismatch);
  CHECK(make_extended(c, false, true).minus);
}
