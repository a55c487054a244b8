#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "telescope/error.hpp"
#include "telescope/matrix.hpp"

using namespace telescope;

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(BigRational::parse("6/8").str() == "3/4");
  CHECK(BigRational::parse("-10/5").str() == "-2");
  CHECK(BigRational::parse("0/7").is_zero());
  CHECK(BigRational(3, -6).str() == "-1/2");
  for (const char* bad : {"", "1/0", "x", "1/2/3", "--1"}) {
    CHECK_THROWS_AS(BigRational::parse(bad), Error);
  }
}

TEST_CASE("rational arithmetic") {
  const BigRational a(1, 3), b(1, 6);
  CHECK(a + b == BigRational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == BigRational(1, 18));
  CHECK(a / b == BigRational(2));
  CHECK(BigRational(2, 3).pow(-2) == BigRational(9, 4));
  CHECK(BigRational(-3).abs() == BigRational(3));
  CHECK(BigRational(1, 3) < BigRational(1, 2));
  CHECK_THROWS(BigRational(0).reciprocal());
  // Large values stay exact.
  BigRational x(1);
  for (int i = 0; i < 200; ++i) x *= BigRational(3, 2);
  for (int i = 0; i < 200; ++i) x /= BigRational(3, 2);
  CHECK(x == BigRational(1));
}

TEST_CASE("gaussian rationals") {
  const GaussianRational l = GaussianRational::parse("3/5+4/5i");
  CHECK(l.re() == BigRational(3, 5));
  CHECK(l.im() == BigRational(4, 5));
  CHECK(l.norm2() == BigRational(1));
  CHECK(l * l.conj() == GaussianRational(1));
  CHECK(l * l.reciprocal() == GaussianRational(1));
  CHECK(GaussianRational::parse("-1/2i") == GaussianRational(BigRational(0), BigRational(-1, 2)));
  CHECK(l.pow(2) == GaussianRational(BigRational(-7, 25), BigRational(24, 25)));
  CHECK_THROWS_AS(GaussianRational::parse("3/5+"), Error);
}

TEST_CASE("lcm of denominators") {
  const BigRational v[] = {BigRational(1, 2), BigRational(1, 3), BigRational(5, 4)};
  CHECK(lcm_of_denominators(v, 3) == 12);
}

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int rank_cap) {
  std::uniform_int_distribution<int> e(-2, 2);
  RationalMatrix a(r, static_cast<std::size_t>(rank_cap)), b(static_cast<std::size_t>(rank_cap), c);
  for (std::size_t i = 0; i < r; ++i)
    for (int j = 0; j < rank_cap; ++j) a(i, static_cast<std::size_t>(j)) = e(rng);
  for (int i = 0; i < rank_cap; ++i)
    for (std::size_t j = 0; j < c; ++j) b(static_cast<std::size_t>(i), j) = e(rng);
  return a * b;
}

}  // namespace

TEST_CASE("rank, kernel, image and cokernel are consistent") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    const RationalMatrix a = random_matrix(rng, r, c, 1 + static_cast<int>(rng() % 4));
    const std::size_t rk = rank(a);
    const RationalMatrix k = kernel_basis(a);
    CHECK(k.cols() == c - rk);
    CHECK((a * k).is_zero());
    CHECK(rank(k) == k.cols());
    const RationalMatrix im = image_basis(a);
    CHECK(im.cols() == rk);
    const RationalMatrix co = cokernel_basis(a);
    CHECK(rank(hstack(im, co)) == r);
    const auto s = summarize(a);
    CHECK(s.rank + s.nullity == c);
    CHECK(s.rank + s.corank == r);
  }
}

TEST_CASE("solve_in_span") {
  RationalMatrix s(3, 2);
  s(0, 0) = 1;
  s(1, 1) = 1;
  s(2, 0) = 1;
  s(2, 1) = 1;
  RationalMatrix b(3, 1);
  b(0, 0) = 2;
  b(1, 0) = 3;
  b(2, 0) = 5;
  auto x = solve_in_span(s, b);
  REQUIRE(x);
  CHECK(s * *x == b);
  b(2, 0) = 6;
  CHECK_FALSE(solve_in_span(s, b));
}

TEST_CASE("matrix algebra basics") {
  RationalMatrix a(2, 3);
  a(0, 1) = BigRational(1, 2);
  a(1, 2) = 3;
  CHECK(a.transpose().transpose() == a);
  CHECK((RationalMatrix::identity(2) * a) == a);
  CHECK(a.block(0, 1, 2, 2)(1, 1) == BigRational(3));
  CHECK_THROWS_AS(a * a, std::invalid_argument);
  CHECK(RationalMatrix::identity(4).trace() == BigRational(4));
}
