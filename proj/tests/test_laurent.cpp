#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "telescope/error.hpp"
#include "telescope/numeric.hpp"

using namespace telescope;

namespace {

LaurentMatrix random_laurent(std::mt19937_64& rng, const GroupPtr& g, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> e(-2, 2);
  LaurentMatrix m(g, r, c);
  for (int d = lo; d <= hi; ++d) {
    GroupAlgebraMatrix t(g, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t x = 0; x < g->order(); ++x) t(i, j)[x] = e(rng);
    m.add_term(d, t);
  }
  return m;
}

bool same(const oracle::Dense& a, const oracle::Dense& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (const auto& [d, t] : a.terms)
    if (!(b.at(d) == t)) return false;
  return true;
}

}  // namespace

TEST_CASE("Laurent polynomials") {
  auto triv = FiniteGroup::trivial();
  const auto one = GroupRingElement::one(triv);
  LaurentPolynomial a = LaurentPolynomial::monomial(-1, one) + LaurentPolynomial::monomial(1, one);
  LaurentPolynomial sq = a * a;  // z^-2 + 2 + z^2
  CHECK(sq.coefficient(0) == one * BigRational(2));
  CHECK(sq.coefficient(2) == one);
  CHECK(sq.coefficient(1).is_zero());
  CHECK((a + LaurentPolynomial::monomial(1, -one)) == LaurentPolynomial::monomial(-1, one));
}

TEST_CASE("Laurent matrix product matches dense convolution") {
  std::mt19937_64 rng(3);
  for (auto g : {FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)}) {
    for (int t = 0; t < 6; ++t) {
      const auto a = random_laurent(rng, g, 2, 3, -2, 1);
      const auto b = random_laurent(rng, g, 3, 2, -1, 2);
      CHECK(same(oracle::Dense::from(a * b), oracle::Dense::from(a) * oracle::Dense::from(b)));
      CHECK(same(oracle::Dense::from(a - a), oracle::Dense{a.rows() * g->order(), a.cols() * g->order(), {}}));
    }
  }
}

TEST_CASE("hull, reversal, shifts and powers") {
  std::mt19937_64 rng(4);
  auto z2 = FiniteGroup::cyclic(2);
  const auto a = random_laurent(rng, z2, 2, 2, -1, 2);
  REQUIRE(a.degree_range());
  CHECK(a.min_degree() == -1);
  CHECK(a.max_degree() == 2);
  CHECK(a.reversed().min_degree() == -2);
  CHECK(a.reversed().reversed() == a);
  CHECK(a.shifted(3).coefficient(5) == a.coefficient(2));
  CHECK(a.pow(3) == a * a * a);
  CHECK(a.pow(0) == LaurentMatrix::identity(z2, 2));
  CHECK((a * a).conjugate_transpose() == a.conjugate_transpose() * a.conjugate_transpose());
  CHECK_FALSE(LaurentMatrix(z2, 2, 2).degree_range());
}

TEST_CASE("blocks round trip") {
  std::mt19937_64 rng(8);
  auto triv = FiniteGroup::trivial();
  const auto a = random_laurent(rng, triv, 3, 3, 0, 2);
  LaurentMatrix big(triv, 5, 5);
  big.set_block(1, 2, a);
  CHECK(big.block(1, 2, 3, 3) == a);
  CHECK(big.block(0, 0, 1, 5).is_zero());
}

TEST_CASE("weighted truncation agrees with the window oracle") {
  std::mt19937_64 rng(9);
  auto z2 = FiniteGroup::cyclic(2);
  const auto a = random_laurent(rng, z2, 2, 1, -1, 2);
  const BigRational k(2, 3);
  const auto tr = weighted_truncation(a, TruncationWindow::two_sided(-3, 3), k);
  CHECK(tr.matrix == oracle::window(oracle::Dense::from(a), -3, 3, -3, 3, k));
  // Degrees that leave the window are reported.
  CHECK(tr.overflow == std::vector<int>{-4, 4, 5});
  const auto rect = weighted_truncation(a, TruncationWindow::nonneg(4), TruncationWindow::two_sided(-1, 6), k);
  CHECK(rect.matrix == oracle::window(oracle::Dense::from(a), 0, 4, -1, 6, k));
  CHECK(rect.overflow.empty());
  const auto fl = weighted_truncation_float(a, TruncationWindow::two_sided(-3, 3), 2.0 / 3.0);
  CHECK((fl.matrix - oracle::to_double(tr.matrix)).norm() < 1e-12);
}

TEST_CASE("truncation of a product equals the product of truncations on the interior") {
  std::mt19937_64 rng(12);
  auto triv = FiniteGroup::trivial();
  const auto a = random_laurent(rng, triv, 2, 2, 0, 1);
  const auto b = random_laurent(rng, triv, 2, 2, 0, 1);
  const BigRational k(1, 2);
  const auto w = TruncationWindow::nonneg(6);
  const RationalMatrix lhs = weighted_truncation(a * b, w, k).matrix;
  const RationalMatrix rhs = weighted_truncation(a, w, k).matrix * weighted_truncation(b, w, k).matrix;
  // For polynomials in z the product of lower-triangular windows is exact.
  CHECK(lhs == rhs);
}

TEST_CASE("norm bound dominates the truncated operator norm") {
  std::mt19937_64 rng(13);
  auto z2 = FiniteGroup::cyclic(2);
  const auto a = random_laurent(rng, z2, 2, 2, -1, 1);
  for (double k : {0.3, 1.0, 2.5}) {
    const auto tr = weighted_truncation_float(a, TruncationWindow::two_sided(-5, 5), k);
    CHECK(spectral_norm(tr.matrix) <= weighted_norm_bound(a, k) + 1e-9);
  }
}

TEST_CASE("window and weight validation") {
  CHECK_THROWS_AS(Weight(BigRational(0)), Error);
  CHECK_THROWS_AS(Weight(BigRational(-1, 2)), Error);
  try {
    TruncationWindow::two_sided(3, 1).validate();
    FAIL("expected EmptyWindow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyWindow);
  }
  CHECK(TruncationWindow::nonneg(4).length() == 5);
  CHECK(TruncationWindow::nonpos(-4).contains(-2));
}
