#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "telescope/error.hpp"
#include "telescope/group.hpp"

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

GroupRingElement random_element(std::mt19937_64& rng, const GroupPtr& g) {
  std::uniform_int_distribution<int> e(-3, 3);
  std::vector<BigRational> c;
  for (std::size_t i = 0; i < g->order(); ++i) c.push_back(BigRational(e(rng), 1 + static_cast<long>(rng() % 3)));
  return GroupRingElement(g, c);
}

}  // namespace

TEST_CASE("table validation names the failure") {
  CHECK(code_of([] { FiniteGroup::from_table({{0, 1}, {0, 0}}); }) == ErrorCode::NoInverse);
  CHECK(code_of([] { FiniteGroup::from_table({{0, 1}, {1}}); }) == ErrorCode::BadTable);
  CHECK(code_of([] { FiniteGroup::from_table({{0, 5}, {1, 0}}); }) == ErrorCode::BadTable);
  CHECK(code_of([] { FiniteGroup::from_table({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}); }) == ErrorCode::NoIdentity);
  // Latin square with identity 0 that is not associative.
  const FiniteGroup::Table loop = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    FiniteGroup::from_table(loop);
    FAIL("expected NonAssociative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonAssociative);
    CHECK(e.detail().contains("a"));
  }
}

TEST_CASE("standard groups") {
  auto z4 = FiniteGroup::cyclic(4);
  CHECK(z4->order() == 4);
  CHECK(z4->class_count() == 4);
  CHECK(z4->inverse(1) == 3);
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(s3->order() == 6);
  CHECK(s3->identity() == 0);
  std::vector<std::size_t> sizes;
  for (const auto& c : s3->conjugacy_classes()) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
  CHECK(FiniteGroup::trivial()->order() == 1);
}

TEST_CASE("group ring is an associative algebra with an anti-involution") {
  std::mt19937_64 rng(11);
  for (auto g : {FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)}) {
    for (int t = 0; t < 10; ++t) {
      const auto a = random_element(rng, g), b = random_element(rng, g), c = random_element(rng, g);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b).conjugate() == b.conjugate() * a.conjugate());
      CHECK(a * GroupRingElement::one(g) == a);
    }
  }
}

TEST_CASE("regular representation is multiplicative and matches the oracle") {
  std::mt19937_64 rng(5);
  auto s3 = FiniteGroup::symmetric(3);
  for (int t = 0; t < 5; ++t) {
    GroupAlgebraMatrix a(s3, 2, 2), b(s3, 2, 1);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = random_element(rng, s3);
      b(i, 0) = random_element(rng, s3);
    }
    CHECK(regular_representation(a * b) == regular_representation(a) * regular_representation(b));
    CHECK(regular_representation(a) == oracle::regular(a));
    // Right action commutes with left multiplication.
    for (std::size_t g = 0; g < 6; ++g)
      CHECK(regular_representation(a) * right_action(s3, g, 2) == right_action(s3, g, 2) * regular_representation(a));
  }
}

TEST_CASE("idempotents and characters") {
  auto z2 = FiniteGroup::cyclic(2);
  const GroupRingElement p(z2, {BigRational(1, 2), BigRational(1, 2)});
  const auto rep = idempotent_check(p);
  CHECK(rep.idempotent);
  CHECK(rep.central);
  CHECK_FALSE(idempotent_check(GroupRingElement(z2, {BigRational(1), BigRational(1)})).idempotent);

  // Image of left multiplication by p; oracle: trace of L_p composed with the right action.
  const RationalMatrix lp = left_multiplication(p);
  const RationalMatrix basis = image_basis(lp);
  const VirtualCharacter chi = character_of_invariant_subspace(z2, basis);
  CHECK(chi.strings() == std::vector<std::string>{"1", "1"});
  for (std::size_t c = 0; c < z2->class_count(); ++c)
    CHECK(chi[c] == (lp * right_action(z2, z2->conjugacy_classes()[c].front(), 1)).trace());
  CHECK_FALSE(reduced_class_is_zero(chi));
  CHECK(reduced_class_is_zero(BigRational(3) * VirtualCharacter::regular(z2)) == true);
  CHECK(reduced_class_is_zero(VirtualCharacter(z2)));

  // S3: the sign idempotent is central, its image carries the sign character.
  auto s3 = FiniteGroup::symmetric(3);
  std::vector<BigRational> c(6);
  for (std::size_t g = 0; g < 6; ++g) {
    const bool even = s3->conjugacy_classes()[s3->class_of(g)].size() != 3;
    c[g] = BigRational(even ? 1 : -1, 6);
  }
  const GroupRingElement sign(s3, c);
  CHECK(idempotent_check(sign).central);
  const VirtualCharacter chi_sign = character_of_invariant_subspace(s3, image_basis(left_multiplication(sign)));
  const RationalMatrix ls = left_multiplication(sign);
  for (std::size_t k = 0; k < s3->class_count(); ++k) {
    const std::size_t g = s3->conjugacy_classes()[k].front();
    CHECK(chi_sign[k] == (ls * right_action(s3, g, 1)).trace());
    CHECK(chi_sign[k] == c[g] * BigRational(6));
  }
}

TEST_CASE("non-invariant subspace is rejected") {
  auto z2 = FiniteGroup::cyclic(2);
  RationalMatrix basis(2, 1);
  basis(0, 0) = 1;
  CHECK(code_of([&] { character_of_invariant_subspace(z2, basis); }) == ErrorCode::NotInvariant);
}

TEST_CASE("mixing groups is an error") {
  auto a = FiniteGroup::cyclic(2), b = FiniteGroup::cyclic(3);
  CHECK(code_of([&] { (void)(GroupRingElement::one(a) + GroupRingElement::one(b)); }) == ErrorCode::GroupMismatch);
}
