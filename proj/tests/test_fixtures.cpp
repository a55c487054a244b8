#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "telescope/error.hpp"
#include "telescope/fixtures.hpp"

using namespace telescope;

TEST_CASE("euler fixture ranks") {
  const ChainComplex zero = fixture_euler_all_integers(0);
  CHECK(zero.ranks == std::vector<std::size_t>{1, 1});
  CHECK(fixture_euler_all_integers(-2).ranks == std::vector<std::size_t>{1, 3});
  for (long n = -7; n <= 7; ++n) {
    const ChainComplex c = fixture_euler_all_integers(n);
    CHECK(euler_characteristic(c) == n);
    long from_h = 0;
    for (const auto& d : homology(c).degrees) from_h += (d.degree % 2 ? -1 : 1) * static_cast<long>(d.dim);
    CHECK(from_h == n);
  }
}

TEST_CASE("every registered fixture passes") {
  for (const auto& entry : fixture_registry()) {
    const FixtureResult r = entry.run(7);
    CAPTURE(entry.name);
    CHECK(r.name == entry.name);
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, std::string(entry.name + "/" + c.name));
  }
}

TEST_CASE("fixtures are reproducible") {
  CHECK(run_fixture("z2-wall", 1).to_json() == run_fixture("z2-wall", 1).to_json());
  CHECK(run_fixture("contraction-population", 5).to_json().dump() ==
        run_fixture("contraction-population", 5).to_json().dump());
}

TEST_CASE("z2 wall fixture content") {
  const FixtureResult r = fixture_z2_wall();
  auto find = [&](const std::string& n) {
    for (const auto& c : r.checks)
      if (c.name == n) return c;
    FAIL("missing check " << n);
    return FixtureCheck{};
  };
  CHECK(find("character").observed == nlohmann::json({"1", "1"}));
  CHECK(find("p_zero_character").observed == nlohmann::json({"0", "0"}));
  CHECK(find("p_e_character").observed == nlohmann::json({"2", "0"}));
  CHECK(find("dual_euler_sign_n3").passed);
}

TEST_CASE("verdict json carries no extraneous fields") {
  const auto j = fixture_transpose_duality().to_json();
  CHECK(j.contains("name"));
  CHECK(j.contains("passed"));
  CHECK(j.contains("checks"));
  CHECK(j.size() == 4);
}

TEST_CASE("unknown fixture is an input error") {
  try {
    run_fixture("no-such-fixture", 0);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(is_input_error(e.code()));
  }
}
