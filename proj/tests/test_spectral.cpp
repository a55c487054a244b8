#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "oracle.hpp"
#include "telescope/error.hpp"
#include "telescope/io.hpp"
#include "telescope/spectral.hpp"

using namespace telescope;

namespace {

GroupAlgebraMatrix diag(std::initializer_list<long> v) {
  RationalMatrix m(v.size(), v.size());
  std::size_t i = 0;
  for (long x : v) m(i, i) = x, ++i;
  return GroupAlgebraMatrix::from_rational(FiniteGroup::trivial(), m);
}

ChainMap self_map(const GroupAlgebraMatrix& h) {
  const ChainComplex p = ChainComplex::make(RingTag::Rational, h.group(), 0, {h.rows()}, {});
  return ChainMap{p, p, {{0, LaurentMatrix::constant(h)}}};
}

/// sigma_min of I - k a S on [-N, N] -> [-N, N+1], built by hand and
/// decomposed with a divide-and-conquer SVD.
double brute_sigma_min(double a, double k, int N) {
  const long n = 2 * N + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n);
  for (long i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    m(i + 1, i) = -k * a;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(n - 1);
}

}  // namespace

TEST_CASE("operator norm and threshold") {
  CHECK(operator_norm(diag({2, 3})) == doctest::Approx(3.0));
  const FredholmThreshold t = fredholm_threshold(diag({2, 3}));
  CHECK(t.threshold == doctest::Approx(1.0 / 3.0));
  CHECK(t.certified.second == doctest::Approx(1.0 / 3.0));
  try {
    fredholm_threshold(diag({0, 0}));
    FAIL("expected ZeroMap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroMap);
  }
}

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(0.25, 4.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(0.25));
  CHECK(g.back() == doctest::Approx(4.0));
  CHECK(g[2] == doctest::Approx(1.0));
}

TEST_CASE("sigma_min scan matches a brute-force SVD") {
  for (long a : {1L, 2L}) {
    const SigmaScanReport rep = sigma_min_scan(one_minus_zh(diag({a})), {0.25, 0.5, 1.0, 2.0}, {8, 16});
    for (const auto& p : rep.points)
      for (std::size_t d = 0; d < rep.depths.size(); ++d)
        CHECK(p.sigma_min[d] == doctest::Approx(brute_sigma_min(static_cast<double>(a), p.k, rep.depths[d])).epsilon(1e-10));
  }
}

TEST_CASE("sigma_min scan regimes for h = 1") {
  const SigmaScanReport rep = sigma_min_scan(one_minus_zh(diag({1})), {2.0, 0.5, 1.0}, {16, 32, 64});
  REQUIRE(rep.points.size() == 3);
  CHECK(rep.points[0].k == 0.5);  // sorted
  CHECK(rep.points[0].stable);
  CHECK(rep.points[2].stable);
  CHECK_FALSE(rep.points[1].stable);
  CHECK(rep.points[0].sigma_min.back() >= 0.5 - 1e-6);
  CHECK(rep.points[2].sigma_min.back() >= 1.0 - 1e-6);
  // At the threshold sigma_min decays like pi / (2N + 2).
  CHECK(rep.points[1].sigma_min.back() == doctest::Approx(M_PI / 130.0).epsilon(1e-3));
}

TEST_CASE("characteristic polynomial") {
  RationalMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  const auto p = characteristic_polynomial(a);
  CHECK(p == std::vector<BigRational>{BigRational(-2), BigRational(-5), BigRational(1)});
  // Cayley-Hamilton on random rational matrices.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int t = 0; t < 5; ++t) {
    RationalMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = BigRational(e(rng), 1 + static_cast<long>(rng() % 2));
    const auto c = characteristic_polynomial(m);
    REQUIRE(c.size() == 5);
    RationalMatrix acc(4, 4), pw = oracle::eye(4);
    for (const auto& coeff : c) {
      acc = oracle::add(acc, pw, coeff);
      pw = oracle::mul(pw, m);
    }
    CHECK(oracle::zero(acc));
  }
}

TEST_CASE("lambda circle scan") {
  const ChainMap h = self_map(diag({2, 3}));
  const LambdaScanReport away = lambda_circle_scan(h, 0.4, 24);
  for (const auto& p : away.points) CHECK(p.vanishes);
  REQUIRE(away.singular_radii);
  std::vector<std::string> radii;
  for (const auto& r : *away.singular_radii) radii.push_back(r.exact ? r.exact->str() : "?");
  std::sort(radii.begin(), radii.end());
  CHECK(radii == std::vector<std::string>{"1/2", "1/3"});
  const LambdaScanReport on = lambda_circle_scan(h, 0.5, 4);
  CHECK_FALSE(on.points[0].vanishes);  // lambda = 1/2
  CHECK(on.points[0].homology_dims == std::vector<std::size_t>{1, 1});
  CHECK(on.points[1].vanishes);
  const auto dims = numerical_homology(mapping_torus(h), {1.0 / 3.0, 0.0});
  CHECK(dims == std::vector<std::size_t>{1, 1});
}

TEST_CASE("ray model index and its dual") {
  const WindowedModel ray = ray_model();
  CHECK(ray.chi == 1);
  CHECK(ray.chi_lf == 0);
  CHECK(index_at(ray, 4.0, 32).index == 1);
  CHECK(index_at(ray, 0.25, 32).index == 0);
  const WindowedModel dual = dual_model(ray, ray.dimension);
  CHECK(dual.chi == -ray.chi_lf);
  CHECK(dual.chi_lf == -ray.chi);
  CHECK(index_at(dual, 0.25, 32).index == -1);
  CHECK(index_at(dual, 4.0, 32).index == 0);
  CHECK_THROWS_AS(index_at(ray, 1.0, 0), Error);
}

TEST_CASE("empty compact part gives the two-sided telescope") {
  auto triv = FiniteGroup::trivial();
  const ChainComplex empty = ChainComplex::make(RingTag::Rational, triv, 0, {}, {});
  const WindowedModel t = glued_model(empty, self_map(diag({1})), {});
  CHECK(t.two_sided);
  CHECK(index_at(t, 0.5, 16).index == 0);
  CHECK(index_at(t, 2.0, 16).index == 0);
}

TEST_CASE("index experiment flags and determinism across thread counts") {
  const WindowedModel ray = ray_model();
  setenv("TELESCOPE_THREADS", "1", 1);
  const std::string one = io::to_json(index_window_experiment(ray, 1.0, {0.5, 2.0, 4.0}, {16, 32})).dump();
  setenv("TELESCOPE_THREADS", "3", 1);
  const IndexReport rep = index_window_experiment(ray, 1.0, {0.5, 2.0, 4.0}, {16, 32});
  unsetenv("TELESCOPE_THREADS");
  CHECK(io::to_json(rep).dump() == one);
  CHECK(rep.exploratory);
  for (const auto& p : rep.points) {
    CHECK(p.regime == (p.k > 1.0 ? "large" : "small"));
    if (p.stable) {
      REQUIRE(p.matches);
      CHECK(*p.matches);
    } else {
      CHECK_FALSE(p.matches);
    }
  }
}
