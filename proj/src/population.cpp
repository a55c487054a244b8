#include "telescope/population.hpp"

namespace telescope {

namespace {

BigRational random_entry(Rng& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  return BigRational(dist(rng));
}

RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_entry(rng, bound);
  return m;
}

}  // namespace

ChainComplex random_complex(Rng& rng, const PopulationShape& shape, const GroupPtr& group) {
  std::uniform_int_distribution<int> top(0, shape.max_degree);
  std::uniform_int_distribution<std::size_t> rank(0, shape.max_rank);
  const int d = top(rng);
  std::vector<std::size_t> ranks;
  for (int j = 0; j <= d; ++j) ranks.push_back(rank(rng));
  if (ranks[0] == 0) ranks[0] = 1;

  std::vector<RationalMatrix> bounds;
  for (int j = 1; j <= d; ++j) {
    const std::size_t rows = ranks[static_cast<std::size_t>(j - 1)], cols = ranks[static_cast<std::size_t>(j)];
    if (j == 1) {
      bounds.push_back(random_matrix(rng, rows, cols, shape.entry_bound));
      continue;
    }
    // Columns drawn from the kernel of the previous boundary keep d o d = 0.
    const RationalMatrix ker = kernel_basis(bounds.back());
    if (ker.cols() == 0)
      bounds.emplace_back(rows, cols);
    else
      bounds.push_back(ker * random_matrix(rng, ker.cols(), cols, shape.entry_bound));
  }
  std::vector<LaurentMatrix> diffs;
  for (const auto& b : bounds) diffs.push_back(LaurentMatrix::constant(GroupAlgebraMatrix::from_rational(group, b)));
  RingTag ring = group->order() == 1 ? RingTag::Rational : RingTag::GroupRing;
  return validate_complex(ChainComplex::make(ring, group, 0, std::move(ranks), std::move(diffs)));
}

ChainMap random_self_map(Rng& rng, const ChainComplex& p, int entry_bound) {
  // Unknowns: entries of the rational parts of h_j, degree by degree.
  std::vector<std::size_t> base;
  std::size_t unknowns = 0;
  for (int j = p.d_min; j <= p.d_max(); ++j) {
    base.push_back(unknowns);
    unknowns += p.rank(j) * p.rank(j);
  }
  auto var = [&](int j, std::size_t r, std::size_t c) {
    return base[static_cast<std::size_t>(j - p.d_min)] + r * p.rank(j) + c;
  };
  auto rational_part = [&](int j) {
    RationalMatrix m(p.rank(j - 1), p.rank(j));
    const GroupAlgebraMatrix b = p.boundary(j).coefficient(0);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = b(r, c)[p.group->identity()];
    return m;
  };

  // h_(j-1) d_j - d_j h_j = 0 for every j.
  std::vector<std::vector<BigRational>> rows;
  for (int j = p.d_min + 1; j <= p.d_max(); ++j) {
    const RationalMatrix d = rational_part(j);
    for (std::size_t a = 0; a < d.rows(); ++a)
      for (std::size_t b = 0; b < d.cols(); ++b) {
        std::vector<BigRational> row(unknowns);
        for (std::size_t t = 0; t < d.rows(); ++t) row[var(j - 1, a, t)] += d(t, b);
        for (std::size_t t = 0; t < d.cols(); ++t) row[var(j, t, b)] -= d(a, t);
        rows.push_back(std::move(row));
      }
  }
  RationalMatrix system(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) system(r, c) = rows[r][c];
  const RationalMatrix sols = rows.empty() ? RationalMatrix::identity(unknowns) : kernel_basis(system);
  RationalMatrix x(unknowns, 1);
  if (sols.cols() > 0) x = sols * random_matrix(rng, sols.cols(), 1, entry_bound);

  GroupRingElement u(p.group);
  if (p.group->order() > 1)
    for (std::size_t g = 0; g < p.group->order(); ++g) u[g] = random_entry(rng, entry_bound) / BigRational(2);

  ChainMap h{p, p, {}};
  for (int j = p.d_min; j <= p.d_max(); ++j) {
    const std::size_t n = p.rank(j);
    GroupAlgebraMatrix m(p.group, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) = GroupRingElement::scalar(p.group, x(var(j, r, c), 0));
        if (r == c) m(r, c) += u;
      }
    h.components.emplace(j, LaurentMatrix::constant(m));
  }
  validate_chain_map(h);
  return h;
}

SelfMapCase population_case(std::uint64_t seed, std::size_t i, const PopulationShape& shape) {
  Rng rng(seed * 1000003ULL + i);
  const GroupPtr group = (i % 4 == 3) ? FiniteGroup::cyclic(2) : FiniteGroup::trivial();
  ChainComplex p = random_complex(rng, shape, group);
  ChainMap h = random_self_map(rng, p);
  return {p, h};
}

}  // namespace telescope
