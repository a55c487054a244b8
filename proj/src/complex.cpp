#include "telescope/complex.hpp"

#include <algorithm>

#include "telescope/error.hpp"

namespace telescope {

std::string to_string(RingTag tag) {
  switch (tag) {
    case RingTag::Rational: return "Q";
    case RingTag::GroupRing: return "Q[pi]";
    case RingTag::Laurent: return "Q[pi][z,z^-1]";
    case RingTag::GaussianGroupRing: return "Q(i)[pi]";
  }
  return "?";
}

RingTag ring_tag_from_string(const std::string& s) {
  if (s == "Q" || s == "rational") return RingTag::Rational;
  if (s == "Q[pi]" || s == "group_ring") return RingTag::GroupRing;
  if (s == "Q[pi][z,z^-1]" || s == "laurent") return RingTag::Laurent;
  if (s == "Q(i)[pi]" || s == "gaussian") return RingTag::GaussianGroupRing;
  throw Error(ErrorCode::ParseError, "unknown ring tag '" + s + "'", {{"ring", s}});
}

// ---------------------------------------------------------------- construction

ChainComplex ChainComplex::make(RingTag ring, GroupPtr group, int d_min, std::vector<std::size_t> ranks,
                                std::vector<LaurentMatrix> differentials, std::vector<LaurentMatrix> imag) {
  ChainComplex c;
  c.ring = ring;
  c.group = std::move(group);
  c.d_min = d_min;
  c.ranks = std::move(ranks);
  c.differentials = std::move(differentials);
  c.imag = std::move(imag);

  if (ring == RingTag::Rational && c.group->order() != 1)
    throw Error(ErrorCode::GroupMismatch, "a complex over Q must use the trivial group");
  const std::size_t expected = c.ranks.empty() ? 0 : c.ranks.size() - 1;
  if (c.differentials.size() != expected)
    throw Error(ErrorCode::DimensionMismatch, "number of boundaries does not match the degree range",
                {{"expected", expected}, {"got", c.differentials.size()}});
  if (ring == RingTag::GaussianGroupRing) {
    if (c.imag.empty()) {
      for (const auto& d : c.differentials) c.imag.emplace_back(c.group, d.rows(), d.cols());
    } else if (c.imag.size() != expected) {
      throw Error(ErrorCode::DimensionMismatch, "imaginary parts do not match the boundaries");
    }
  } else if (!c.imag.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "imaginary parts given for a real complex");
  }

  auto check = [&](const LaurentMatrix& m, std::size_t i) {
    const int j = d_min + static_cast<int>(i) + 1;
    if (m.rows() != c.ranks[i] || m.cols() != c.ranks[i + 1])
      throw Error(ErrorCode::DimensionMismatch, "boundary out of degree " + std::to_string(j) + " has the wrong shape",
                  {{"degree", j}, {"expected", {c.ranks[i], c.ranks[i + 1]}}, {"got", {m.rows(), m.cols()}}});
    require_same_group(c.group, m.group());
    if (ring != RingTag::Laurent && !m.is_zero() && (m.min_degree() != 0 || m.max_degree() != 0))
      throw Error(ErrorCode::LaurentRing, "z appears in a complex that is not over the Laurent ring",
                  {{"degree", j}});
  };
  for (std::size_t i = 0; i < c.differentials.size(); ++i) check(c.differentials[i], i);
  for (std::size_t i = 0; i < c.imag.size(); ++i) check(c.imag[i], i);
  return c;
}

std::size_t ChainComplex::rank(int j) const {
  if (empty() || j < d_min || j > d_max()) return 0;
  return ranks[static_cast<std::size_t>(j - d_min)];
}

LaurentMatrix ChainComplex::boundary(int j) const {
  if (!empty() && j > d_min && j <= d_max()) return differentials[static_cast<std::size_t>(j - d_min - 1)];
  return LaurentMatrix(group, rank(j - 1), rank(j));
}

LaurentMatrix ChainComplex::boundary_imag(int j) const {
  if (ring == RingTag::GaussianGroupRing && j > d_min && j <= d_max())
    return imag[static_cast<std::size_t>(j - d_min - 1)];
  return LaurentMatrix(group, rank(j - 1), rank(j));
}

namespace {

nlohmann::json first_nonzero(const LaurentMatrix& m) {
  for (const auto& [d, t] : m.terms())
    for (std::size_t r = 0; r < t.rows(); ++r)
      for (std::size_t c = 0; c < t.cols(); ++c)
        if (!t(r, c).is_zero()) return {{"z_degree", d}, {"row", r}, {"col", c}, {"value", t(r, c).str()}};
  return nullptr;
}

}  // namespace

const ChainComplex& validate_complex(const ChainComplex& c) {
  if (c.empty()) return c;
  for (int j = c.d_min + 1; j < c.d_max(); ++j) {
    LaurentMatrix re = c.boundary(j) * c.boundary(j + 1);
    LaurentMatrix im(c.group, re.rows(), re.cols());
    if (c.ring == RingTag::GaussianGroupRing) {
      re -= c.boundary_imag(j) * c.boundary_imag(j + 1);
      im = c.boundary(j) * c.boundary_imag(j + 1) + c.boundary_imag(j) * c.boundary(j + 1);
    }
    if (!re.is_zero() || !im.is_zero()) {
      nlohmann::json detail = {{"degree", j + 1}};
      detail["entry"] = re.is_zero() ? first_nonzero(im) : first_nonzero(re);
      if (re.is_zero()) detail["imaginary"] = true;
      throw Error(ErrorCode::NotAComplex,
                  "boundary squared is nonzero from degree " + std::to_string(j + 1), detail);
    }
  }
  return c;
}

LaurentMatrix ChainMap::component(int j) const {
  auto it = components.find(j);
  if (it != components.end()) return it->second;
  return LaurentMatrix(target.group, target.rank(j), source.rank(j));
}

const ChainMap& validate_chain_map(const ChainMap& f) {
  require_same_group(f.source.group, f.target.group);
  for (const auto& [j, m] : f.components)
    if (m.rows() != f.target.rank(j) || m.cols() != f.source.rank(j))
      throw Error(ErrorCode::DimensionMismatch, "chain map component has the wrong shape",
                  {{"degree", j}, {"expected", {f.target.rank(j), f.source.rank(j)}}, {"got", {m.rows(), m.cols()}}});
  if (f.source.empty()) return f;
  for (int j = f.source.d_min; j <= f.source.d_max(); ++j) {
    LaurentMatrix diff = f.component(j - 1) * f.source.boundary(j) - f.target.boundary(j) * f.component(j);
    if (!diff.is_zero())
      throw Error(ErrorCode::NotAChainMap, "chain map fails to commute with the boundary in degree " + std::to_string(j),
                  {{"degree", j}, {"entry", first_nonzero(diff)}});
  }
  return f;
}

ChainMap identity_map(const ChainComplex& c) {
  ChainMap f{c, c, {}};
  if (c.empty()) return f;
  for (int j = c.d_min; j <= c.d_max(); ++j) f.components.emplace(j, LaurentMatrix::identity(c.group, c.rank(j)));
  return f;
}

// ---------------------------------------------------------------- homology

std::size_t HomologyReport::dim(int j) const {
  for (const auto& d : degrees)
    if (d.degree == j) return d.dim;
  return 0;
}

bool HomologyReport::vanishes() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const HomologyDegree& d) { return d.dim == 0; });
}

namespace {

RationalMatrix regular_matrix(const LaurentMatrix& m) { return regular_representation(m.coefficient(0)); }

GaussianMatrix gaussian_matrix(const LaurentMatrix& re, const LaurentMatrix& im) {
  RationalMatrix a = regular_matrix(re), b = regular_matrix(im);
  GaussianMatrix g(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) g(r, c) = GaussianRational(a(r, c), b(r, c));
  return g;
}

template <class F>
struct CyclesAndBoundaries {
  DenseMatrix<F> cycles;
  DenseMatrix<F> boundaries;
};

template <class F>
CyclesAndBoundaries<F> cycles_and_boundaries(const DenseMatrix<F>& out, const DenseMatrix<F>& in, std::size_t dim) {
  CyclesAndBoundaries<F> cb;
  cb.cycles = out.rows() == 0 ? DenseMatrix<F>::identity(dim) : kernel_basis(out);
  cb.boundaries = in.cols() == 0 ? DenseMatrix<F>(dim, 0) : image_basis(in);
  return cb;
}

RationalMatrix homology_witnesses(const RationalMatrix& cycles, const RationalMatrix& boundaries) {
  auto ech = row_reduce(hstack(boundaries, cycles));
  std::vector<std::size_t> picked;
  for (auto p : ech.pivots)
    if (p >= boundaries.cols()) picked.push_back(p - boundaries.cols());
  RationalMatrix w(cycles.rows(), picked.size());
  for (std::size_t k = 0; k < picked.size(); ++k)
    for (std::size_t r = 0; r < cycles.rows(); ++r) w(r, k) = cycles(r, picked[k]);
  return w;
}

}  // namespace

HomologyReport homology(const ChainComplex& c) {
  if (c.ring == RingTag::Laurent)
    throw Error(ErrorCode::LaurentRing,
                "homology over the Laurent ring is not computed directly; specialize z or truncate first");
  HomologyReport report;
  report.ring = c.ring;
  if (c.empty()) return report;
  const std::size_t m = c.group->order();
  for (int j = c.d_min; j <= c.d_max(); ++j) {
    HomologyDegree h;
    h.degree = j;
    h.chain_dim = c.rank(j) * m;
    if (c.ring == RingTag::GaussianGroupRing) {
      auto cb = cycles_and_boundaries(gaussian_matrix(c.boundary(j), c.boundary_imag(j)),
                                      gaussian_matrix(c.boundary(j + 1), c.boundary_imag(j + 1)), h.chain_dim);
      h.kernel_dim = cb.cycles.cols();
      h.image_dim = cb.boundaries.cols();
    } else {
      auto cb = cycles_and_boundaries(regular_matrix(c.boundary(j)), regular_matrix(c.boundary(j + 1)), h.chain_dim);
      h.kernel_dim = cb.cycles.cols();
      h.image_dim = cb.boundaries.cols();
      h.character = character_of_invariant_subspace(c.group, cb.cycles) -
                    character_of_invariant_subspace(c.group, cb.boundaries);
      h.witnesses = homology_witnesses(cb.cycles, cb.boundaries);
    }
    h.dim = h.kernel_dim - h.image_dim;
    report.degrees.push_back(std::move(h));
  }
  return report;
}

long euler_characteristic(const ChainComplex& c) {
  long chi = 0;
  const long m = static_cast<long>(c.group->order());
  if (c.empty()) return 0;
  for (int j = c.d_min; j <= c.d_max(); ++j) {
    long r = static_cast<long>(c.rank(j)) * m;
    chi += (j % 2 == 0) ? r : -r;
  }
  return chi;
}

EquivariantEuler equivariant_euler(const ChainComplex& c) {
  if (c.ring != RingTag::Rational && c.ring != RingTag::GroupRing)
    throw Error(ErrorCode::LaurentRing, "equivariant Euler characteristic needs a complex over Q or Q[pi]",
                {{"ring", to_string(c.ring)}});
  EquivariantEuler e{VirtualCharacter(c.group), VirtualCharacter(c.group), false};
  const auto regular = VirtualCharacter::regular(c.group);
  auto h = homology(c);
  for (const auto& d : h.degrees) {
    const BigRational sign = (d.degree % 2 == 0) ? 1 : -1;
    e.from_chains += sign * (BigRational(static_cast<long>(c.rank(d.degree))) * regular);
    e.from_homology += sign * *d.character;
  }
  e.agree = e.from_chains == e.from_homology;
  return e;
}

// ---------------------------------------------------------------- constructions

ChainComplex mapping_cone(const ChainMap& f) {
  const ChainComplex& src = f.source;
  const ChainComplex& dst = f.target;
  require_same_group(src.group, dst.group);
  if (src.ring == RingTag::GaussianGroupRing || dst.ring == RingTag::GaussianGroupRing)
    throw Error(ErrorCode::DimensionMismatch, "cones are built over real coefficient rings only");
  RingTag ring = src.ring == RingTag::Laurent || dst.ring == RingTag::Laurent ? RingTag::Laurent
                 : src.ring == RingTag::GroupRing || dst.ring == RingTag::GroupRing ? RingTag::GroupRing
                                                                                    : RingTag::Rational;
  if (src.empty() && dst.empty()) return ChainComplex::make(ring, src.group, 0, {}, {});
  int lo = dst.empty() ? src.d_min + 1 : (src.empty() ? dst.d_min : std::min(dst.d_min, src.d_min + 1));
  int hi = dst.empty() ? src.d_max() + 1 : (src.empty() ? dst.d_max() : std::max(dst.d_max(), src.d_max() + 1));

  std::vector<std::size_t> ranks;
  for (int j = lo; j <= hi; ++j) ranks.push_back(dst.rank(j) + src.rank(j - 1));
  std::vector<LaurentMatrix> diffs;
  for (int j = lo + 1; j <= hi; ++j) {
    LaurentMatrix d(src.group, dst.rank(j - 1) + src.rank(j - 2), dst.rank(j) + src.rank(j - 1));
    d.set_block(0, 0, dst.boundary(j));
    LaurentMatrix fj = f.component(j - 1);
    if (j % 2 != 0) fj = -fj;
    d.set_block(0, dst.rank(j), fj);
    d.set_block(dst.rank(j - 1), dst.rank(j), src.boundary(j - 1));
    diffs.push_back(std::move(d));
  }
  return ChainComplex::make(ring, src.group, lo, std::move(ranks), std::move(diffs));
}

ChainComplex extend_to_laurent(const ChainComplex& c) {
  if (c.ring == RingTag::GaussianGroupRing)
    throw Error(ErrorCode::DimensionMismatch, "cannot extend a Q(i) complex to the Laurent ring");
  ChainComplex out = c;
  out.ring = RingTag::Laurent;
  return out;
}

ChainComplex mapping_torus(const ChainMap& h) {
  validate_chain_map(h);
  const ChainComplex p = extend_to_laurent(h.source);
  ChainMap f{p, p, {}};
  if (!p.empty())
    for (int j = p.d_min; j <= p.d_max(); ++j) {
      LaurentMatrix i = LaurentMatrix::identity(p.group, p.rank(j));
      f.components.emplace(j, i - h.component(j).shifted(1));
    }
  return mapping_cone(f);
}

ChainComplex reverse_complex(const ChainComplex& c) {
  ChainComplex out = c;
  for (auto& d : out.differentials) d = d.reversed();
  for (auto& d : out.imag) d = d.reversed();
  return out;
}

ChainComplex dual_complex(const ChainComplex& c, int n) {
  if (c.empty()) return c;
  std::vector<std::size_t> ranks(c.ranks.rbegin(), c.ranks.rend());
  std::vector<LaurentMatrix> diffs, imag;
  for (int j = c.d_max(); j > c.d_min; --j) {
    diffs.push_back(c.boundary(j).conjugate_transpose());
    if (c.ring == RingTag::GaussianGroupRing) imag.push_back(-c.boundary_imag(j).conjugate_transpose());
  }
  return ChainComplex::make(c.ring, c.group, n - c.d_max(), std::move(ranks), std::move(diffs), std::move(imag));
}

ChainComplex specialize(const ChainComplex& c, const GaussianRational& lambda) {
  if (lambda.is_zero()) throw Error(ErrorCode::ZeroLambda, "cannot specialize z at 0");
  if (c.ring == RingTag::GaussianGroupRing)
    throw Error(ErrorCode::DimensionMismatch, "complex is already specialized over Q(i)");
  const bool gaussian = !lambda.is_real();
  RingTag ring = gaussian ? RingTag::GaussianGroupRing
                          : (c.group->order() == 1 ? RingTag::Rational : RingTag::GroupRing);
  std::vector<LaurentMatrix> re, im;
  for (const auto& d : c.differentials) {
    LaurentMatrix r(c.group, d.rows(), d.cols()), i(c.group, d.rows(), d.cols());
    for (const auto& [deg, t] : d.terms()) {
      GaussianRational w = lambda.pow(deg);
      r.add_term(0, t * w.re());
      i.add_term(0, t * w.im());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(i));
  }
  if (!gaussian) im.clear();
  return ChainComplex::make(ring, c.group, c.d_min, c.ranks, std::move(re), std::move(im));
}

}  // namespace telescope
