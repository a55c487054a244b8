#include "telescope/certificates.hpp"

#include <algorithm>

#include "telescope/error.hpp"
#include "telescope/numeric.hpp"

namespace telescope {

bool plus_side_closed(const ChainComplex& c) {
  return std::all_of(c.differentials.begin(), c.differentials.end(),
                     [](const LaurentMatrix& d) { return d.is_zero() || d.min_degree() >= 0; });
}

bool minus_side_closed(const ChainComplex& c) {
  return std::all_of(c.differentials.begin(), c.differentials.end(),
                     [](const LaurentMatrix& d) { return d.is_zero() || d.max_degree() <= 0; });
}

ExtendedComplex make_extended(ChainComplex base, bool plus, bool minus) {
  if (plus && !plus_side_closed(base))
    throw Error(ErrorCode::DimensionMismatch, "plus marker set but a boundary has negative z-degree");
  if (minus && !minus_side_closed(base))
    throw Error(ErrorCode::DimensionMismatch, "minus marker set but a boundary has positive z-degree");
  ExtendedComplex e;
  e.generating_ranks = base.ranks;
  e.base = std::move(base);
  e.plus = plus;
  e.minus = minus;
  return e;
}

GroupAlgebraMatrix total_matrix(const ChainMap& h) {
  const ChainComplex& p = h.source;
  std::size_t n = 0;
  for (auto r : p.ranks) n += r;
  GroupAlgebraMatrix total(p.group, n, n);
  if (p.empty()) return total;
  std::size_t offset = 0;
  for (int j = p.d_min; j <= p.d_max(); ++j) {
    LaurentMatrix c = h.component(j);
    if (!c.is_zero() && (c.min_degree() != 0 || c.max_degree() != 0))
      throw Error(ErrorCode::DimensionMismatch, "self-map must not involve z", {{"degree", j}});
    total.set_block(offset, offset, c.coefficient(0));
    offset += p.rank(j);
  }
  return total;
}

namespace {

struct Series {
  LaurentMatrix sum;
  LaurentMatrix remainder;
};

/// sum_{n=0}^N x^n and x^(N+1).
Series geometric_series(const LaurentMatrix& x, int depth) {
  LaurentMatrix power = LaurentMatrix::identity(x.group(), x.rows());
  LaurentMatrix sum = power;
  for (int n = 1; n <= depth; ++n) {
    power = power * x;
    sum += power;
  }
  return {sum, power * x};
}

void require_endomorphism(const ChainMap& h) {
  validate_chain_map(h);
  if (h.source.ranks != h.target.ranks || h.source.d_min != h.target.d_min)
    throw Error(ErrorCode::DimensionMismatch, "expected a chain self-map");
}

struct TorusData {
  ChainComplex torus;
  std::map<int, GroupAlgebraMatrix> h;        // h_j on P_j
  std::map<int, Series> series;               // per P_j
  std::map<int, LaurentMatrix> homotopy;      // H_j : T_j -> T_(j+1)
};

TorusData build_torus_homotopy(const ChainMap& hm, int depth) {
  TorusData d;
  d.torus = mapping_torus(hm);
  const ChainComplex& p = hm.source;
  const ChainComplex& t = d.torus;
  if (t.empty()) return d;
  for (int j = t.d_min - 1; j <= t.d_max() + 1; ++j) {
    GroupAlgebraMatrix hj = hm.component(j).coefficient(0);
    d.h.emplace(j, hj);
    d.series.emplace(j, geometric_series(LaurentMatrix::monomial(1, hj), depth));
  }
  for (int j = t.d_min - 1; j <= t.d_max(); ++j) {
    LaurentMatrix hom(t.group, t.rank(j + 1), t.rank(j));
    if (p.rank(j) > 0) {
      LaurentMatrix r = d.series.at(j).sum;
      // (-1)^(j+1): the sign making dH + Hd = +I for the torus boundary.
      if ((j + 1) % 2 != 0) r = -r;
      hom.set_block(p.rank(j + 1), 0, r);
    }
    d.homotopy.emplace(j, std::move(hom));
  }
  return d;
}

void fill_norms(ContractionCertificate& cert, const ChainMap& h, const Weight& k) {
  cert.k = k.k;
  cert.h_norm = spectral_norm(regular_representation(total_matrix(h)));
  cert.norm_bound = k.k_float * cert.h_norm;
  cert.series_converges = cert.norm_bound < 1.0;
  if (cert.h_norm > 0.0) cert.margin_k = 1.0 / cert.h_norm - k.k_float;
}

int max_boundary_degree(const ChainComplex& c) {
  int slack = 0;
  for (const auto& d : c.differentials)
    if (!d.is_zero()) slack = std::max(slack, d.max_degree());
  return slack;
}

bool all_pass(const std::vector<std::pair<std::string, bool>>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

/// Rows [0, rows) of m vanish.
bool top_rows_zero(const RationalMatrix& m, std::size_t rows) {
  for (std::size_t r = 0; r < std::min(rows, m.rows()); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) return false;
  return true;
}

}  // namespace

GeometricInverse geometric_inverse(const GroupAlgebraMatrix& h, int depth) {
  if (depth < 0) throw Error(ErrorCode::DepthTooSmall, "depth must be nonnegative", {{"depth", depth}});
  if (h.rows() != h.cols()) throw Error(ErrorCode::DimensionMismatch, "h must be square");
  const LaurentMatrix zh = LaurentMatrix::monomial(1, h);
  const LaurentMatrix id = LaurentMatrix::identity(h.group(), h.rows());
  Series s = geometric_series(zh, depth);
  GeometricInverse g;
  g.depth = depth;
  g.verified = (id - zh) * s.sum == id - s.remainder;
  g.remainder_zero = s.remainder.is_zero();
  g.series = std::move(s.sum);
  g.remainder = std::move(s.remainder);
  return g;
}

// ---------------------------------------------------------------- plus side

ContractionCertificate plus_contraction(const ChainMap& h, const Weight& k, int depth) {
  require_endomorphism(h);
  if (depth < 0) throw Error(ErrorCode::DepthTooSmall, "depth must be nonnegative", {{"depth", depth}});
  TorusData d = build_torus_homotopy(h, depth);
  const ChainComplex& t = d.torus;

  ContractionCertificate cert;
  cert.identity = "plus";
  cert.depth = depth;
  cert.slack = max_boundary_degree(t);
  if (depth < cert.slack)
    throw Error(ErrorCode::DepthTooSmall, "interior band is empty at this depth",
                {{"depth", depth}, {"slack", cert.slack}});
  cert.window = {0, depth + 1};
  cert.interior = {0, depth - cert.slack};
  cert.overflow_band = {depth - cert.slack + 1, depth + 1};
  fill_norms(cert, h, k);
  cert.torus = t;
  cert.homotopy = d.homotopy;
  if (t.empty()) {
    cert.checks = {{"laurent_remainder", true}, {"window_band", true}};
    cert.verified = true;
    return cert;
  }

  const ChainComplex& p = h.source;
  auto hom = [&](int j) {
    auto it = d.homotopy.find(j);
    return it != d.homotopy.end() ? it->second : LaurentMatrix(t.group, t.rank(j + 1), t.rank(j));
  };

  // Exact Laurent identity: dH + Hd - I = -diag((zh_j)^(N+1), (zh_(j-1))^(N+1)).
  bool laurent_ok = true;
  for (int j = t.d_min; j <= t.d_max(); ++j) {
    LaurentMatrix defect = t.boundary(j + 1) * hom(j) + hom(j - 1) * t.boundary(j) -
                           LaurentMatrix::identity(t.group, t.rank(j));
    LaurentMatrix expected(t.group, t.rank(j), t.rank(j));
    if (p.rank(j) > 0) expected.set_block(0, 0, -d.series.at(j).remainder);
    if (p.rank(j - 1) > 0) expected.set_block(p.rank(j), p.rank(j), -d.series.at(j - 1).remainder);
    bool ok = defect == expected;
    for (const auto& [deg, term] : defect.terms())
      if (deg <= cert.interior.second) ok = false;
    laurent_ok = laurent_ok && ok;
  }

  // Truncated window: rows of degree <= N - slack of dH + Hd - I vanish.
  const auto win = TruncationWindow::nonneg(depth + 1);
  const std::size_t m = t.group->order();
  bool window_ok = true;
  for (int j = t.d_min - 1; j <= t.d_max() + 1; ++j) {
    cert.boundary_window.emplace(j, weighted_truncation(t.boundary(j), win, k.k).matrix);
    cert.homotopy_window.emplace(j, weighted_truncation(hom(j), win, k.k).matrix);
  }
  for (int j = t.d_min; j <= t.d_max(); ++j) {
    RationalMatrix e = cert.boundary_window.at(j + 1) * cert.homotopy_window.at(j) +
                       cert.homotopy_window.at(j - 1) * cert.boundary_window.at(j) -
                       RationalMatrix::identity(win.length() * t.rank(j) * m);
    const std::size_t band_rows = static_cast<std::size_t>(cert.interior.second + 1) * t.rank(j) * m;
    window_ok = window_ok && top_rows_zero(e, band_rows);
  }

  cert.checks = {{"laurent_remainder", laurent_ok}, {"window_band", window_ok}};
  cert.verified = all_pass(cert.checks);
  return cert;
}

// ---------------------------------------------------------------- minus side

namespace {

/// Coordinates of the window [lo, hi] of T_j in the weighted basis:
/// degree-major blocks of size t_j * m, each split as P_j then P_(j-1).
struct WindowLayout {
  int lo = 0;
  int hi = 0;
  std::size_t block = 0;  // t_j * m
  std::size_t first = 0;  // p_j * m

  std::size_t offset(int n) const { return static_cast<std::size_t>(n - lo) * block; }
  std::size_t dim() const { return static_cast<std::size_t>(hi - lo + 1) * block; }
};

/// Selection q^- from the ambient window onto T^- (degrees < 0 in full,
/// degree 0 only the P_j summand, nothing above).
RationalMatrix minus_projection(const WindowLayout& a) {
  std::vector<std::size_t> keep;
  for (int n = a.lo; n <= std::min(a.hi, 0); ++n) {
    std::size_t len = n < 0 ? a.block : a.first;
    for (std::size_t i = 0; i < len; ++i) keep.push_back(a.offset(n) + i);
  }
  RationalMatrix q(keep.size(), a.dim());
  for (std::size_t r = 0; r < keep.size(); ++r) q(r, keep[r]) = 1;
  return q;
}

}  // namespace

ContractionCertificate minus_contraction(const ChainMap& h, const Weight& k, int depth) {
  require_endomorphism(h);
  if (depth < 1)
    throw Error(ErrorCode::DepthTooSmall, "minus-side window needs depth at least 1", {{"depth", depth}});
  TorusData d = build_torus_homotopy(h, depth);
  const ChainComplex& t = d.torus;
  const ChainComplex& p = h.source;

  ContractionCertificate cert;
  cert.identity = "minus";
  cert.depth = depth;
  cert.slack = 1;
  cert.window = {-depth, 0};
  cert.interior = {-depth + 1, 0};
  cert.overflow_band = {-depth, -depth};
  fill_norms(cert, h, k);
  cert.torus = t;
  cert.homotopy = d.homotopy;
  if (t.empty()) {
    cert.checks = {{"subcomplex", true}, {"correction_three_cases", true},
                   {"identity_with_ell", true}, {"correction_formula", true}};
    cert.verified = true;
    return cert;
  }

  const std::size_t m = t.group->order();
  const auto ambient = TruncationWindow::two_sided(-depth, depth + 1);
  const int jlo = t.d_min - 1, jhi = t.d_max() + 1;

  std::map<int, WindowLayout> layout;
  std::map<int, RationalMatrix> q, incl, d_amb, h_amb;
  for (int j = jlo; j <= jhi + 1; ++j) {
    layout[j] = {ambient.n_min, ambient.n_max, t.rank(j) * m, p.rank(j) * m};
    q[j] = minus_projection(layout[j]);
    incl[j] = q[j].transpose();
  }
  for (int j = jlo; j <= jhi; ++j) {
    d_amb[j] = weighted_truncation(t.boundary(j), ambient, k.k).matrix;
    auto it = d.homotopy.find(j);
    LaurentMatrix hj = it != d.homotopy.end() ? it->second : LaurentMatrix(t.group, t.rank(j + 1), t.rank(j));
    h_amb[j] = weighted_truncation(hj, ambient, k.k).matrix;
  }

  bool subcomplex_ok = true, three_ok = true, identity_ok = true, formula_ok = true;
  std::map<int, RationalMatrix> d_minus, h_minus;
  for (int j = jlo; j <= jhi; ++j) {
    d_minus[j] = q[j - 1] * d_amb[j] * incl[j];
    subcomplex_ok = subcomplex_ok && d_amb[j] * incl[j] == incl[j - 1] * d_minus[j];
    h_minus[j] = q[j + 1] * h_amb[j] * incl[j];
  }

  for (int j = t.d_min; j <= t.d_max(); ++j) {
    const WindowLayout& aj = layout[j];
    const WindowLayout& aj1 = layout[j + 1];

    // Correction dq^- - q^-d on T_(j+1), directly from the matrices.
    RationalMatrix corr = d_minus[j + 1] * q[j + 1] - q[j] * d_amb[j + 1];

    // The three cases: zero on T^-, zero in positive degrees, and
    // (-1)^j : 0 + P_j -> P_j + 0 in degree 0.
    RationalMatrix three(q[j].rows(), aj1.dim());
    const std::size_t pj = p.rank(j) * m;
    if (pj > 0) {
      const BigRational sign = (j % 2 == 0) ? 1 : -1;
      const std::size_t row0 = static_cast<std::size_t>(depth) * aj.block;  // degree 0 of T^-_j
      const std::size_t col0 = aj1.offset(0) + aj1.first;                  // 0 + P_j in degree 0
      for (std::size_t i = 0; i < pj; ++i) three(row0 + i, col0 + i) = sign;
    }
    three_ok = three_ok && corr == three;

    // ell : (x, y) z^-n -> (h^n x, 0) in degree 0; block weight k^n.
    RationalMatrix ell(q[j].rows(), q[j].rows());
    if (pj > 0) {
      const std::size_t row0 = static_cast<std::size_t>(depth) * aj.block;
      GroupAlgebraMatrix power = GroupAlgebraMatrix::identity(t.group, p.rank(j));
      for (int n = 0; n <= depth; ++n) {
        const std::size_t col0 = static_cast<std::size_t>(depth - n) * aj.block;
        ell.set_block(row0, col0, regular_representation(power) * k.k.pow(n));
        power = power * d.h.at(j);
      }
    }
    RationalMatrix id = RationalMatrix::identity(q[j].rows());

    RationalMatrix lhs = d_minus[j + 1] * h_minus[j] + h_minus[j - 1] * d_minus[j];
    identity_ok = identity_ok && lhs == id - ell;
    formula_ok = formula_ok && id - ell == id + corr * h_amb[j] * incl[j];

    cert.boundary_window.emplace(j, d_minus[j]);
    cert.homotopy_window.emplace(j, h_minus[j]);
    cert.ell_window.emplace(j, std::move(ell));
  }

  cert.checks = {{"subcomplex", subcomplex_ok},
                 {"correction_three_cases", three_ok},
                 {"identity_with_ell", identity_ok},
                 {"correction_formula", formula_ok}};
  cert.verified = all_pass(cert.checks);
  return cert;
}

// ---------------------------------------------------------------- Novikov

NovikovCertificate novikov_vanishing(const ChainMap& h, NovikovSide side, int depth,
                                     const std::optional<ChainMap>& h_inverse) {
  require_endomorphism(h);
  if (depth < 0) throw Error(ErrorCode::DepthTooSmall, "depth must be nonnegative", {{"depth", depth}});
  GroupAlgebraMatrix total = total_matrix(h);
  NovikovCertificate cert;
  cert.side = side;
  cert.depth = depth;
  if (side == NovikovSide::Z) {
    GeometricInverse g = geometric_inverse(total, depth);
    cert.remainder_exponent = depth + 1;
    cert.verified = g.verified;
    cert.remainder_zero = g.remainder_zero;
    cert.series = std::move(g.series);
    cert.remainder = std::move(g.remainder);
    return cert;
  }

  if (!h_inverse)
    throw Error(ErrorCode::MissingInverse, "the z^-1 side needs an inverse of h");
  require_endomorphism(*h_inverse);
  GroupAlgebraMatrix inv = total_matrix(*h_inverse);
  const GroupAlgebraMatrix id = GroupAlgebraMatrix::identity(total.group(), total.rows());
  if (inv.rows() != total.rows() || !(total * inv == id) || !(inv * total == id))
    throw Error(ErrorCode::MissingInverse, "supplied map is not an inverse of h");

  const LaurentMatrix lid = LaurentMatrix::identity(total.group(), total.rows());
  const LaurentMatrix zh = LaurentMatrix::monomial(1, total);
  const LaurentMatrix x = LaurentMatrix::monomial(-1, inv);
  cert.factorization_verified = lid - zh == -(zh * (lid - x));
  Series s = geometric_series(x, depth);
  cert.remainder_exponent = -(depth + 1);
  cert.verified = *cert.factorization_verified && (lid - x) * s.sum == lid - s.remainder;
  cert.remainder_zero = s.remainder.is_zero();
  cert.series = std::move(s.sum);
  cert.remainder = std::move(s.remainder);
  return cert;
}

// ---------------------------------------------------------------- Wall complexes

namespace {

WallComplex build_wall(const GroupRingElement& p, std::optional<BigRational> ell, bool transpose) {
  IdempotentReport rep = idempotent_check(p);
  if (!rep.idempotent) throw Error(ErrorCode::NotIdempotent, "p is not idempotent", {{"p", p.str()}});
  if (!rep.central) throw Error(ErrorCode::NotIdempotent, "p is not central", {{"p", p.str()}, {"central", false}});
  const auto& coeffs = p.coeffs();
  BigRational scale = ell ? *ell : BigRational(lcm_of_denominators(coeffs.data(), coeffs.size()), mpz_class(1));
  if (scale.sign() <= 0 || !scale.is_integer())
    throw Error(ErrorCode::BadScale, "ell must be a positive integer", {{"ell", scale.str()}});
  for (std::size_t g = 0; g < coeffs.size(); ++g)
    if (!(coeffs[g] * scale).is_integer())
      throw Error(ErrorCode::BadScale, "ell * p must have integer coefficients",
                  {{"ell", scale.str()}, {"element", g}, {"coefficient", coeffs[g].str()}});

  const GroupPtr& grp = p.group();
  GroupAlgebraMatrix one = GroupAlgebraMatrix::identity(grp, 1);
  GroupAlgebraMatrix pm = GroupAlgebraMatrix::scalar(grp, 1, transpose ? p.conjugate() : p);
  LaurentMatrix boundary(grp, 1, 1);
  boundary.add_term(0, one * scale);
  boundary.add_term(transpose ? -1 : 1, -(pm * scale));
  ChainComplex c = ChainComplex::make(RingTag::Laurent, grp, 0, {1, 1}, {boundary});
  return WallComplex{make_extended(std::move(c), !transpose, transpose), p, scale, transpose};
}

VirtualCharacter stable_cokernel_character(const WallComplex& w, int depth, bool& injective) {
  const GroupPtr& grp = w.p.group();
  const std::size_t m = grp->order();
  const auto tr = weighted_truncation(w.extended.base.boundary(1), TruncationWindow::nonneg(depth),
                                      TruncationWindow::nonneg(depth + 1), BigRational(1));
  const RationalMatrix im = image_basis(tr.matrix);
  injective = im.cols() == tr.matrix.cols();
  const std::size_t vdim = static_cast<std::size_t>(depth + 1) * m;
  RationalMatrix v(tr.matrix.rows(), vdim);
  for (std::size_t i = 0; i < vdim; ++i) v(i, i) = 1;
  const RationalMatrix sum = image_basis(hstack(v, im));
  return character_of_invariant_subspace(grp, sum) - character_of_invariant_subspace(grp, im);
}

}  // namespace

WallComplex wall_complex(const GroupRingElement& p, std::optional<BigRational> ell) {
  return build_wall(p, std::move(ell), false);
}

WallComplex wall_complex_transpose(const GroupRingElement& p, std::optional<BigRational> ell) {
  return build_wall(p, std::move(ell), true);
}

WallEulerReport wall_euler_class(const WallComplex& w, int depth) {
  if (depth < 0) throw Error(ErrorCode::DepthTooSmall, "depth must be nonnegative", {{"depth", depth}});
  const GroupPtr& grp = w.p.group();
  bool inj_n = false, inj_next = false;
  WallEulerReport r{stable_cokernel_character(w, depth, inj_n), stable_cokernel_character(w, depth + 1, inj_next),
                    std::nullopt};
  r.depth = depth;
  r.injective = inj_n && inj_next;
  r.stable = r.character == r.character_next;
  if (!r.stable)
    throw Error(ErrorCode::TruncationUnstable, "cokernel character changes between depths N and N+1",
                {{"depth", depth}, {"at_N", r.character.strings()}, {"at_N_plus_1", r.character_next.strings()}});
  if (!w.transpose) {
    r.image_of_p = character_of_invariant_subspace(grp, image_basis(left_multiplication(w.p)));
    r.matches_image_of_p = *r.image_of_p == r.character;
  } else {
    r.matches_image_of_p = r.character.is_zero();
  }
  r.reduced_zero = reduced_class_is_zero(r.character);
  return r;
}

TransposeInverse transpose_inverse(const WallComplex& w, int depth) {
  if (!w.transpose) throw Error(ErrorCode::DimensionMismatch, "expected the transpose Wall complex");
  if (depth < 0) throw Error(ErrorCode::DepthTooSmall, "depth must be nonnegative", {{"depth", depth}});
  const GroupPtr& grp = w.p.group();
  const GroupAlgebraMatrix pbar = GroupAlgebraMatrix::scalar(grp, 1, w.p.conjugate());
  LaurentMatrix inv = LaurentMatrix::identity(grp, 1);
  for (int n = 1; n <= depth; ++n) inv.add_term(-n, pbar);
  inv *= w.ell.reciprocal();

  TransposeInverse t{depth, inv, LaurentMatrix::monomial(-(depth + 1), pbar), false, false};
  const LaurentMatrix& boundary = w.extended.base.boundary(1);
  const LaurentMatrix id = LaurentMatrix::identity(grp, 1);
  t.exact_identity = boundary * inv == id - t.remainder;

  const auto win = TruncationWindow::nonneg(depth);
  const RationalMatrix a = weighted_truncation(boundary, win, BigRational(1)).matrix;
  const RationalMatrix b = weighted_truncation(inv, win, BigRational(1)).matrix;
  const RationalMatrix eye = RationalMatrix::identity(a.rows());
  t.window_identity = a * b == eye && b * a == eye;
  return t;
}

}  // namespace telescope
