#include "telescope/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "telescope/error.hpp"
#include "telescope/numeric.hpp"
#include "telescope/parallel.hpp"

namespace telescope {

double operator_norm(const GroupAlgebraMatrix& h) { return spectral_norm(regular_representation(h)); }

FredholmThreshold fredholm_threshold(const GroupAlgebraMatrix& h) {
  if (h.is_zero()) throw Error(ErrorCode::ZeroMap, "h = 0 has no Fredholm threshold (every k is certified)");
  FredholmThreshold t;
  t.norm = operator_norm(h);
  t.threshold = 1.0 / t.norm;
  t.certified = {0.0, t.threshold};
  return t;
}

LaurentMatrix one_minus_zh(const GroupAlgebraMatrix& h) {
  return LaurentMatrix::identity(h.group(), h.rows()) - LaurentMatrix::monomial(1, h);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0)
    throw Error(ErrorCode::BadScale, "geometric grid needs 0 < lo <= hi and at least one point");
  std::vector<double> grid;
  if (count == 1) return {lo};
  const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(lo * std::exp(ratio * static_cast<double>(i)));
  grid.back() = hi;
  return grid;
}

// ---------------------------------------------------------------- sigma_min

namespace {

double smallest_singular_value(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  if (a.cols() > a.rows()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

SigmaScanReport sigma_min_scan(const LaurentMatrix& m, std::vector<double> k_grid, std::vector<int> depths,
                               double stability_tolerance) {
  if (k_grid.empty() || depths.empty()) throw Error(ErrorCode::EmptyWindow, "sigma scan needs a k grid and depths");
  std::sort(k_grid.begin(), k_grid.end());
  std::sort(depths.begin(), depths.end());
  SigmaScanReport report;
  report.depths = depths;
  report.stability_tolerance = stability_tolerance;
  report.points.resize(k_grid.size());
  const int lo_pad = std::min(0, m.min_degree());
  const int hi_pad = std::max(0, m.max_degree());

  const std::size_t cells = k_grid.size() * depths.size();
  std::vector<double> sigma(cells);
  parallel_for(cells, [&](std::size_t idx) {
    const double k = k_grid[idx / depths.size()];
    const int n = depths[idx % depths.size()];
    auto domain = TruncationWindow::two_sided(-n, n);
    auto codomain = TruncationWindow::two_sided(-n + lo_pad, n + hi_pad);
    sigma[idx] = smallest_singular_value(weighted_truncation_float(m, domain, codomain, k).matrix);
  });

  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    SigmaScanPoint& p = report.points[i];
    p.k = k_grid[i];
    p.sigma_min.assign(sigma.begin() + static_cast<long>(i * depths.size()),
                       sigma.begin() + static_cast<long>((i + 1) * depths.size()));
    if (depths.size() >= 2) {
      const double a = p.sigma_min[depths.size() - 2], b = p.sigma_min.back();
      const double scale = std::max(std::abs(a), std::abs(b));
      p.relative_change = scale > 0.0 ? std::abs(a - b) / scale : 0.0;
      p.stable = p.relative_change <= stability_tolerance;
    }
  }
  return report;
}

// ---------------------------------------------------------------- lambda circle

std::vector<BigRational> characteristic_polynomial(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  std::vector<BigRational> c(n + 1);
  c[n] = 1;
  RationalMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    c[n - k] = -(a * m).trace() / BigRational(static_cast<long>(k));
  }
  return c;
}

namespace {

BigRational evaluate(const std::vector<BigRational>& poly, const BigRational& x) {
  BigRational v;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
  return v;
}

/// Best rational approximation by continued fractions, denominators <= 10^6.
std::optional<BigRational> rationalize(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 40; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e12) return std::nullopt;
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > 1000000) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = r - a;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) < 1e-12 * std::max(1.0, std::abs(x))) break;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return std::nullopt;
  return BigRational(h1, k1);
}

Eigen::MatrixXcd specialized_matrix(const LaurentMatrix& m, std::complex<double> lambda, double& scale) {
  const std::size_t g = m.group()->order();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<long>(m.rows() * g), static_cast<long>(m.cols() * g));
  scale = 0.0;
  for (const auto& [d, t] : m.terms()) {
    Eigen::MatrixXd r = to_eigen(regular_representation(t));
    const std::complex<double> w = std::pow(lambda, d);
    out += w * r.cast<std::complex<double>>();
    scale += std::abs(w) * spectral_norm(r);
  }
  return out;
}

std::size_t numerical_rank(const Eigen::MatrixXcd& a, double scale, double rel) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  const double tol = rel * std::max(s(0), scale);
  std::size_t r = 0;
  for (long i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++r;
  return r;
}

}  // namespace

std::vector<std::size_t> numerical_homology(const ChainComplex& c, std::complex<double> lambda,
                                            const NumericalRankPolicy& policy) {
  if (c.empty()) return {};
  const std::size_t g = c.group->order();
  std::vector<std::size_t> ranks(c.ranks.size() + 1, 0);  // rank of boundary out of degree d_min + i
  for (int j = c.d_min + 1; j <= c.d_max(); ++j) {
    double scale = 0.0;
    Eigen::MatrixXcd m = specialized_matrix(c.boundary(j), lambda, scale);
    ranks[static_cast<std::size_t>(j - c.d_min)] = numerical_rank(m, scale, policy.relative_tolerance);
  }
  std::vector<std::size_t> dims;
  for (int j = c.d_min; j <= c.d_max(); ++j) {
    const std::size_t i = static_cast<std::size_t>(j - c.d_min);
    dims.push_back(c.rank(j) * g - ranks[i] - ranks[i + 1]);
  }
  return dims;
}

LambdaScanReport lambda_circle_scan(const ChainMap& h, double radius, std::size_t samples,
                                    const NumericalRankPolicy& policy) {
  if (!(radius > 0.0)) throw Error(ErrorCode::BadScale, "circle radius must be positive", {{"radius", radius}});
  if (samples == 0) throw Error(ErrorCode::EmptyWindow, "lambda scan needs at least one sample");
  const ChainComplex torus = mapping_torus(h);
  LambdaScanReport report;
  report.radius = radius;
  report.samples = samples;
  report.relative_tolerance = policy.relative_tolerance;
  report.d_min = torus.d_min;

  const RationalMatrix total = regular_representation(total_matrix(h));
  report.characteristic_polynomial = characteristic_polynomial(total);
  if (total.rows() > 0) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(total));
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
      const std::complex<double> mu = es.eigenvalues()(i);
      if (std::abs(mu) > 1e-12) report.singular_lambdas.push_back(1.0 / mu);
    }
  }
  std::sort(report.singular_lambdas.begin(), report.singular_lambdas.end(),
            [](auto a, auto b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b); });

  std::size_t occupied = 0;
  for (auto r : h.source.ranks) occupied += r > 0 ? 1 : 0;
  if (occupied <= 1) {
    std::vector<SingularRadius> radii;
    for (auto lam : report.singular_lambdas) {
      const double rad = std::abs(lam);
      if (std::any_of(radii.begin(), radii.end(),
                      [&](const SingularRadius& s) { return std::abs(s.radius - rad) <= 1e-9 * rad; }))
        continue;
      SingularRadius s{rad, std::nullopt};
      if (std::abs(lam.imag()) <= 1e-9 * rad) {
        if (auto q = rationalize(1.0 / lam.real()); q && !q->is_zero() &&
                                                    evaluate(report.characteristic_polynomial, *q).is_zero())
          s.exact = q->reciprocal().abs();
      }
      radii.push_back(s);
    }
    std::sort(radii.begin(), radii.end(), [](const auto& a, const auto& b) { return a.radius > b.radius; });
    report.singular_radii = std::move(radii);
  }

  report.points.resize(samples);
  parallel_for(samples, [&](std::size_t s) {
    LambdaSample& p = report.points[s];
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(samples);
    p.lambda = std::polar(radius, theta);
    p.homology_dims = numerical_homology(torus, p.lambda, policy);
    p.vanishes = std::all_of(p.homology_dims.begin(), p.homology_dims.end(), [](auto d) { return d == 0; });
    p.distance_to_singular = std::numeric_limits<double>::infinity();
    for (auto lam : report.singular_lambdas) p.distance_to_singular = std::min(p.distance_to_singular, std::abs(p.lambda - lam));
  });
  return report;
}

// ---------------------------------------------------------------- index window

namespace {

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  require_same_group(a.group, b.group);
  if (a.empty()) return b;
  if (b.empty()) return a;
  const int lo = std::min(a.d_min, b.d_min), hi = std::max(a.d_max(), b.d_max());
  std::vector<std::size_t> ranks;
  for (int j = lo; j <= hi; ++j) ranks.push_back(a.rank(j) + b.rank(j));
  std::vector<LaurentMatrix> diffs;
  for (int j = lo + 1; j <= hi; ++j) {
    LaurentMatrix d(a.group, a.rank(j - 1) + b.rank(j - 1), a.rank(j) + b.rank(j));
    d.set_block(0, 0, a.boundary(j));
    d.set_block(a.rank(j - 1), a.rank(j), b.boundary(j));
    diffs.push_back(std::move(d));
  }
  RingTag ring = a.ring == RingTag::Laurent || b.ring == RingTag::Laurent ? RingTag::Laurent : a.ring;
  return ChainComplex::make(ring, a.group, lo, std::move(ranks), std::move(diffs));
}

}  // namespace

WindowedModel glued_model(const ChainComplex& fc, const ChainMap& h, const std::map<int, LaurentMatrix>& f) {
  const ChainComplex torus = mapping_torus(h);
  WindowedModel m;
  const long g = static_cast<long>(h.source.group->order());
  long chi_p = 0;
  if (!h.source.empty())
    for (int j = h.source.d_min; j <= h.source.d_max(); ++j)
      chi_p += (j % 2 == 0 ? 1 : -1) * static_cast<long>(h.source.rank(j)) * g;

  if (fc.empty()) {
    m.name = "telescope";
    m.complex = torus;
    m.two_sided = true;
    if (!torus.empty())
      for (int j = torus.d_min; j <= torus.d_max(); ++j) m.summands[j] = {{torus.rank(j), false}};
    m.dimension = torus.empty() ? 0 : torus.d_max();
    m.chi = 0;
    m.chi_lf = 0;
    return m;
  }

  const ChainComplex fl = extend_to_laurent(fc);
  ChainMap into_torus{fl, torus, f};
  validate_chain_map(into_torus);
  const ChainComplex target = direct_sum(torus, fl);
  ChainMap g_map{fl, target, {}};
  for (int j = fl.d_min; j <= fl.d_max(); ++j) {
    LaurentMatrix gj(fl.group, torus.rank(j) + fl.rank(j), fl.rank(j));
    gj.set_block(0, 0, into_torus.component(j));
    gj.set_block(torus.rank(j), 0, -LaurentMatrix::identity(fl.group, fl.rank(j)));
    g_map.components.emplace(j, std::move(gj));
  }
  validate_chain_map(g_map);
  m.name = "glued";
  m.complex = mapping_cone(g_map);
  validate_complex(m.complex);
  for (int j = m.complex.d_min; j <= m.complex.d_max(); ++j)
    m.summands[j] = {{torus.rank(j), false}, {fl.rank(j), true}, {fl.rank(j - 1), true}};
  m.dimension = m.complex.d_max();
  m.chi = chi_p;
  const bool lf_contractible = plus_contraction(h, Weight(BigRational(1, 2)), 2).verified;
  m.chi_lf = lf_contractible ? 0 : chi_p;
  return m;
}

WindowedModel ray_model() {
  auto triv = FiniteGroup::trivial();
  ChainComplex p = ChainComplex::make(RingTag::Rational, triv, 0, {1}, {});
  ChainMap h{p, p, {{0, LaurentMatrix::identity(triv, 1)}}};
  ChainComplex point = ChainComplex::make(RingTag::Rational, triv, 0, {1}, {});
  WindowedModel m = glued_model(point, h, {{0, LaurentMatrix::identity(triv, 1)}});
  m.name = "ray";
  return m;
}

WindowedModel dual_model(const WindowedModel& m, int n) {
  WindowedModel d;
  d.name = m.name + "-dual";
  d.complex = dual_complex(m.complex, n);
  for (const auto& [j, s] : m.summands) d.summands[n - j] = s;
  d.two_sided = m.two_sided;
  d.dimension = n;
  const long sign = (n % 2 == 0) ? 1 : -1;
  // Large-weight behaviour of the dual mirrors small-weight behaviour of m.
  d.chi = sign * m.chi_lf;
  d.chi_lf = sign * m.chi;
  return d;
}

namespace {

struct Layout {
  std::vector<std::size_t> offsets;  // per summand
  std::vector<TruncationWindow> windows;
  std::vector<int> degree_of;        // z-degree label per coordinate
  std::size_t dim = 0;
};

Layout layout_for(const WindowedModel& m, int j, int depth, std::size_t g) {
  Layout l;
  auto it = m.summands.find(j);
  if (it == m.summands.end()) return l;
  const auto window = m.two_sided ? TruncationWindow::two_sided(-depth, depth) : TruncationWindow::nonneg(depth);
  const auto point = TruncationWindow::two_sided(0, 0);
  for (const auto& s : it->second) {
    const TruncationWindow w = s.point ? point : window;
    l.offsets.push_back(l.dim);
    l.windows.push_back(w);
    for (int n = w.n_min; n <= w.n_max; ++n)
      for (std::size_t i = 0; i < s.rank * g; ++i) l.degree_of.push_back(n);
    l.dim += w.length() * s.rank * g;
  }
  return l;
}

Eigen::MatrixXd boundary_window(const WindowedModel& m, int j, const Layout& src, const Layout& dst, double k,
                                std::set<int>& overflow) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<long>(dst.dim), static_cast<long>(src.dim));
  if (src.dim == 0 || dst.dim == 0) return out;
  const LaurentMatrix d = m.complex.boundary(j);
  const auto& ss = m.summands.at(j);
  const auto& ts = m.summands.at(j - 1);
  std::size_t col = 0;
  for (std::size_t a = 0; a < ss.size(); ++a) {
    std::size_t row = 0;
    for (std::size_t b = 0; b < ts.size(); ++b) {
      if (ss[a].rank > 0 && ts[b].rank > 0) {
        auto tr = weighted_truncation_float(d.block(row, col, ts[b].rank, ss[a].rank), src.windows[a], dst.windows[b], k);
        out.block(static_cast<long>(dst.offsets[b]), static_cast<long>(src.offsets[a]), tr.matrix.rows(),
                  tr.matrix.cols()) = tr.matrix;
        if (!ts[b].point) overflow.insert(tr.overflow.begin(), tr.overflow.end());
      }
      row += ts[b].rank;
    }
    col += ss[a].rank;
  }
  return out;
}

}  // namespace

IndexDepth index_at(const WindowedModel& m, double k, int depth, const NumericalRankPolicy& policy) {
  if (depth < policy.min_depth) throw Error(ErrorCode::DepthTooSmall, "window depth below the policy minimum", {{"depth", depth}});
  const ChainComplex& c = m.complex;
  const std::size_t g = c.group->order();
  IndexDepth r;
  r.depth = depth;
  if (c.empty()) return r;

  std::map<int, Layout> layouts;
  for (int j = c.d_min - 1; j <= c.d_max() + 1; ++j) layouts[j] = layout_for(m, j, depth, g);
  std::map<int, std::size_t> offset;
  std::size_t rows = 0, cols = 0;
  std::vector<int> row_deg, col_deg;
  for (int j = c.d_min; j <= c.d_max(); ++j) {
    const Layout& l = layouts[j];
    if ((j % 2 + 2) % 2 == 0) {
      offset[j] = cols;
      cols += l.dim;
      col_deg.insert(col_deg.end(), l.degree_of.begin(), l.degree_of.end());
    } else {
      offset[j] = rows;
      rows += l.dim;
      row_deg.insert(row_deg.end(), l.degree_of.begin(), l.degree_of.end());
    }
  }
  Eigen::MatrixXd dmat = Eigen::MatrixXd::Zero(static_cast<long>(rows), static_cast<long>(cols));
  std::set<int> overflow;
  for (int j = c.d_min + 1; j <= c.d_max(); ++j) {
    Eigen::MatrixXd b = boundary_window(m, j, layouts[j], layouts[j - 1], k, overflow);
    if (b.size() == 0) continue;
    if ((j % 2 + 2) % 2 == 0)  // even -> odd: the boundary itself
      dmat.block(static_cast<long>(offset[j - 1]), static_cast<long>(offset[j]), b.rows(), b.cols()) = b;
    else  // odd -> even boundary contributes its adjoint
      dmat.block(static_cast<long>(offset[j]), static_cast<long>(offset[j - 1]), b.cols(), b.rows()) = b.transpose();
  }
  r.rows = rows;
  r.cols = cols;
  r.overflow.assign(overflow.begin(), overflow.end());

  std::size_t rank = 0;
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(static_cast<long>(rows), static_cast<long>(rows));
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(static_cast<long>(cols), static_cast<long>(cols));
  if (rows > 0 && cols > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dmat, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double tol = policy.relative_tolerance * s(0);
    for (long i = 0; i < s.size(); ++i)
      if (s(i) > tol) ++rank;
    u = svd.matrixU();
    v = svd.matrixV();
  }
  r.kernel = cols - rank;
  r.cokernel = rows - rank;

  auto interior = [&](const Eigen::VectorXd& x, const std::vector<int>& deg) {
    double mass = 0.0, moment = 0.0;
    for (long i = 0; i < x.size(); ++i) {
      mass += x(i) * x(i);
      moment += x(i) * x(i) * std::abs(deg[static_cast<std::size_t>(i)]);
    }
    return mass > 0.0 && moment / mass < 0.5 * depth;
  };
  for (std::size_t i = rank; i < cols; ++i)
    if (interior(v.col(static_cast<long>(i)), col_deg)) ++r.interior_kernel;
  for (std::size_t i = rank; i < rows; ++i)
    if (interior(u.col(static_cast<long>(i)), row_deg)) ++r.interior_cokernel;
  r.index = static_cast<long>(r.interior_kernel) - static_cast<long>(r.interior_cokernel);
  return r;
}

IndexReport index_window_experiment(const WindowedModel& m, double threshold, std::vector<double> k_grid,
                                    std::vector<int> depths, const NumericalRankPolicy& policy) {
  if (k_grid.empty() || depths.empty()) throw Error(ErrorCode::EmptyWindow, "index experiment needs a k grid and depths");
  std::sort(k_grid.begin(), k_grid.end());
  std::sort(depths.begin(), depths.end());
  IndexReport report;
  report.model = m.name;
  report.chi = m.chi;
  report.chi_lf = m.chi_lf;
  report.threshold = threshold;
  report.relative_tolerance = policy.relative_tolerance;
  report.points.resize(k_grid.size());
  for (std::size_t i = 0; i < k_grid.size(); ++i) report.points[i].depths.resize(depths.size());

  parallel_for(k_grid.size() * depths.size(), [&](std::size_t idx) {
    const std::size_t i = idx / depths.size(), d = idx % depths.size();
    report.points[i].depths[d] = index_at(m, k_grid[i], depths[d], policy);
  });

  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    IndexPoint& p = report.points[i];
    p.k = k_grid[i];
    if (p.k > threshold * (1.0 + 1e-9)) {
      p.regime = "large";
      p.expected = m.chi;
    } else if (p.k < threshold * (1.0 - 1e-9)) {
      p.regime = "small";
      p.expected = m.chi_lf;
    } else {
      p.regime = "threshold";
    }
    const auto& ds = p.depths;
    p.stable = ds.size() >= 2 ? ds[ds.size() - 1].index == ds[ds.size() - 2].index : false;
    if (p.stable) {
      p.stabilized_index = ds.back().index;
      if (p.expected) p.matches = *p.stabilized_index == *p.expected;
    }
  }
  return report;
}

}  // namespace telescope
