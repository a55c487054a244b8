#include "telescope/laurent.hpp"

#include <cmath>
#include <set>

#include "telescope/error.hpp"
#include "telescope/numeric.hpp"

namespace telescope {

// ---------------------------------------------------------------- polynomials

LaurentPolynomial LaurentPolynomial::monomial(int degree, const GroupRingElement& c) {
  LaurentPolynomial p(c.group());
  p.add_term(degree, c);
  return p;
}

GroupRingElement LaurentPolynomial::coefficient(int degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? GroupRingElement(group_) : it->second;
}

void LaurentPolynomial::add_term(int degree, const GroupRingElement& c) {
  require_same_group(group_, c.group());
  auto it = terms_.find(degree);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(degree, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  LaurentPolynomial c = a;
  for (const auto& [d, t] : b.terms_) c.add_term(d, t);
  return c;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  LaurentPolynomial c(a.group_);
  for (const auto& [da, ta] : a.terms_)
    for (const auto& [db, tb] : b.terms_) c.add_term(da + db, ta * tb);
  return c;
}

// ---------------------------------------------------------------- matrices

LaurentMatrix::LaurentMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
    : group_(std::move(group)), rows_(rows), cols_(cols) {}

LaurentMatrix LaurentMatrix::identity(GroupPtr group, std::size_t n) {
  return monomial(0, GroupAlgebraMatrix::identity(group, n));
}

LaurentMatrix LaurentMatrix::monomial(int degree, const GroupAlgebraMatrix& m) {
  LaurentMatrix out(m.group(), m.rows(), m.cols());
  out.add_term(degree, m);
  return out;
}

GroupAlgebraMatrix LaurentMatrix::coefficient(int degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? GroupAlgebraMatrix(group_, rows_, cols_) : it->second;
}

void LaurentMatrix::add_term(int degree, const GroupAlgebraMatrix& m) {
  if (m.rows() != rows_ || m.cols() != cols_)
    throw Error(ErrorCode::DimensionMismatch, "Laurent term has the wrong shape",
                {{"expected", {rows_, cols_}}, {"got", {m.rows(), m.cols()}}});
  require_same_group(group_, m.group());
  auto it = terms_.find(degree);
  if (it == terms_.end()) {
    if (!m.is_zero()) terms_.emplace(degree, m);
  } else {
    it->second += m;
    if (it->second.is_zero()) terms_.erase(it);
  }
  refresh_hull();
}

void LaurentMatrix::refresh_hull() {
  if (terms_.empty())
    hull_.reset();
  else
    hull_ = std::make_pair(terms_.begin()->first, terms_.rbegin()->first);
}

LaurentPolynomial LaurentMatrix::entry(std::size_t r, std::size_t c) const {
  LaurentPolynomial p(group_);
  for (const auto& [d, t] : terms_) p.add_term(d, t(r, c));
  return p;
}

void LaurentMatrix::set_entry(std::size_t r, std::size_t c, const LaurentPolynomial& p) {
  for (auto& [d, t] : terms_) t(r, c) = GroupRingElement(group_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  for (const auto& [d, coeff] : p.terms()) {
    GroupAlgebraMatrix m(group_, rows_, cols_);
    m(r, c) = coeff;
    add_term(d, m);
  }
  refresh_hull();
}

LaurentMatrix LaurentMatrix::reversed() const {
  LaurentMatrix out(group_, rows_, cols_);
  for (const auto& [d, t] : terms_) out.add_term(-d, t);
  return out;
}

LaurentMatrix LaurentMatrix::conjugate_transpose() const {
  LaurentMatrix out(group_, cols_, rows_);
  for (const auto& [d, t] : terms_) out.add_term(-d, t.conjugate_transpose());
  return out;
}

LaurentMatrix LaurentMatrix::shifted(int s) const {
  LaurentMatrix out(group_, rows_, cols_);
  for (const auto& [d, t] : terms_) out.add_term(d + s, t);
  return out;
}

LaurentMatrix LaurentMatrix::pow(unsigned e) const {
  if (rows_ != cols_) throw Error(ErrorCode::DimensionMismatch, "power of a non-square Laurent matrix");
  LaurentMatrix result = identity(group_, rows_), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

LaurentMatrix LaurentMatrix::operator-() const {
  LaurentMatrix out(*this);
  for (auto& [d, t] : out.terms_) t = -t;
  return out;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorCode::DimensionMismatch, "Laurent sum: shapes differ");
  for (const auto& [d, t] : o.terms_) add_term(d, t);
  return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& o) { return *this += -o; }

LaurentMatrix& LaurentMatrix::operator*=(const BigRational& s) {
  if (s.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [d, t] : terms_) t *= s;
  }
  refresh_hull();
  return *this;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorCode::DimensionMismatch, "Laurent product: inner dimensions differ",
                {{"left_cols", a.cols_}, {"right_rows", b.rows_}});
  LaurentMatrix c(a.group_, a.rows_, b.cols_);
  for (const auto& [da, ta] : a.terms_)
    for (const auto& [db, tb] : b.terms_) c.add_term(da + db, ta * tb);
  return c;
}

bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.terms_ == b.terms_;
}

void LaurentMatrix::set_block(std::size_t r0, std::size_t c0, const LaurentMatrix& b) {
  std::set<int> degrees;
  for (const auto& [d, t] : terms_) degrees.insert(d);
  for (const auto& [d, t] : b.terms_) degrees.insert(d);
  const GroupAlgebraMatrix zero_block(group_, b.rows_, b.cols_);
  for (int d : degrees) {
    GroupAlgebraMatrix m = coefficient(d);
    auto it = b.terms_.find(d);
    m.set_block(r0, c0, it == b.terms_.end() ? zero_block : it->second);
    terms_.erase(d);
    add_term(d, m);
  }
  refresh_hull();
}

LaurentMatrix LaurentMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  LaurentMatrix out(group_, nr, nc);
  for (const auto& [d, t] : terms_) out.add_term(d, t.block(r0, c0, nr, nc));
  return out;
}

// ---------------------------------------------------------------- weights and windows

Weight::Weight(BigRational value) : k(std::move(value)), k_float(k.to_double()) {
  if (k.sign() <= 0) throw Error(ErrorCode::BadScale, "weight k must be positive", {{"k", k.str()}});
}

TruncationWindow TruncationWindow::two_sided(int n_min, int n_max) {
  TruncationWindow w{WindowVariant::TwoSided, n_min, n_max};
  w.validate();
  return w;
}

TruncationWindow TruncationWindow::nonneg(int n_max, int n_min) {
  TruncationWindow w{WindowVariant::NonNeg, n_min, n_max};
  w.validate();
  return w;
}

TruncationWindow TruncationWindow::nonpos(int n_min, int n_max) {
  TruncationWindow w{WindowVariant::NonPos, n_min, n_max};
  w.validate();
  return w;
}

void TruncationWindow::validate() const {
  if (n_min > n_max)
    throw Error(ErrorCode::EmptyWindow, "truncation window is empty", {{"n_min", n_min}, {"n_max", n_max}});
  if (variant == WindowVariant::NonNeg && n_min < 0)
    throw Error(ErrorCode::EmptyWindow, "nonnegative window reaches below degree 0", {{"n_min", n_min}});
  if (variant == WindowVariant::NonPos && n_max > 0)
    throw Error(ErrorCode::EmptyWindow, "nonpositive window reaches above degree 0", {{"n_max", n_max}});
}

// ---------------------------------------------------------------- truncation

ExactTruncation weighted_truncation(const LaurentMatrix& m, const TruncationWindow& w, const BigRational& k) {
  return weighted_truncation(m, w, w, k);
}

ExactTruncation weighted_truncation(const LaurentMatrix& m, const TruncationWindow& domain,
                                    const TruncationWindow& codomain, const BigRational& k) {
  domain.validate();
  codomain.validate();
  if (k.sign() <= 0) throw Error(ErrorCode::BadScale, "weight k must be positive", {{"k", k.str()}});
  const std::size_t g = m.group()->order();
  const std::size_t rb = m.rows() * g, cb = m.cols() * g;
  ExactTruncation out{RationalMatrix(codomain.length() * rb, domain.length() * cb), domain, codomain, {}};
  std::set<int> overflow;
  for (const auto& [d, t] : m.terms()) {
    RationalMatrix block = regular_representation(t) * k.pow(d);
    for (int n = domain.n_min; n <= domain.n_max; ++n) {
      int target = n + d;
      if (!codomain.contains(target)) {
        overflow.insert(target);
        continue;
      }
      out.matrix.set_block(static_cast<std::size_t>(target - codomain.n_min) * rb,
                           static_cast<std::size_t>(n - domain.n_min) * cb, block);
    }
  }
  out.overflow.assign(overflow.begin(), overflow.end());
  return out;
}

FloatTruncation weighted_truncation_float(const LaurentMatrix& m, const TruncationWindow& w, double k) {
  return weighted_truncation_float(m, w, w, k);
}

FloatTruncation weighted_truncation_float(const LaurentMatrix& m, const TruncationWindow& domain,
                                          const TruncationWindow& codomain, double k) {
  domain.validate();
  codomain.validate();
  if (!(k > 0.0)) throw Error(ErrorCode::BadScale, "weight k must be positive", {{"k", k}});
  const std::size_t g = m.group()->order();
  const long rb = static_cast<long>(m.rows() * g), cb = static_cast<long>(m.cols() * g);
  FloatTruncation out{Eigen::MatrixXd::Zero(static_cast<long>(codomain.length()) * rb,
                                            static_cast<long>(domain.length()) * cb),
                      domain, codomain, {}};
  std::set<int> overflow;
  for (const auto& [d, t] : m.terms()) {
    Eigen::MatrixXd block = to_eigen(regular_representation(t)) * std::pow(k, d);
    for (int n = domain.n_min; n <= domain.n_max; ++n) {
      int target = n + d;
      if (!codomain.contains(target)) {
        overflow.insert(target);
        continue;
      }
      out.matrix.block((target - codomain.n_min) * rb, (n - domain.n_min) * cb, rb, cb) = block;
    }
  }
  out.overflow.assign(overflow.begin(), overflow.end());
  return out;
}

double weighted_norm_bound(const LaurentMatrix& m, double k) {
  double bound = 0.0;
  for (const auto& [d, t] : m.terms()) bound += std::pow(k, d) * spectral_norm(regular_representation(t));
  return bound;
}

}  // namespace telescope
