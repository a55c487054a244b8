#include "telescope/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "telescope/error.hpp"

namespace telescope {

namespace {

bool is_permutation_of_range(const std::vector<std::size_t>& v) {
  std::vector<bool> seen(v.size(), false);
  for (auto x : v) {
    if (seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

GroupPtr FiniteGroup::from_table(Table table, std::vector<std::string> labels) {
  const std::size_t m = table.size();
  if (m == 0) throw Error(ErrorCode::BadTable, "group table is empty");
  for (std::size_t a = 0; a < m; ++a) {
    if (table[a].size() != m)
      throw Error(ErrorCode::BadTable, "group table is not square", {{"row", a}});
    for (std::size_t b = 0; b < m; ++b)
      if (table[a][b] >= m)
        throw Error(ErrorCode::BadTable, "table entry out of range", {{"row", a}, {"col", b}});
  }
  if (!labels.empty() && labels.size() != m)
    throw Error(ErrorCode::BadTable, "label count differs from group order");

  // Cancellation: left and right multiplication by every element must be
  // bijective, otherwise that element cannot have an inverse.
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<std::size_t> col(m);
    for (std::size_t b = 0; b < m; ++b) col[b] = table[b][a];
    if (!is_permutation_of_range(table[a]) || !is_permutation_of_range(col))
      throw Error(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse",
                  {{"element", a}});
  }

  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < m && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < m && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorCode::NoIdentity, "table has no two-sided identity");

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorCode::NonAssociative, "multiplication is not associative",
                      {{"a", a}, {"b", b}, {"c", c}});

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->mult_ = std::move(table);
  g->identity_ = *identity;
  g->inverse_.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (g->mult_[a][b] == *identity) g->inverse_[a] = b;

  g->class_of_.assign(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    if (g->class_of_[a] != m) continue;
    std::vector<std::size_t> cls;
    for (std::size_t x = 0; x < m; ++x) {
      std::size_t conj = g->mult_[g->mult_[x][a]][g->inverse_[x]];
      if (g->class_of_[conj] == m) {
        g->class_of_[conj] = g->classes_.size();
        cls.push_back(conj);
      }
    }
    std::sort(cls.begin(), cls.end());
    g->classes_.push_back(std::move(cls));
  }

  if (labels.empty()) {
    labels.resize(m);
    for (std::size_t a = 0; a < m; ++a) labels[a] = a == *identity ? "e" : "g" + std::to_string(a);
  }
  g->labels_ = std::move(labels);
  return g;
}

GroupPtr FiniteGroup::trivial() {
  static const GroupPtr g = from_table({{0}}, {"e"});
  return g;
}

GroupPtr FiniteGroup::cyclic(std::size_t n) {
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) labels[a] = a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a));
  return from_table(std::move(t), std::move(labels));
}

GroupPtr FiniteGroup::symmetric(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::vector<std::size_t>& q) {
    return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  Table t(perms.size(), std::vector<std::size_t>(perms.size()));
  std::vector<std::size_t> comp(n);
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      for (std::size_t i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
      t[a][b] = index_of(comp);
    }
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s = "[";
    for (auto x : q) s += std::to_string(x);
    labels.push_back(s + "]");
  }
  return from_table(std::move(t), std::move(labels));
}

void require_same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw Error(ErrorCode::GroupMismatch, "operands live over different groups");
}

// ---------------------------------------------------------------- Q[pi]

GroupRingElement::GroupRingElement(GroupPtr group) : group_(std::move(group)), coeffs_(group_->order()) {}

GroupRingElement::GroupRingElement(GroupPtr group, std::vector<BigRational> coeffs)
    : group_(std::move(group)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != group_->order())
    throw Error(ErrorCode::DimensionMismatch, "coefficient count differs from group order",
                {{"expected", group_->order()}, {"got", coeffs_.size()}});
}

GroupRingElement GroupRingElement::one(GroupPtr group) { return basis(group, group->identity()); }

GroupRingElement GroupRingElement::basis(GroupPtr group, std::size_t g) {
  GroupRingElement e(std::move(group));
  e.coeffs_[g] = 1;
  return e;
}

GroupRingElement GroupRingElement::scalar(GroupPtr group, const BigRational& s) {
  GroupRingElement e(group);
  e.coeffs_[group->identity()] = s;
  return e;
}

bool GroupRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRational& c) { return c.is_zero(); });
}

GroupRingElement GroupRingElement::conjugate() const {
  GroupRingElement out(group_);
  for (std::size_t g = 0; g < coeffs_.size(); ++g) out.coeffs_[group_->inverse(g)] = coeffs_[g];
  return out;
}

std::string GroupRingElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t g = 0; g < coeffs_.size(); ++g) {
    if (coeffs_[g].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[g] << ")" << group_->labels()[g];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  require_same_group(group_, o.group_);
  for (std::size_t g = 0; g < coeffs_.size(); ++g) coeffs_[g] += o.coeffs_[g];
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  require_same_group(group_, o.group_);
  for (std::size_t g = 0; g < coeffs_.size(); ++g) coeffs_[g] -= o.coeffs_[g];
  return *this;
}

GroupRingElement& GroupRingElement::operator*=(const BigRational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  require_same_group(a.group_, b.group_);
  const auto& grp = *a.group_;
  GroupRingElement c(a.group_);
  for (std::size_t g = 0; g < grp.order(); ++g) {
    if (a.coeffs_[g].is_zero()) continue;
    for (std::size_t h = 0; h < grp.order(); ++h)
      if (!b.coeffs_[h].is_zero()) c.coeffs_[grp.mul(g, h)] += a.coeffs_[g] * b.coeffs_[h];
  }
  return c;
}

bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
  return (a.group_ == b.group_ || *a.group_ == *b.group_) && a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------- matrices

GroupAlgebraMatrix::GroupAlgebraMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
    : group_(group), rows_(rows), cols_(cols), entries_(rows * cols, GroupRingElement(group)) {}

GroupAlgebraMatrix GroupAlgebraMatrix::identity(GroupPtr group, std::size_t n) {
  return scalar(group, n, GroupRingElement::one(group));
}

GroupAlgebraMatrix GroupAlgebraMatrix::scalar(GroupPtr group, std::size_t n, const GroupRingElement& s) {
  GroupAlgebraMatrix m(group, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

GroupAlgebraMatrix GroupAlgebraMatrix::from_rational(GroupPtr group, const RationalMatrix& r) {
  GroupAlgebraMatrix m(group, r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) m(i, j) = GroupRingElement::scalar(group, r(i, j));
  return m;
}

bool GroupAlgebraMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const GroupRingElement& e) { return e.is_zero(); });
}

GroupAlgebraMatrix GroupAlgebraMatrix::conjugate_transpose() const {
  GroupAlgebraMatrix t(group_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conjugate();
  return t;
}

GroupAlgebraMatrix GroupAlgebraMatrix::pow(unsigned e) const {
  if (rows_ != cols_) throw Error(ErrorCode::DimensionMismatch, "power of a non-square matrix");
  GroupAlgebraMatrix result = identity(group_, rows_), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

GroupAlgebraMatrix GroupAlgebraMatrix::operator-() const {
  GroupAlgebraMatrix out(*this);
  for (auto& e : out.entries_) e = -e;
  return out;
}

GroupAlgebraMatrix& GroupAlgebraMatrix::operator+=(const GroupAlgebraMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum: shapes differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

GroupAlgebraMatrix& GroupAlgebraMatrix::operator-=(const GroupAlgebraMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference: shapes differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

GroupAlgebraMatrix& GroupAlgebraMatrix::operator*=(const BigRational& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

GroupAlgebraMatrix operator*(const GroupAlgebraMatrix& a, const GroupAlgebraMatrix& b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ",
                {{"left_cols", a.cols_}, {"right_rows", b.rows_}});
  require_same_group(a.group_, b.group_);
  GroupAlgebraMatrix c(a.group_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const GroupAlgebraMatrix& a, const GroupAlgebraMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

void GroupAlgebraMatrix::set_block(std::size_t r0, std::size_t c0, const GroupAlgebraMatrix& b) {
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

GroupAlgebraMatrix GroupAlgebraMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  GroupAlgebraMatrix b(group_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

RationalMatrix left_multiplication(const GroupRingElement& a) {
  const auto& grp = *a.group();
  RationalMatrix l(grp.order(), grp.order());
  for (std::size_t g = 0; g < grp.order(); ++g) {
    if (a[g].is_zero()) continue;
    for (std::size_t h = 0; h < grp.order(); ++h) l(grp.mul(g, h), h) += a[g];
  }
  return l;
}

RationalMatrix regular_representation(const GroupAlgebraMatrix& m) {
  const std::size_t n = m.group()->order();
  RationalMatrix out(m.rows() * n, m.cols() * n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out.set_block(i * n, j * n, left_multiplication(m(i, j)));
  return out;
}

RationalMatrix right_action(const GroupPtr& group, std::size_t g, std::size_t copies) {
  const std::size_t n = group->order();
  const std::size_t ginv = group->inverse(g);
  RationalMatrix a(copies * n, copies * n);
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t h = 0; h < n; ++h) a(c * n + group->mul(h, ginv), c * n + h) = 1;
  return a;
}

IdempotentReport idempotent_check(const GroupRingElement& p) {
  IdempotentReport r;
  r.idempotent = p * p == p;
  r.central = true;
  const auto& grp = p.group();
  for (std::size_t g = 0; g < grp->order() && r.central; ++g) {
    auto eg = GroupRingElement::basis(grp, g);
    r.central = eg * p == p * eg;
  }
  return r;
}

// ---------------------------------------------------------------- characters

VirtualCharacter::VirtualCharacter(GroupPtr group) : group_(std::move(group)), values_(group_->class_count()) {}

VirtualCharacter::VirtualCharacter(GroupPtr group, std::vector<BigRational> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_->class_count())
    throw Error(ErrorCode::DimensionMismatch, "character length differs from class count",
                {{"expected", group_->class_count()}, {"got", values_.size()}});
}

VirtualCharacter VirtualCharacter::regular(GroupPtr group) {
  VirtualCharacter chi(group);
  chi.values_[group->identity_class()] = static_cast<long>(group->order());
  return chi;
}

VirtualCharacter VirtualCharacter::conjugate() const {
  VirtualCharacter out(group_);
  for (std::size_t c = 0; c < values_.size(); ++c) {
    std::size_t rep = group_->conjugacy_classes()[c].front();
    out.values_[c] = values_[group_->class_of(group_->inverse(rep))];
  }
  return out;
}

std::vector<std::string> VirtualCharacter::strings() const {
  std::vector<std::string> s;
  for (const auto& v : values_) s.push_back(v.str());
  return s;
}

bool VirtualCharacter::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const BigRational& v) { return v.is_zero(); });
}

VirtualCharacter VirtualCharacter::operator-() const {
  VirtualCharacter out(*this);
  for (auto& v : out.values_) v = -v;
  return out;
}

VirtualCharacter& VirtualCharacter::operator+=(const VirtualCharacter& o) {
  require_same_group(group_, o.group_);
  for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += o.values_[c];
  return *this;
}

VirtualCharacter& VirtualCharacter::operator-=(const VirtualCharacter& o) {
  require_same_group(group_, o.group_);
  for (std::size_t c = 0; c < values_.size(); ++c) values_[c] -= o.values_[c];
  return *this;
}

VirtualCharacter& VirtualCharacter::operator*=(const BigRational& s) {
  for (auto& v : values_) v *= s;
  return *this;
}

bool operator==(const VirtualCharacter& a, const VirtualCharacter& b) {
  return (a.group_ == b.group_ || *a.group_ == *b.group_) && a.values_ == b.values_;
}

VirtualCharacter character_of_invariant_subspace(const GroupPtr& group, const RationalMatrix& basis) {
  const std::size_t n = group->order();
  VirtualCharacter chi(group);
  if (basis.cols() == 0) return chi;
  if (basis.rows() % n != 0)
    throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension is not a multiple of |pi|",
                {{"rows", basis.rows()}, {"order", n}});
  const std::size_t copies = basis.rows() / n;
  std::vector<bool> done(group->class_count(), false);
  for (std::size_t g = 0; g < n; ++g) {
    // right_action is a permutation matrix; apply it by moving rows.
    const std::size_t ginv = group->inverse(g);
    RationalMatrix moved(basis.rows(), basis.cols());
    for (std::size_t c = 0; c < copies; ++c)
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < basis.cols(); ++k) moved(c * n + group->mul(h, ginv), k) = basis(c * n + h, k);
    auto x = solve_in_span(basis, moved);
    if (!x)
      throw Error(ErrorCode::NotInvariant, "span is not invariant under " + group->labels()[g],
                  {{"element", g}, {"label", group->labels()[g]}});
    std::size_t cls = group->class_of(g);
    if (!done[cls]) {
      chi = chi + VirtualCharacter(group, [&] {
              std::vector<BigRational> v(group->class_count());
              v[cls] = x->trace();
              return v;
            }());
      done[cls] = true;
    }
  }
  return chi;
}

bool reduced_class_is_zero(const VirtualCharacter& chi) {
  const auto& grp = *chi.group();
  for (std::size_t c = 0; c < grp.class_count(); ++c)
    if (c != grp.identity_class() && !chi[c].is_zero()) return false;
  const BigRational& at_e = chi[grp.identity_class()];
  if (!at_e.is_integer()) return false;
  return (at_e.numerator() % static_cast<long>(grp.order())) == 0;
}

}  // namespace telescope
