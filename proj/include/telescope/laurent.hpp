#pragma once

// Laurent polynomials and matrices over Q[pi][z, z^-1], stored as a finite
// sum of z-degree coefficients, plus weighted truncation to finite
// z-windows in the orthonormal basis e_n = k^-n z^n.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "telescope/group.hpp"

namespace telescope {

class LaurentPolynomial {
 public:
  explicit LaurentPolynomial(GroupPtr group) : group_(std::move(group)) {}
  static LaurentPolynomial monomial(int degree, const GroupRingElement& c);

  const GroupPtr& group() const { return group_; }
  const std::map<int, GroupRingElement>& terms() const { return terms_; }
  GroupRingElement coefficient(int degree) const;
  void add_term(int degree, const GroupRingElement& c);
  bool is_zero() const { return terms_.empty(); }

  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  GroupPtr group_;
  std::map<int, GroupRingElement> terms_;
};

/// M = sum_d z^d T_d with each T_d a GroupAlgebraMatrix of the same shape.
/// Zero coefficients are never stored.
class LaurentMatrix {
 public:
  LaurentMatrix() : LaurentMatrix(FiniteGroup::trivial(), 0, 0) {}
  LaurentMatrix(GroupPtr group, std::size_t rows, std::size_t cols);

  static LaurentMatrix identity(GroupPtr group, std::size_t n);
  /// z^degree * m
  static LaurentMatrix monomial(int degree, const GroupAlgebraMatrix& m);
  static LaurentMatrix constant(const GroupAlgebraMatrix& m) { return monomial(0, m); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const GroupPtr& group() const { return group_; }

  const std::map<int, GroupAlgebraMatrix>& terms() const { return terms_; }
  GroupAlgebraMatrix coefficient(int degree) const;
  void add_term(int degree, const GroupAlgebraMatrix& m);

  bool is_zero() const { return terms_.empty(); }
  /// Hull of the support; nullopt for the zero matrix.
  std::optional<std::pair<int, int>> degree_range() const { return hull_; }
  int min_degree() const { return hull_ ? hull_->first : 0; }
  int max_degree() const { return hull_ ? hull_->second : 0; }

  LaurentPolynomial entry(std::size_t r, std::size_t c) const;
  void set_entry(std::size_t r, std::size_t c, const LaurentPolynomial& p);

  /// z -> z^-1 entrywise.
  LaurentMatrix reversed() const;
  /// Transpose, group-ring bar, and z -> z^-1.
  LaurentMatrix conjugate_transpose() const;
  /// Multiplication by z^d.
  LaurentMatrix shifted(int d) const;
  LaurentMatrix pow(unsigned e) const;

  LaurentMatrix operator-() const;
  LaurentMatrix& operator+=(const LaurentMatrix& o);
  LaurentMatrix& operator-=(const LaurentMatrix& o);
  LaurentMatrix& operator*=(const BigRational& s);
  friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) { return a += b; }
  friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) { return a -= b; }
  friend LaurentMatrix operator*(LaurentMatrix a, const BigRational& s) { return a *= s; }
  friend LaurentMatrix operator*(const BigRational& s, LaurentMatrix a) { return a *= s; }
  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b);

  void set_block(std::size_t r0, std::size_t c0, const LaurentMatrix& b);
  LaurentMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

 private:
  void refresh_hull();

  GroupPtr group_;
  std::size_t rows_;
  std::size_t cols_;
  std::map<int, GroupAlgebraMatrix> terms_;
  std::optional<std::pair<int, int>> hull_;
};

struct Weight {
  BigRational k;
  double k_float;

  /// Throws BadScale unless k > 0.
  explicit Weight(BigRational value);
};

enum class WindowVariant { TwoSided, NonNeg, NonPos };

struct TruncationWindow {
  WindowVariant variant = WindowVariant::TwoSided;
  int n_min = 0;
  int n_max = 0;

  static TruncationWindow two_sided(int n_min, int n_max);
  static TruncationWindow nonneg(int n_max, int n_min = 0);
  static TruncationWindow nonpos(int n_min, int n_max = 0);

  /// Throws EmptyWindow / DimensionMismatch on inconsistent bounds.
  void validate() const;
  std::size_t length() const { return static_cast<std::size_t>(n_max - n_min + 1); }
  bool contains(int n) const { return n >= n_min && n <= n_max; }
};

template <class Mat>
struct Truncation {
  Mat matrix;
  TruncationWindow domain;
  TruncationWindow codomain;
  /// Codomain degrees that received nonzero blocks but lie outside the
  /// codomain window; sorted, without duplicates.
  std::vector<int> overflow;
};

using ExactTruncation = Truncation<RationalMatrix>;
using FloatTruncation = Truncation<Eigen::MatrixXd>;

/// Row index layout: degree-major, then module index, then group element.
/// Block (n', n) = k^(n'-n) R(T_(n'-n)).
ExactTruncation weighted_truncation(const LaurentMatrix& m, const TruncationWindow& w, const BigRational& k);
ExactTruncation weighted_truncation(const LaurentMatrix& m, const TruncationWindow& domain,
                                    const TruncationWindow& codomain, const BigRational& k);
FloatTruncation weighted_truncation_float(const LaurentMatrix& m, const TruncationWindow& w, double k);
FloatTruncation weighted_truncation_float(const LaurentMatrix& m, const TruncationWindow& domain,
                                          const TruncationWindow& codomain, double k);

/// sum_d k^d ||R(T_d)||_2
double weighted_norm_bound(const LaurentMatrix& m, double k);

}  // namespace telescope
