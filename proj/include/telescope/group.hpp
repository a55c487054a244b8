#pragma once

// Finite groups given by multiplication tables, the rational group ring
// Q[pi], matrices over it, the regular representation, and rational
// virtual characters standing in for K0(C[pi]) classes.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "telescope/matrix.hpp"
#include "telescope/rational.hpp"

namespace telescope {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  /// Validates the table and derives identity, inverses and conjugacy
  /// classes. Throws Error with BadTable, NoIdentity, NoInverse or
  /// NonAssociative; the detail payload names the offending elements.
  static GroupPtr from_table(Table table, std::vector<std::string> labels = {});

  static GroupPtr trivial();
  static GroupPtr cyclic(std::size_t n);
  /// Symmetric group on n letters, elements in lexicographic order of
  /// permutations (index 0 is the identity).
  static GroupPtr symmetric(std::size_t n);

  std::size_t order() const { return mult_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return mult_[a][b]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const Table& table() const { return mult_; }
  const std::vector<std::string>& labels() const { return labels_; }

  const std::vector<std::vector<std::size_t>>& conjugacy_classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t class_of(std::size_t g) const { return class_of_[g]; }
  std::size_t identity_class() const { return class_of_[identity_]; }

  bool operator==(const FiniteGroup& o) const { return mult_ == o.mult_; }

 private:
  FiniteGroup() = default;

  Table mult_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::string> labels_;
};

/// Throws GroupMismatch unless both pointers denote the same group table.
void require_same_group(const GroupPtr& a, const GroupPtr& b);

class GroupRingElement {
 public:
  explicit GroupRingElement(GroupPtr group);
  GroupRingElement(GroupPtr group, std::vector<BigRational> coeffs);

  static GroupRingElement zero(GroupPtr group) { return GroupRingElement(std::move(group)); }
  static GroupRingElement one(GroupPtr group);
  static GroupRingElement basis(GroupPtr group, std::size_t g);
  static GroupRingElement scalar(GroupPtr group, const BigRational& s);

  const GroupPtr& group() const { return group_; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }
  const BigRational& operator[](std::size_t g) const { return coeffs_[g]; }
  BigRational& operator[](std::size_t g) { return coeffs_[g]; }

  bool is_zero() const;
  /// Group-ring anti-involution: sum a_g g  ->  sum a_g g^{-1}.
  GroupRingElement conjugate() const;
  std::string str() const;

  GroupRingElement operator-() const;
  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  GroupRingElement& operator*=(const BigRational& s);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(GroupRingElement a, const BigRational& s) { return a *= s; }
  friend GroupRingElement operator*(const BigRational& s, GroupRingElement a) { return a *= s; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b);

 private:
  GroupPtr group_;
  std::vector<BigRational> coeffs_;
};

class GroupAlgebraMatrix {
 public:
  GroupAlgebraMatrix(GroupPtr group, std::size_t rows, std::size_t cols);

  static GroupAlgebraMatrix identity(GroupPtr group, std::size_t n);
  static GroupAlgebraMatrix scalar(GroupPtr group, std::size_t n, const GroupRingElement& s);
  /// Embeds a rational matrix (coefficients on the identity element).
  static GroupAlgebraMatrix from_rational(GroupPtr group, const RationalMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const GroupPtr& group() const { return group_; }

  GroupRingElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const GroupRingElement& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_zero() const;
  /// Transpose with the anti-involution applied entrywise.
  GroupAlgebraMatrix conjugate_transpose() const;
  GroupAlgebraMatrix pow(unsigned e) const;

  GroupAlgebraMatrix operator-() const;
  GroupAlgebraMatrix& operator+=(const GroupAlgebraMatrix& o);
  GroupAlgebraMatrix& operator-=(const GroupAlgebraMatrix& o);
  GroupAlgebraMatrix& operator*=(const BigRational& s);
  friend GroupAlgebraMatrix operator+(GroupAlgebraMatrix a, const GroupAlgebraMatrix& b) { return a += b; }
  friend GroupAlgebraMatrix operator-(GroupAlgebraMatrix a, const GroupAlgebraMatrix& b) { return a -= b; }
  friend GroupAlgebraMatrix operator*(GroupAlgebraMatrix a, const BigRational& s) { return a *= s; }
  friend GroupAlgebraMatrix operator*(const BigRational& s, GroupAlgebraMatrix a) { return a *= s; }
  friend GroupAlgebraMatrix operator*(const GroupAlgebraMatrix& a, const GroupAlgebraMatrix& b);
  friend bool operator==(const GroupAlgebraMatrix& a, const GroupAlgebraMatrix& b);

  void set_block(std::size_t r0, std::size_t c0, const GroupAlgebraMatrix& b);
  GroupAlgebraMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

 private:
  GroupPtr group_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GroupRingElement> entries_;
};

/// m x m matrix of left multiplication by `a` on Q[pi] in the group basis.
RationalMatrix left_multiplication(const GroupRingElement& a);

/// Block (i,j) is left multiplication by entry (i,j); size (rows*m) x (cols*m).
RationalMatrix regular_representation(const GroupAlgebraMatrix& m);

/// Action of g on (Q[pi])^copies commuting with every regular
/// representation matrix: x -> x g^{-1} in each summand.
RationalMatrix right_action(const GroupPtr& group, std::size_t g, std::size_t copies);

struct IdempotentReport {
  bool idempotent = false;
  bool central = false;
};

IdempotentReport idempotent_check(const GroupRingElement& p);

class VirtualCharacter {
 public:
  explicit VirtualCharacter(GroupPtr group);
  VirtualCharacter(GroupPtr group, std::vector<BigRational> values);

  /// Character of Q[pi] itself: |pi| on the identity class, 0 elsewhere.
  static VirtualCharacter regular(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const std::vector<BigRational>& values() const { return values_; }
  const BigRational& operator[](std::size_t c) const { return values_[c]; }

  /// Complex conjugate character (value on the class of g^{-1}).
  VirtualCharacter conjugate() const;
  std::vector<std::string> strings() const;
  bool is_zero() const;

  VirtualCharacter operator-() const;
  VirtualCharacter& operator+=(const VirtualCharacter& o);
  VirtualCharacter& operator-=(const VirtualCharacter& o);
  VirtualCharacter& operator*=(const BigRational& s);
  friend VirtualCharacter operator+(VirtualCharacter a, const VirtualCharacter& b) { return a += b; }
  friend VirtualCharacter operator-(VirtualCharacter a, const VirtualCharacter& b) { return a -= b; }
  friend VirtualCharacter operator*(const BigRational& s, VirtualCharacter a) { return a *= s; }
  friend bool operator==(const VirtualCharacter& a, const VirtualCharacter& b);

 private:
  GroupPtr group_;
  std::vector<BigRational> values_;
};

/// `basis` has copies*|pi| rows; its columns must be independent and span
/// a subspace invariant under right_action. values[c] is the trace of a
/// representative of class c on that span. Throws NotInvariant naming the
/// first group element that moves the span.
VirtualCharacter character_of_invariant_subspace(const GroupPtr& group, const RationalMatrix& basis);

/// True iff chi is an integer multiple of the regular character.
bool reduced_class_is_zero(const VirtualCharacter& chi);

}  // namespace telescope
