#pragma once

// Dense matrices over an exact field (Q or Q(i)) and the elimination
// routines every other module leans on: rank, kernel, image, cokernel
// complement and full-column-rank solves.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "telescope/rational.hpp"

namespace telescope {

template <class F>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DenseMatrix& operator*=(const F& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const F& s) { return a *= s; }
  friend DenseMatrix operator*(const F& s, DenseMatrix a) { return a *= s; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const F& bkj = b(k, j);
          if (!bkj.is_zero()) c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    DenseMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  DenseMatrix column(std::size_t c) const { return block(0, c, rows_, 1); }

  /// Horizontal concatenation [a | b].
  friend DenseMatrix hstack(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ && a.cols_ != 0 && b.cols_ != 0)
      throw std::invalid_argument("hstack: row counts differ");
    std::size_t rows = a.cols_ ? a.rows_ : b.rows_;
    DenseMatrix c(rows, a.cols_ + b.cols_);
    if (a.cols_) c.set_block(0, 0, a);
    if (b.cols_) c.set_block(0, a.cols_, b);
    return c;
  }

  F trace() const {
    F t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

 private:
  void check_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using RationalMatrix = DenseMatrix<BigRational>;
using GaussianMatrix = DenseMatrix<GaussianRational>;

template <class F>
struct RowEchelon {
  DenseMatrix<F> reduced;             // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

/// Exact Gauss-Jordan elimination.
template <class F>
RowEchelon<F> row_reduce(DenseMatrix<F> a) {
  RowEchelon<F> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    F inv = F(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      F factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= factor * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class F>
std::size_t rank(const DenseMatrix<F>& a) {
  return row_reduce(a).pivots.size();
}

/// Columns form a basis of {x : a x = 0}.
template <class F>
DenseMatrix<F> kernel_basis(const DenseMatrix<F>& a) {
  auto ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::size_t nullity = a.cols() - ech.pivots.size();
  DenseMatrix<F> k(a.cols(), nullity);
  std::size_t c = 0;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    k(free, c) = F(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) k(ech.pivots[r], c) = -ech.reduced(r, free);
    ++c;
  }
  return k;
}

/// Linearly independent columns of `a` spanning its column space.
template <class F>
DenseMatrix<F> image_basis(const DenseMatrix<F>& a) {
  auto ech = row_reduce(a);
  DenseMatrix<F> b(a.rows(), ech.pivots.size());
  for (std::size_t c = 0; c < ech.pivots.size(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) b(r, c) = a(r, ech.pivots[c]);
  return b;
}

/// Standard basis vectors spanning a complement of the column space of
/// `a`; together with image_basis(a) they form a basis of the codomain.
template <class F>
DenseMatrix<F> cokernel_basis(const DenseMatrix<F>& a) {
  auto img = image_basis(a);
  auto ech = row_reduce(hstack(img, DenseMatrix<F>::identity(a.rows())));
  std::vector<std::size_t> extra;
  for (auto p : ech.pivots)
    if (p >= img.cols()) extra.push_back(p - img.cols());
  DenseMatrix<F> c(a.rows(), extra.size());
  for (std::size_t j = 0; j < extra.size(); ++j) c(extra[j], j) = F(1);
  return c;
}

struct SolverSummary {
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::size_t corank = 0;
};

template <class F>
SolverSummary summarize(const DenseMatrix<F>& a) {
  std::size_t r = rank(a);
  return {r, a.cols() - r, a.rows() - r};
}

/// Solves s x = b for s of full column rank. Returns nullopt when some
/// column of b lies outside the column space of s.
template <class F>
std::optional<DenseMatrix<F>> solve_in_span(const DenseMatrix<F>& s, const DenseMatrix<F>& b) {
  if (s.rows() != b.rows()) throw std::invalid_argument("solve_in_span: row counts differ");
  auto ech = row_reduce(hstack(s, b));
  // Full column rank of s means the first s.cols() pivots are 0..s.cols()-1.
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    if (ech.pivots[i] >= s.cols()) return std::nullopt;
    if (ech.pivots[i] != i) throw std::invalid_argument("solve_in_span: columns are dependent");
  }
  if (ech.pivots.size() != s.cols()) throw std::invalid_argument("solve_in_span: columns are dependent");
  return ech.reduced.block(0, s.cols(), s.cols(), b.cols());
}

}  // namespace telescope
