#pragma once

// Exact rational and Gaussian-rational scalars.

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace telescope {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (GMP canonicalizes after every operation).
class BigRational {
 public:
  BigRational() = default;
  template <std::integral I>
  BigRational(I n) : value_(static_cast<long>(n)) {}  // NOLINT(implicit)
  BigRational(long num, long den);
  BigRational(const mpz_class& num, const mpz_class& den);
  explicit BigRational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Parses "a", "-a", or "a/b". Throws Error(ParseError).
  static BigRational parse(std::string_view text);

  std::string str() const;
  double to_double() const { return value_.get_d(); }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  BigRational operator-() const { return BigRational(mpq_class(-value_)); }
  BigRational& operator+=(const BigRational& o) { value_ += o.value_; return *this; }
  BigRational& operator-=(const BigRational& o) { value_ -= o.value_; return *this; }
  BigRational& operator*=(const BigRational& o) { value_ *= o.value_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  BigRational abs() const { return sign() < 0 ? -*this : *this; }
  BigRational reciprocal() const;
  /// Integer power; negative exponents invert (zero base throws).
  BigRational pow(long e) const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const BigRational& q);

/// Element of Q(i), used for exact specialization at rational points of
/// the complex plane such as (3+4i)/5.
class GaussianRational {
 public:
  GaussianRational() = default;
  template <std::integral I>
  GaussianRational(I n) : re_(n) {}  // NOLINT(implicit)
  GaussianRational(BigRational re, BigRational im = BigRational()) : re_(std::move(re)), im_(std::move(im)) {}

  /// Parses "a/b" or "a/b+c/di" style text, e.g. "3/5+4/5i" or "-1/2i".
  static GaussianRational parse(std::string_view text);

  const BigRational& re() const { return re_; }
  const BigRational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  GaussianRational conj() const { return {re_, -im_}; }
  BigRational norm2() const { return re_ * re_ + im_ * im_; }
  GaussianRational reciprocal() const;
  GaussianRational pow(long e) const;
  std::string str() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
  GaussianRational& operator-=(const GaussianRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.reciprocal(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

 private:
  BigRational re_;
  BigRational im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& q);

/// Least common multiple of the denominators, as a positive integer.
mpz_class lcm_of_denominators(const BigRational* first, std::size_t count);

}  // namespace telescope
