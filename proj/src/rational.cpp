#include "telescope/rational.hpp"

#include <cctype>
#include <ostream>

#include "telescope/error.hpp"

namespace telescope {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!valid_integer(s)) throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s));
}

}  // namespace

BigRational::BigRational(long num, long den) : BigRational(mpz_class(num), mpz_class(den)) {}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_integer(text), mpz_class(1));
  return BigRational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string BigRational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

BigRational BigRational::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  return BigRational(mpq_class(1) / value_);
}

BigRational BigRational::pow(long e) const {
  if (e < 0) return reciprocal().pow(-e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return BigRational(num, den);
}

std::ostream& operator<<(std::ostream& os, const BigRational& q) { return os << q.str(); }

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty Gaussian rational");
  if (s.back() != 'i') return {BigRational::parse(s)};
  s.pop_back();
  // split at the last sign that is not the leading one
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if (s[i] == '+' || s[i] == '-') { split = i; break; }
  auto imag_of = [](std::string t) {
    if (t.empty() || t == "+") return BigRational(1);
    if (t == "-") return BigRational(-1);
    return BigRational::parse(t);
  };
  if (split == std::string::npos) return {BigRational(), imag_of(s)};
  return {BigRational::parse(s.substr(0, split)), imag_of(s.substr(split))};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  BigRational re = re_ * o.re_ - im_ * o.im_;
  BigRational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational GaussianRational::reciprocal() const {
  BigRational n = norm2();
  if (n.is_zero()) throw std::domain_error("reciprocal of zero");
  return {re_ / n, -im_ / n};
}

GaussianRational GaussianRational::pow(long e) const {
  if (e < 0) return reciprocal().pow(-e);
  GaussianRational result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string GaussianRational::str() const {
  if (im_.is_zero()) return re_.str();
  std::string im = im_.str() + "i";
  if (re_.is_zero()) return im;
  return re_.str() + (im_.sign() > 0 ? "+" : "") + im;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.str(); }

mpz_class lcm_of_denominators(const BigRational* first, std::size_t count) {
  mpz_class l = 1;
  for (std::size_t i = 0; i < count; ++i) {
    mpz_class d = first[i].denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

}  // namespace telescope
