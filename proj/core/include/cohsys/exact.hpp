#pragma once

// Exact integer and rational arithmetic. Everything numeric in cohsys goes
// through these two types; there is no floating point anywhere.

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cohsys {

/// Raised when an operation is called outside its domain (b <= 0 in
/// floor_div, negative factorial, a stratification with beta < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Arbitrary-precision signed integer.
class Integer {
 public:
  Integer() = default;
  Integer(int v) : v_(static_cast<long>(v)) {}
  Integer(long v) : v_(v) {}
  Integer(long long v);
  explicit Integer(std::string_view decimal);
  explicit Integer(mpz_class v) : v_(std::move(v)) {}

  const mpz_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_even() const { return mpz_even_p(v_.get_mpz_t()) != 0; }

  /// Narrowing conversion; throws DomainError if the value does not fit.
  std::int64_t to_i64() const;
  std::string str() const { return v_.get_str(); }

  Integer operator-() const { return Integer(mpz_class(-v_)); }
  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
  Integer& operator++() { ++v_; return *this; }
  Integer& operator--() { --v_; return *this; }

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& x);

 private:
  mpz_class v_;
};

/// Greatest q with q*b <= a. Requires b > 0.
Integer floor_div(const Integer& a, const Integer& b);
/// Least q with q*b >= a. Requires b > 0.
Integer ceil_div(const Integer& a, const Integer& b);
/// Non-negative remainder matching floor_div.
Integer floor_mod(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
Integer abs(const Integer& a);
Integer factorial(const Integer& m);

/// Exact rational, always stored in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int v) : num_(v), den_(1) {}
  Rational(long v) : num_(v), den_(1) {}
  Rational(Integer v) : num_(std::move(v)), den_(1) {}
  Rational(Integer num, Integer den);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_integer() const { return den_ == Integer(1); }
  int sign() const { return num_.sign(); }
  Integer floor() const { return floor_div(num_, den_); }
  Integer ceil() const { return ceil_div(num_, den_); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Inverse of str(); accepts "p", "p/q", "-p/q". Throws DomainError.
  static Rational parse(std::string_view text);

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  // Normalization makes structural equality the same as numeric equality.
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& x);

 private:
  Integer num_;
  Integer den_;
};

/// Three-way comparison by cross-multiplication.
std::strong_ordering rat_cmp(const Rational& a, const Rational& b);

}  // namespace cohsys

template <>
struct std::hash<cohsys::Integer> {
  std::size_t operator()(const cohsys::Integer& x) const noexcept;
};

template <>
struct std::hash<cohsys::Rational> {
  std::size_t operator()(const cohsys::Rational& x) const noexcept;
};
