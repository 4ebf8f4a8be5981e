#include "cohsys/exact.hpp"

#include <climits>
#include <ostream>

namespace cohsys {

static_assert(sizeof(long) == sizeof(long long), "Integer(long long) assumes an LP64 target");

Integer::Integer(long long v) : v_(static_cast<long>(v)) {}

Integer::Integer(std::string_view decimal) {
  if (decimal.empty() || v_.set_str(std::string(decimal), 10) != 0) {
    throw DomainError("not a decimal integer: '" + std::string(decimal) + "'");
  }
}

std::int64_t Integer::to_i64() const {
  if (!v_.fits_slong_p()) throw DomainError("integer out of 64-bit range: " + str());
  return v_.get_si();
}

std::ostream& operator<<(std::ostream& os, const Integer& x) { return os << x.v_; }

Integer floor_div(const Integer& a, const Integer& b) {
  if (b.sign() <= 0) throw DomainError("floor_div: divisor must be positive, got " + b.str());
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return Integer(std::move(q));
}

Integer ceil_div(const Integer& a, const Integer& b) {
  if (b.sign() <= 0) throw DomainError("ceil_div: divisor must be positive, got " + b.str());
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return Integer(std::move(q));
}

Integer floor_mod(const Integer& a, const Integer& b) { return a - b * floor_div(a, b); }

Integer gcd(const Integer& a, const Integer& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return Integer(std::move(r));
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer factorial(const Integer& m) {
  if (m.sign() < 0) throw DomainError("factorial of negative argument " + m.str());
  if (!m.raw().fits_ulong_p()) throw DomainError("factorial argument too large: " + m.str());
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), m.raw().get_ui());
  return Integer(std::move(r));
}

Rational::Rational(Integer num, Integer den) {
  if (den.is_zero()) throw DomainError("rational with zero denominator");
  if (den.sign() < 0) {
    num = -num;
    den = -den;
  }
  Integer g = gcd(num, den);
  if (g != Integer(1)) {
    mpz_class n, d;
    mpz_divexact(n.get_mpz_t(), num.raw().get_mpz_t(), g.raw().get_mpz_t());
    mpz_divexact(d.get_mpz_t(), den.raw().get_mpz_t(), g.raw().get_mpz_t());
    num = Integer(std::move(n));
    den = Integer(std::move(d));
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

std::string Rational::str() const {
  if (is_integer()) return num_.str();
  return num_.str() + "/" + den_.str();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Integer(text));
  return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_.is_zero()) throw DomainError("rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering rat_cmp(const Rational& a, const Rational& b) {
  // Denominators are positive, so cross-multiplication preserves order.
  return a.num() * b.den() <=> b.num() * a.den();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) { return rat_cmp(a, b); }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace cohsys

std::size_t std::hash<cohsys::Integer>::operator()(const cohsys::Integer& x) const noexcept {
  const mpz_srcptr p = x.raw().get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(p)) + 0x9e3779b97f4a7c15ULL;
  const std::size_t limbs = mpz_size(p);
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t std::hash<cohsys::Rational>::operator()(const cohsys::Rational& x) const noexcept {
  std::hash<cohsys::Integer> hi;
  std::size_t h = hi(x.num());
  return h ^ (hi(x.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
