#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nchol {

// Exact rational, always canonical (lowest terms, positive denominator).
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  Rational(long long v);
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den);

  static Rational parse(std::string_view s);

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  long to_long() const;

  mpz_class floor() const;
  mpz_class ceil() const;
  Rational frac() const { return *this - Rational(floor(), 1); }
  Rational abs() const { return Rational(::abs(q_)); }
  Rational inverse() const;

  // "p/q" always, including integers ("3/1") and zero ("0/1").
  std::string str() const;
  // "p" for integers, "p/q" otherwise.
  std::string pretty() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational binomial(long n, long k);
long gcd_long(long a, long b);

}  // namespace nchol

template <>
struct std::hash<nchol::Rational> {
  std::size_t operator()(const nchol::Rational& r) const noexcept { return r.hash(); }
};
