#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nchol/matrix.hpp"
#include "nchol/rational.hpp"

namespace nchol {

// Coefficients lowest degree first; no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<Rational> coeffs);
  Polynomial(const Rational& c) : Polynomial(std::vector<Rational>{c}) {}

  static Polynomial t();
  static Polynomial monomial(std::size_t k, const Rational& c = Rational(1));
  // t - a
  static Polynomial linear(const Rational& a);

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  Polynomial monic() const;
  Polynomial derivative() const;
  Rational eval(const Rational& x) const;
  Matrix eval(const Matrix& m) const;
  Polynomial pow(std::size_t k) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
Polynomial operator/(const Polynomial& a, const Polynomial& b);
Polynomial gcd(const Polynomial& a, const Polynomial& b);

struct ExtendedGcd {
  Polynomial g, s, t;  // s*a + t*b = g, g monic (or zero)
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

Polynomial cyclotomic(std::size_t d);
Polynomial characteristic_polynomial(const Matrix& m);

}  // namespace nchol
