#include "nchol/polynomial.hpp"

#include <ostream>
#include <sstream>

#include "nchol/errors.hpp"

namespace nchol {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::t() { return monomial(1); }

Polynomial Polynomial::monomial(std::size_t k, const Rational& c) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const Rational& a) { return Polynomial({-a, Rational(1)}); }

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial p = *this;
  Rational inv = leading().inverse();
  for (auto& x : p.c_) x *= inv;
  return p;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return Polynomial(std::move(v));
}

Rational Polynomial::eval(const Rational& x) const {
  Rational r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Matrix Polynomial::eval(const Matrix& m) const {
  if (!m.is_square()) throw Error(Errc::InvalidArgument, "polynomial of a non-square matrix");
  Matrix r(m.rows(), m.cols());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * m + Matrix::scalar(m.rows(), *it);
  return r;
}

Polynomial Polynomial::pow(std::size_t k) const {
  Polynomial r(Rational(1));
  for (std::size_t i = 0; i < k; ++i) r *= *this;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  c_ = std::move(v);
  trim();
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

std::string Polynomial::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (long k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(static_cast<std::size_t>(k));
    if (c.is_zero()) continue;
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    Rational a = c.abs();
    if (k == 0 || a != Rational(1)) os << a;
    if (k > 0) os << "t";
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const long db = b.degree();
  std::vector<Rational> q(a.degree() >= db ? a.degree() - db + 1 : 0);
  Rational inv = b.leading().inverse();
  for (long k = a.degree(); k >= db; --k) {
    Rational f = r[k] * inv;
    q[k - db] = f;
    if (f.is_zero()) continue;
    for (long j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeff(static_cast<std::size_t>(j));
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }
Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b, s0(Rational(1)), s1, t0, t1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1;
    Polynomial t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = r0.leading().inverse();
  Polynomial c(inv);
  return {r0 * c, s0 * c, t0 * c};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) { return extended_gcd(a, b).g; }

namespace {

int moebius(std::size_t n) {
  int mu = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

}  // namespace

Polynomial cyclotomic(std::size_t d) {
  if (d == 0) throw Error(Errc::InvalidArgument, "cyclotomic index must be positive");
  Polynomial num(Rational(1)), den(Rational(1));
  for (std::size_t e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = moebius(d / e);
    Polynomial f = Polynomial::monomial(e) - Polynomial(Rational(1));
    if (mu == 1) num *= f;
    else if (mu == -1) den *= f;
  }
  return num / den;
}

// Faddeev-LeVerrier: exact over Q.
Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::InvalidArgument, "characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + Matrix::scalar(n, c[n - k + 1]);
    c[n - k] = -(m * mk).trace() / Rational(static_cast<long>(k));
  }
  return Polynomial(std::move(c));
}

}  // namespace nchol
