#include "nchol/rational.hpp"

#include <functional>
#include <numeric>
#include <ostream>

#include "nchol/errors.hpp"

namespace nchol {

Rational::Rational(long long v) {
  mpz_class z;
  z = std::to_string(v);
  q_ = mpq_class(z);
}

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
  std::string t(s);
  auto bad = [&] { return Error(Errc::ParseError, "not a rational: '" + t + "'"); };
  if (t.empty()) throw bad();
  auto slash = t.find('/');
  auto valid_int = [](const std::string& x) {
    if (x.empty()) return false;
    std::size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (x[i] < '0' || x[i] > '9') return false;
    return true;
  };
  std::string ns = t.substr(0, slash);
  std::string ds = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(ns) || !valid_int(ds) || ds[0] == '-' || ds[0] == '+') throw bad();
  if (ns[0] == '+') ns.erase(0, 1);
  mpz_class n(ns), d(ds);
  if (d == 0) throw bad();
  return Rational(n, d);
}

long Rational::to_long() const {
  if (!is_integer() || !q_.get_num().fits_slong_p())
    throw Error(Errc::InvalidArgument, "rational " + str() + " is not a machine integer");
  return q_.get_num().get_si();
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(Errc::InvalidArgument, "inverse of zero");
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::pretty() const {
  return is_integer() ? q_.get_num().get_str() : str();
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(q_.get_num().get_str(16));
  return h ^ (std::hash<std::string>{}(q_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.pretty(); }

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r, mpz_class(1));
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

}  // namespace nchol
