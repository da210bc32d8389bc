#include "nchol/jordan.hpp"

#include "nchol/errors.hpp"
#include "nchol/linalg.hpp"

namespace nchol {

namespace {

std::vector<Polynomial> complements(const std::vector<Polynomial>& factors) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Polynomial p(Rational(1));
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) p *= factors[j];
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<Polynomial> bezout_cofactors(const std::vector<Polynomial>& factors) {
  if (factors.empty()) throw Error(Errc::InvalidArgument, "bezout_cofactors needs at least one factor");
  for (const auto& f : factors)
    if (f.is_zero()) throw Error(Errc::InvalidArgument, "zero factor");
  std::vector<Polynomial> vee = complements(factors);
  std::vector<Polynomial> r(factors.size());
  bool all_constant = true;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() == 0) continue;
    all_constant = false;
    ExtendedGcd e = extended_gcd(vee[i] % factors[i], factors[i]);
    if (e.g.degree() != 0)
      throw Error(Errc::NotCoprime, "factor " + std::to_string(i) + " (" + factors[i].str() +
                                        ") shares the divisor " + e.g.str() + " with the others");
    r[i] = e.s % factors[i];
  }
  if (all_constant) r[0] = Polynomial(vee[0].leading().inverse());
  Polynomial sum;
  for (std::size_t i = 0; i < factors.size(); ++i) sum += r[i] * vee[i];
  if (!(sum == Polynomial(Rational(1)))) throw Error(Errc::NotCoprime, "Bezout identity failed");
  return r;
}

std::vector<Polynomial> projector_polynomials(const std::vector<Polynomial>& factors) {
  std::vector<Polynomial> r = bezout_cofactors(factors);
  std::vector<Polynomial> vee = complements(factors);
  Polynomial prod(Rational(1));
  for (const auto& f : factors) prod *= f;
  std::vector<Polynomial> q;
  for (std::size_t i = 0; i < factors.size(); ++i) q.push_back((r[i] * vee[i]) % prod);
  return q;
}

std::vector<Matrix> primary_projectors(const Matrix& t, const std::vector<Polynomial>& factors) {
  if (!t.is_square()) throw Error(Errc::InvalidArgument, "primary_projectors needs a square matrix");
  Polynomial prod(Rational(1));
  for (const auto& f : factors) prod *= f;
  if (!prod.eval(t).is_zero()) throw Error(Errc::NotAnnihilating, "product of factors does not annihilate T");
  std::vector<Matrix> out;
  for (const auto& q : projector_polynomials(factors)) out.push_back(q.eval(t));
  return out;
}

Matrix nilpotent_log(const Matrix& u) {
  if (!u.is_square()) throw Error(Errc::InvalidArgument, "nilpotent_log needs a square matrix");
  const std::size_t n = u.rows();
  Matrix x = u - Matrix::identity(n);
  if (!x.pow(n).is_zero()) throw Error(Errc::NotUnipotent, "U - id is not nilpotent");
  Matrix result(n, n), xk = Matrix::identity(n);
  for (std::size_t k = 1; k < std::max<std::size_t>(n, 1) + 1; ++k) {
    xk = xk * x;
    if (xk.is_zero()) break;
    Rational c(k % 2 ? 1 : -1, static_cast<long>(k));
    result += xk * c;
  }
  return result;
}

Matrix nilpotent_exp(const Matrix& nm) {
  if (!nm.is_square()) throw Error(Errc::InvalidArgument, "nilpotent_exp needs a square matrix");
  const std::size_t n = nm.rows();
  if (!nm.pow(n).is_zero()) throw Error(Errc::InvalidArgument, "nilpotent_exp input is not nilpotent");
  Matrix result = Matrix::identity(n), term = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = term * nm * Rational(1, static_cast<long>(k));
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

std::vector<CyclotomicFactor> cyclotomic_factorization(const Polynomial& p) {
  if (p.is_zero()) throw Error(Errc::InvalidArgument, "cannot factor the zero polynomial");
  Polynomial rest = p.monic();
  const std::size_t deg = static_cast<std::size_t>(p.degree());
  std::vector<CyclotomicFactor> out;
  // phi(d) >= sqrt(d/2), so phi(d) <= deg forces d <= 2 deg^2.
  for (std::size_t d = 1; d <= 2 * deg * deg + 2 && rest.degree() > 0; ++d) {
    Polynomial phi = cyclotomic(d);
    if (phi.degree() > rest.degree()) continue;
    std::size_t mult = 0;
    while (true) {
      auto [q, r] = divmod(rest, phi);
      if (!r.is_zero()) break;
      rest = q;
      ++mult;
    }
    if (mult) out.push_back({d, mult});
  }
  if (rest.degree() > 0)
    throw Error(Errc::NotQuasiUnipotent, "non-cyclotomic factor " + rest.str());
  return out;
}

Matrix semisimple_part(const Matrix& t, const Polynomial& squarefree) {
  Matrix s = t;
  Polynomial dp = squarefree.derivative();
  for (std::size_t iter = 0; iter < 64; ++iter) {
    Matrix ps = squarefree.eval(s);
    if (ps.is_zero()) return s;
    s = s - ps * inverse(dp.eval(s));
  }
  throw Error(Errc::InvalidArgument, "semisimple part iteration did not terminate");
}

}  // namespace nchol
