#include "doctest.h"

#include "nchol/errors.hpp"
#include "nchol/jordan.hpp"
#include "nchol/linalg.hpp"
#include "nchol/polynomial.hpp"
#include "support.hpp"

using namespace nchol;
using namespace nchol::testing;

namespace {

Polynomial poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}

// Φ_d from t^d - 1 by dividing out Φ_e for proper divisors e.
Polynomial cyclotomic_by_division(std::size_t d) {
  Polynomial p = Polynomial::monomial(d) - Polynomial(Rational(1));
  for (std::size_t e = 1; e < d; ++e)
    if (d % e == 0) p = p / cyclotomic_by_division(e);
  return p;
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical") {
  Rational a(6, -4);
  CHECK(a.str() == "-3/2");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").str() == "-7/1");
  CHECK(Rational(0).str() == "0/1");
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).frac() == Rational(1, 2));
  CHECK(Rational(5, 3).pretty() == "5/3");
  CHECK(Rational(4).pretty() == "4");
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  // no overflow: exact big products
  Rational big(1);
  for (int k = 0; k < 40; ++k) big *= Rational(1000003, 7);
  for (int k = 0; k < 40; ++k) big /= Rational(1000003, 7);
  CHECK(big == Rational(1));
}

TEST_CASE("rank_kernel_image examples") {
  auto id = rank_kernel_image(Matrix::identity(2));
  CHECK(id.rank == 2);
  CHECK(id.kernel_basis.cols() == 0);
  auto z = rank_kernel_image(Matrix(3, 2));
  CHECK(z.rank == 0);
  CHECK(z.kernel_basis.cols() == 2);
  Matrix m{{1, 2}, {2, 4}};
  auto r = rank_kernel_image(m);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel_basis.cols() == 1);
  CHECK(r.kernel_basis == Matrix{{-2}, {1}});
  CHECK((m * r.kernel_basis).is_zero());
}

TEST_CASE("rank plus nullity on random matrices") {
  Rng rng(11);
  for (int it = 0; it < 50; ++it) {
    std::size_t rows = rng() % 5, cols = rng() % 5;
    Matrix m = random_matrix(rng, rows, cols, -1, 1);
    auto r = rank_kernel_image(m);
    CHECK(r.rank + r.kernel_basis.cols() == cols);
    CHECK(r.image_basis.cols() == r.rank);
    CHECK((m * r.kernel_basis).is_zero());
    CHECK(rank(r.image_basis) == r.rank);
  }
}

TEST_CASE("empty matrices are first class") {
  Matrix a(0, 3), b(3, 0);
  CHECK((b * a).rows() == 3);
  CHECK((a * b).rows() == 0);
  CHECK(rank(a) == 0);
  CHECK(kernel_basis(a).cols() == 3);
  CHECK(inverse(Matrix(0, 0)).rows() == 0);
}

TEST_CASE("inverse, left inverse, coordinates and quotients") {
  Rng rng(3);
  for (int it = 0; it < 20; ++it) {
    Matrix g = random_invertible(rng, 4);
    CHECK(g * inverse(g) == Matrix::identity(4));
  }
  Matrix k{{1, 0}, {2, 1}, {0, 3}};
  CHECK(left_inverse(k) * k == Matrix::identity(2));
  Matrix x = k * Matrix{{2}, {-1}};
  CHECK(coordinates(k, x) == Matrix{{2}, {-1}});
  CHECK(in_span(k, Matrix{{0}, {1}, {3}}));
  CHECK(!in_span(k, Matrix{{1}, {0}, {0}}));
  auto q = quotient_data(k, 3);
  CHECK(q.projection.rows() == 1);
  CHECK((q.projection * k).is_zero());
  CHECK(q.projection * q.section == Matrix::identity(1));
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("koszul examples") {
  auto z = koszul_cohomology({Matrix(1, 1)}).dims();
  CHECK(z == std::map<int, std::size_t>{{0, 1}, {1, 1}});
  auto one = koszul_cohomology({Matrix::identity(1)}).dims();
  CHECK(one == std::map<int, std::size_t>{{0, 0}, {1, 0}});
  Matrix n{{0, 1}, {0, 0}};
  auto pair = koszul_cohomology({n, Matrix(2, 2)});
  CHECK(pair.dims() == std::map<int, std::size_t>{{0, 1}, {1, 2}, {2, 1}});
  CHECK(pair.euler_characteristic() == 0);
  CHECK_THROWS_AS(koszul_cohomology({n, n.transpose()}), Error);
}

TEST_CASE("koszul sign convention on two operators") {
  // d0 v = (A v, B v), d1 (x, y) = -B x + A y (e_1 ∧ e_0 = -e_0 ∧ e_1)
  Matrix a = Matrix::scalar(1, 2), b = Matrix::scalar(1, 3);
  auto r = koszul_cohomology({a, b});
  CHECK(r.dims() == std::map<int, std::size_t>{{0, 0}, {1, 0}, {2, 0}});
}

TEST_CASE("koszul dims invariant under conjugation and unit twists") {
  Rng rng(5);
  for (int it = 0; it < 30; ++it) {
    std::size_t d = 1 + rng() % 4;
    Matrix nil = random_nilpotent(rng, d);
    Matrix seed = nil + Matrix::scalar(d, Rational(static_cast<long>(rng() % 2)));
    std::vector<Matrix> ops{seed, seed * seed - seed, Matrix(d, d)};
    auto base = koszul_cohomology(ops).dims();
    Matrix g = random_invertible(rng, d), gi = inverse(g);
    std::vector<Matrix> conj;
    for (const auto& o : ops) conj.push_back(g * o * gi);
    CHECK(koszul_cohomology(conj).dims() == base);
    // invertible and commuting with every operator
    Matrix unit = Matrix::scalar(d, Rational(3)) + nil;
    std::vector<Matrix> twisted = ops;
    twisted[0] = twisted[0] * unit;
    CHECK(koszul_cohomology(twisted).dims() == base);
    auto res = koszul_cohomology(ops, {seed});
    for (const auto& [j, space] : res.degrees) {
      CHECK(space.induced_operators.size() == 1);
      CHECK(space.induced_operators[0].rows() == space.dimension);
    }
    long chi = 0;
    for (const auto& [j, dim] : base) chi += (j % 2 ? -1 : 1) * static_cast<long>(dim);
    CHECK(chi == 0);  // ambient dims d*C(3,j) alternate to zero
  }
}

TEST_CASE("general cochain complex cohomology") {
  CochainComplex c;
  c.first_degree = -1;
  c.dims = {1, 2, 1};
  c.differentials = {Matrix{{1}, {0}}, Matrix{{0, 1}}};
  auto r = complex_cohomology(c);
  CHECK(r.dims() == std::map<int, std::size_t>{{-1, 0}, {0, 0}, {1, 0}});
  c.differentials = {Matrix{{1}, {1}}, Matrix{{1, 1}}};
  CHECK_THROWS_AS(complex_cohomology(c), Error);
}

TEST_CASE("polynomial arithmetic and gcd") {
  Polynomial a = poly({-1, 0, 1});  // t^2 - 1
  Polynomial b = poly({-1, 1});     // t - 1
  auto [q, r] = divmod(a, b);
  CHECK(q == poly({1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(a, poly({1, 1})) == poly({1, 1}));
  auto e = extended_gcd(poly({0, 0, 1}), poly({-1, 1}));
  CHECK(e.g == Polynomial(Rational(1)));
  CHECK(e.s * poly({0, 0, 1}) + e.t * poly({-1, 1}) == Polynomial(Rational(1)));
  CHECK(a.eval(Rational(3)) == Rational(8));
  CHECK(a.derivative() == poly({0, 2}));
}

TEST_CASE("cyclotomic polynomials agree with recursive division") {
  for (std::size_t d = 1; d <= 30; ++d) CHECK(cyclotomic(d) == cyclotomic_by_division(d));
  CHECK(cyclotomic(4) == poly({1, 0, 1}));
  CHECK(cyclotomic(6) == poly({1, -1, 1}));
}

TEST_CASE("characteristic polynomial agrees with cofactor determinants") {
  Rng rng(17);
  for (int it = 0; it < 25; ++it) {
    std::size_t n = rng() % 6;
    Matrix a = random_matrix(rng, n, n, -2, 2);
    Polynomial p = characteristic_polynomial(a);
    CHECK(p.degree() == static_cast<long>(n));
    for (long x = -2; x <= static_cast<long>(n); ++x) {
      Matrix m = Matrix::scalar(n, Rational(x)) - a;
      CHECK(p.eval(Rational(x)) == laplace_determinant(m));
    }
    CHECK(p.eval(a).is_zero());
  }
}

TEST_CASE("bezout cofactors") {
  auto r = bezout_cofactors({poly({0, 1}), poly({-1, 1})});
  CHECK(r == std::vector<Polynomial>{Polynomial(Rational(-1)), Polynomial(Rational(1))});
  r = bezout_cofactors({poly({0, 0, 1}), poly({-1, 1})});
  CHECK(r == std::vector<Polynomial>{poly({-1, -1}), Polynomial(Rational(1))});
  r = bezout_cofactors({poly({-5, 1})});
  CHECK(r == std::vector<Polynomial>{Polynomial(Rational(1))});
  CHECK_THROWS_AS(bezout_cofactors({poly({-1, 0, 1}), poly({-1, 1})}), Error);
  try {
    bezout_cofactors({poly({-1, 0, 1}), poly({1, 1})});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCoprime);
  }
}

TEST_CASE("primary projector examples") {
  Matrix t = Matrix::diagonal({Rational(1), Rational(2)});
  auto p = primary_projectors(t, {poly({-1, 1}), poly({-2, 1})});
  CHECK(p[0] == Matrix::diagonal({Rational(1), Rational(0)}));
  CHECK(p[1] == Matrix::diagonal({Rational(0), Rational(1)}));
  Matrix n{{0, 1}, {0, 0}};
  CHECK(primary_projectors(n, {poly({0, 0, 1})})[0] == Matrix::identity(2));
  CHECK(primary_projectors(Matrix::identity(3), {poly({-1, 1})})[0] == Matrix::identity(3));
  CHECK_THROWS_AS(primary_projectors(t, {poly({-1, 1})}), Error);
}

TEST_CASE("projector identities on random annihilated matrices") {
  Rng rng(23);
  const std::vector<std::vector<Polynomial>> families{
      {poly({0, 1}), poly({-1, 1})},
      {poly({0, 0, 1}), poly({-1, 1}), poly({2, 1})},
      {cyclotomic(3), cyclotomic(4), cyclotomic(1)},
      {cyclotomic(6), poly({-2, 0, 1})},
      {poly({1, -2, 1}), cyclotomic(2), cyclotomic(4)},
  };
  for (int it = 0; it < 10; ++it)
    for (const auto& fam : families) {
      Matrix t = random_with_annihilator(rng, fam);
      auto pi = primary_projectors(t, fam);
      Matrix sum(t.rows(), t.cols());
      for (std::size_t i = 0; i < pi.size(); ++i) {
        CHECK(pi[i] * pi[i] == pi[i]);
        for (std::size_t j = 0; j < pi.size(); ++j)
          if (i != j) CHECK((pi[i] * pi[j]).is_zero());
        CHECK((fam[i].eval(t) * pi[i]).is_zero());
        CHECK(commute(pi[i], t));
        sum += pi[i];
      }
      CHECK(sum == Matrix::identity(t.rows()));
    }
}

TEST_CASE("nilpotent log examples and round trips") {
  CHECK(nilpotent_log(Matrix::identity(3)).is_zero());
  CHECK(nilpotent_log(Matrix{{1, 1}, {0, 1}}) == Matrix{{0, 1}, {0, 0}});
  Matrix u{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}};
  // oracle: M - M^2/2 with M = U - 1
  Matrix m = u - Matrix::identity(3);
  Matrix oracle = m - m * m * Rational(1, 2);
  CHECK(oracle == Matrix{{0, 1, Rational(-1, 2)}, {0, 0, 1}, {0, 0, 0}});
  CHECK(nilpotent_log(u) == oracle);
  CHECK_THROWS_AS(nilpotent_log(Matrix::scalar(2, 2)), Error);
  Rng rng(29);
  for (std::size_t d = 1; d <= 6; ++d)
    for (int it = 0; it < 5; ++it) {
      Matrix n = random_nilpotent(rng, d);
      CHECK(nilpotent_log(nilpotent_exp(n)) == n);
      CHECK(is_nilpotent(n));
    }
}

TEST_CASE("cyclotomic factorization of characteristic polynomials") {
  auto f = cyclotomic_factorization(cyclotomic(4) * cyclotomic(1).pow(2) * cyclotomic(12));
  REQUIRE(f.size() == 3);
  CHECK(f[0].order == 1);
  CHECK(f[0].multiplicity == 2);
  CHECK(f[1].order == 4);
  CHECK(f[2].order == 12);
  CHECK_THROWS_AS(cyclotomic_factorization(poly({-2, 1})), Error);
  CHECK_THROWS_AS(cyclotomic_factorization(poly({-1, -1, 1})), Error);
}

TEST_CASE("semisimple part splits T") {
  Rng rng(31);
  Matrix j{{0, -1, 1, 0}, {1, 0, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 0}};  // Φ4 with a unipotent twist
  Matrix g = random_invertible(rng, 4);
  Matrix t = g * j * inverse(g);
  Matrix s = semisimple_part(t, cyclotomic(4));
  CHECK(cyclotomic(4).eval(s).is_zero());
  CHECK(commute(s, t));
  CHECK(is_nilpotent(inverse(s) * t - Matrix::identity(4)));
}

TEST_CASE("integer kernel") {
  auto k = integer_kernel({2, 3});
  CHECK(k.gcd == 1);
  CHECK(2 * k.lift[0] + 3 * k.lift[1] == 1);
  REQUIRE(k.basis.size() == 1);
  CHECK(2 * k.basis[0][0] + 3 * k.basis[0][1] == 0);
  auto z = integer_kernel({4, 6, 0});
  CHECK(z.gcd == 2);
  CHECK(z.basis.size() == 2);
  for (const auto& b : z.basis) CHECK(4 * b[0] + 6 * b[1] == 0);
}
