#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "nchol/linalg.hpp"

namespace nchol::testing {

namespace {

GridIndex idx(std::initializer_list<Rational> v) { return GridIndex::from_rationals(std::vector<Rational>(v)); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

NCModule o_model() {
  NCModule m(1);
  m.set_slice(idx({0}), 1);
  m.set_theta(0, idx({0}), Matrix(1, 1));
  return m;
}

NCModule o_localized() {
  NCModule m(1);
  m.set_slice(idx({0}), 1);
  m.set_slice(idx({-1}), 1);
  m.set_theta(0, idx({0}), Matrix(1, 1));
  m.set_theta(0, idx({-1}), Matrix::scalar(1, -1));
  m.set_var(0, idx({-1}), Matrix::identity(1));
  m.set_can(0, idx({-1}), Matrix(1, 1));
  return m;
}

NCModule delta_model() {
  NCModule m(1);
  m.set_slice(idx({-1}), 1);
  m.set_theta(0, idx({-1}), Matrix::scalar(1, -1));
  return m;
}

NCModule j_shriek_model() {
  NCModule m(1);
  m.set_slice(idx({0}), 1);
  m.set_slice(idx({-1}), 1);
  m.set_theta(0, idx({0}), Matrix(1, 1));
  m.set_theta(0, idx({-1}), Matrix::scalar(1, -1));
  m.set_var(0, idx({-1}), Matrix(1, 1));
  m.set_can(0, idx({-1}), Matrix::identity(1));
  return m;
}

NCModule fractional_model(const Rational& alpha, std::size_t jordan) {
  NCModule m(1);
  GridIndex nu = idx({alpha});
  m.set_slice(nu, jordan);
  Matrix t = Matrix::scalar(jordan, alpha);
  for (std::size_t k = 0; k + 1 < jordan; ++k) t(k, k + 1) = Rational(1);
  m.set_theta(0, nu, t);
  return m;
}

std::vector<NCModule> standard_corpus() {
  std::vector<NCModule> out{o_model(), o_localized(), delta_model(), j_shriek_model(),
                            fractional_model(Rational(-1, 2)), fractional_model(Rational(-1, 3), 2)};
  out.push_back(external_product(o_model(), o_model()));
  out.push_back(external_product(o_localized(), o_localized()));
  out.push_back(external_product(o_model(), delta_model()));
  out.push_back(external_product(j_shriek_model(), o_localized()));
  out.push_back(external_product(fractional_model(Rational(-1, 4)), o_localized()));
  out.push_back(external_product(external_product(o_localized(), o_model()), delta_model()));
  out.push_back(direct_sum(o_model(), delta_model()));
  out.push_back(deligne_meromorphic(LocalSystemSpec::trivial(2, 2)));
  return out;
}

Rational random_rational(Rng& rng, int lo, int hi) { return Rational(uniform(rng, lo, hi)); }

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(uniform(rng, lo, hi));
  return m;
}

Matrix random_invertible(Rng& rng, std::size_t n) {
  // unit lower times unit upper, so always invertible
  Matrix l = Matrix::identity(n), u = Matrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (r > c) l(r, c) = Rational(uniform(rng, -2, 2));
      if (r < c) u(r, c) = Rational(uniform(rng, -2, 2));
    }
  return l * u;
}

Matrix random_nilpotent(Rng& rng, std::size_t n) {
  Matrix s(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) s(r, c) = Rational(uniform(rng, -2, 2));
  Matrix g = random_invertible(rng, n);
  return g * s * inverse(g);
}

NCModule random_one_axis(Rng& rng, std::size_t max_dim) {
  static const std::vector<Rational> interior{Rational(-1, 2), Rational(-1, 3), Rational(-2, 3), Rational(-1, 4),
                                              Rational(-3, 4)};
  NCModule m(1);
  if (uniform(rng, 0, 3) == 0) {
    Rational a = interior[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(interior.size()) - 1))];
    std::size_t d = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_dim)));
    GridIndex nu = idx({a});
    m.set_slice(nu, d);
    m.set_theta(0, nu, Matrix::scalar(d, a) + random_nilpotent(rng, d));
    return m;
  }
  std::size_t a = 0, b = 0;
  while (a + b == 0) {
    a = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(max_dim)));
    b = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(max_dim)));
  }
  // mixed basis: first a vectors live in V_0, last b in V_{-1}; φ is strictly upper
  // triangular in a shuffled order and only links vectors of different slices
  std::vector<std::size_t> order(a + b);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> rank_of(a + b);
  for (std::size_t k = 0; k < order.size(); ++k) rank_of[order[k]] = k;
  Matrix var(a, b), can(b, a);
  for (std::size_t p = 0; p < a; ++p)
    for (std::size_t q = 0; q < b; ++q) {
      if (rank_of[p] < rank_of[a + q]) var(p, q) = Rational(uniform(rng, -2, 2));
      else can(q, p) = Rational(uniform(rng, -2, 2));
    }
  Matrix g0 = random_invertible(rng, a), g1 = random_invertible(rng, b);
  var = g0 * var * inverse(g1);
  can = g1 * can * inverse(g0);
  GridIndex z = idx({0}), w = idx({-1});
  m.set_slice(z, a);
  m.set_slice(w, b);
  if (a) m.set_theta(0, z, var * can);
  if (b) m.set_theta(0, w, can * var - Matrix::identity(b));
  if (a && b) {
    m.set_var(0, w, var);
    m.set_can(0, w, can);
  }
  return m;
}

std::size_t max_slice_dim(const NCModule& m) {
  std::size_t d = 0;
  for (const auto& [nu, k] : m.slices()) d = std::max(d, k);
  return d;
}

NCModule random_module(Rng& rng, std::size_t axes, std::size_t max_dim) {
  auto product = [&]() {
    for (;;) {
      if (axes == 0) return point_module(static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_dim))));
      NCModule m = random_one_axis(rng, max_dim);
      for (std::size_t i = 1; i < axes; ++i) m = external_product(m, random_one_axis(rng, max_dim));
      if (max_slice_dim(m) <= max_dim) return m;
    }
  };
  NCModule m = product();
  if (uniform(rng, 0, 1)) {
    NCModule s = direct_sum(m, product());
    if (max_slice_dim(s) <= max_dim) return s;
  }
  return m;
}

namespace {

struct Unknowns {
  std::map<GridIndex, std::size_t> offset;
  std::size_t count = 0;
};

// Adds coef * X * F_nu * Y to the equation block starting at row `base` (entries rows(X) x cols(Y)).
void add_term(Matrix& eq, std::size_t base, const Matrix& x, const Matrix& y, const Unknowns& u, const GridIndex& nu,
              std::size_t src_dim, const Rational& coef) {
  auto it = u.offset.find(nu);
  if (it == u.offset.end()) return;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t s = 0; s < y.cols(); ++s)
      for (std::size_t p = 0; p < x.cols(); ++p) {
        if (x(r, p).is_zero()) continue;
        for (std::size_t q = 0; q < y.rows(); ++q) {
          if (y(q, s).is_zero()) continue;
          eq(base + r * y.cols() + s, it->second + p * src_dim + q) += coef * x(r, p) * y(q, s);
        }
      }
}

}  // namespace

std::vector<NCMorphism> hom_space(const NCModule& a, const NCModule& b) {
  Unknowns u;
  for (const auto& [nu, d] : a.slices())
    if (b.has_slice(nu)) {
      u.offset[nu] = u.count;
      u.count += d * b.dim(nu);
    }
  if (u.count == 0) return {};
  std::vector<Matrix> blocks;
  auto new_block = [&](std::size_t entries) {
    blocks.emplace_back(entries, u.count);
    return &blocks.back();
  };
  for (const auto& [nu, off] : u.offset) {
    std::size_t da = a.dim(nu), db = b.dim(nu);
    for (std::size_t i = 0; i < a.axes(); ++i) {
      Matrix* eq = new_block(db * da);
      add_term(*eq, 0, b.theta(i, nu), Matrix::identity(da), u, nu, da, Rational(1));
      add_term(*eq, 0, Matrix::identity(db), a.theta(i, nu), u, nu, da, Rational(-1));
    }
  }
  for (std::size_t i = 0; i < a.axes(); ++i)
    for (const GridIndex& nu : detail::minus_one_keys(i, {&a, &b})) {
      GridIndex up = nu.raised(i);
      // var: var_b f_nu = f_up var_a
      {
        Matrix* eq = new_block(b.dim(up) * a.dim(nu));
        add_term(*eq, 0, b.var(i, nu), Matrix::identity(a.dim(nu)), u, nu, a.dim(nu), Rational(1));
        add_term(*eq, 0, Matrix::identity(b.dim(up)), a.var(i, nu), u, up, a.dim(up), Rational(-1));
      }
      // can: can_b f_up = f_nu can_a
      {
        Matrix* eq = new_block(b.dim(nu) * a.dim(up));
        add_term(*eq, 0, b.can(i, nu), Matrix::identity(a.dim(up)), u, up, a.dim(up), Rational(1));
        add_term(*eq, 0, Matrix::identity(b.dim(nu)), a.can(i, nu), u, nu, a.dim(nu), Rational(-1));
      }
    }
  std::vector<Matrix> nonempty;
  for (auto& m : blocks)
    if (m.rows()) nonempty.push_back(std::move(m));
  Matrix k = nonempty.empty() ? Matrix::identity(u.count) : kernel_basis(vstack(nonempty));
  std::vector<NCMorphism> out;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    NCMorphism f(a, b);
    for (const auto& [nu, off] : u.offset) {
      std::size_t da = a.dim(nu), db = b.dim(nu);
      Matrix m(db, da);
      for (std::size_t p = 0; p < db; ++p)
        for (std::size_t q = 0; q < da; ++q) m(p, q) = k(off + p * da + q, c);
      if (!m.is_zero()) f.set(nu, std::move(m));
    }
    out.push_back(std::move(f));
  }
  return out;
}

NCMorphism random_morphism(Rng& rng, const NCModule& a, const NCModule& b) {
  NCMorphism f = zero_morphism(a, b);
  for (const auto& h : hom_space(a, b)) f = add(f, scale(h, Rational(uniform(rng, -2, 2))));
  return f;
}

std::vector<CoordinateDivisorSpec> divisor_specs(std::size_t axes) {
  std::vector<CoordinateDivisorSpec> out;
  for (unsigned s = 1; s < (1u << axes); ++s) {
    std::vector<std::size_t> u;
    for (std::size_t i = 0; i < axes; ++i)
      if (s & (1u << i)) u.push_back(i);
    out.push_back(CoordinateDivisorSpec::divisor(u));
  }
  return out;
}

std::vector<CoordinateDivisorSpec> all_specs(std::size_t axes) {
  std::vector<CoordinateDivisorSpec> out = divisor_specs(axes);
  for (unsigned s = 1; s < (1u << axes); ++s) {
    if (std::popcount(s) < 2) continue;
    std::vector<std::size_t> u;
    for (std::size_t i = 0; i < axes; ++i)
      if (s & (1u << i)) u.push_back(i);
    out.push_back(CoordinateDivisorSpec::coordinate_subspace(u));
  }
  if (axes >= 3) {
    out.push_back(CoordinateDivisorSpec::parse("0,1;2"));
    out.push_back(CoordinateDivisorSpec::parse("0;1,2"));
  }
  return out;
}

std::vector<Matrix> random_commuting_nilpotents(Rng& rng, std::size_t axes, std::size_t d) {
  Matrix n = random_nilpotent(rng, d);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < axes; ++i)
    out.push_back(n * Rational(uniform(rng, -2, 2)) + n * n * Rational(uniform(rng, -1, 1)));
  return out;
}

LocalSystemSpec random_local_system(Rng& rng, std::size_t axes, std::size_t max_blocks, std::size_t max_dim) {
  static const std::vector<Rational> exps{Rational(0),     Rational(0),     Rational(-1, 2), Rational(-1, 3),
                                          Rational(-2, 3), Rational(-1, 4), Rational(-3, 4)};
  LocalSystemSpec l{axes, {}};
  std::set<ExponentTuple> used;
  std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_blocks)));
  for (std::size_t b = 0; b < k; ++b) {
    ExponentTuple alpha;
    for (std::size_t i = 0; i < axes; ++i)
      alpha.push_back(exps[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(exps.size()) - 1))]);
    if (!used.insert(alpha).second) continue;
    std::size_t d = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_dim)));
    l.blocks.push_back({alpha, d, random_commuting_nilpotents(rng, axes, d), {}});
  }
  return l;
}

}  // namespace nchol::testing

namespace nchol::testing {

Matrix companion(const Polynomial& p) {
  const std::size_t d = static_cast<std::size_t>(p.degree());
  Matrix c(d, d);
  for (std::size_t k = 1; k < d; ++k) c(k, k - 1) = Rational(1);
  for (std::size_t k = 0; k < d; ++k) c(k, d - 1) = -p.coeff(k);
  return c;
}

Matrix random_with_annihilator(Rng& rng, const std::vector<Polynomial>& factors) {
  std::vector<Matrix> blocks;
  for (const auto& f : factors) {
    // the factor itself, sometimes followed by a repeat of a smaller piece
    blocks.push_back(companion(f));
    if (f.degree() == 1 && std::uniform_int_distribution<int>(0, 1)(rng)) blocks.push_back(companion(f));
  }
  Matrix t = block_diag(blocks);
  Matrix g = random_invertible(rng, t.rows());
  return g * t * inverse(g);
}

Rational laplace_determinant(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational det(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = m(r, k);
    Rational term = m(0, c) * laplace_determinant(minor);
    det += c % 2 ? -term : term;
  }
  return det;
}

}  // namespace nchol::testing

namespace nchol::testing {

bool isomorphic(const NCModule& a, const NCModule& b, unsigned seed) {
  if (a.axes() != b.axes() || a.slices() != b.slices()) return false;
  if (a.is_zero()) return true;
  auto basis = hom_space(a, b);
  if (basis.empty()) return false;
  Rng rng(seed);
  for (int attempt = 0; attempt < 12; ++attempt) {
    NCMorphism f = zero_morphism(a, b);
    for (const auto& h : basis) f = add(f, scale(h, Rational(std::uniform_int_distribution<int>(-6, 6)(rng))));
    if (is_isomorphism(f)) return true;
  }
  return false;
}

std::size_t generated_dimension(const NCModule& m, const GridIndex& nu, const Matrix& v) {
  std::map<GridIndex, Matrix> span;
  for (const auto& [k, d] : m.slices()) span[k] = Matrix(d, 0);
  span[nu] = image_basis(v);
  auto absorb = [&](const GridIndex& k, const Matrix& w) {
    Matrix joined = image_basis(hstack(span[k], w));
    bool grew = joined.cols() > span[k].cols();
    span[k] = joined;
    return grew;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [k, d] : m.slices()) {
      Matrix s = span[k];
      if (s.cols() == 0) continue;
      for (std::size_t i = 0; i < m.axes(); ++i) {
        changed |= absorb(k, m.theta(i, k) * s);
        if (k[i].is_minus_one() && m.has_slice(k.raised(i))) changed |= absorb(k.raised(i), m.var(i, k) * s);
        if (k[i].is_zero() && m.has_slice(k.lowered(i))) changed |= absorb(k.lowered(i), m.can(i, k.lowered(i)) * s);
      }
    }
  }
  std::size_t total = 0;
  for (const auto& [k, s] : span) total += s.cols();
  return total;
}

}  // namespace nchol::testing
