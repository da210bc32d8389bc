#include "nchol/derham.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "nchol/errors.hpp"

namespace nchol {

namespace {

// stalk: subset X = axes at -1, differential can; otherwise X = axes at 0, differential var.
KoszulResult corner_cohomology(const NCModule& m, bool stalk) {
  require_valid(m, stalk ? "dr_stalk" : "dr_costalk");
  const std::size_t n = m.axes();
  auto index = [&](unsigned x) {
    std::vector<Exponent> c;
    for (std::size_t i = 0; i < n; ++i) {
      bool moved = (x >> i) & 1u;
      c.emplace_back(moved == stalk ? -1 : 0);
    }
    return GridIndex(std::move(c));
  };
  std::vector<std::vector<unsigned>> levels(n + 1);
  std::vector<std::map<unsigned, std::size_t>> offset(n + 1);
  CochainComplex c;
  c.first_degree = -static_cast<int>(n);
  for (std::size_t k = 0; k <= n; ++k) {
    levels[k] = subsets_of_size(n, k);
    std::size_t off = 0;
    for (unsigned x : levels[k]) {
      offset[k][x] = off;
      off += m.dim(index(x));
    }
    c.dims.push_back(off);
  }
  for (std::size_t k = 0; k < n; ++k) {
    Matrix d(c.dims[k + 1], c.dims[k]);
    for (unsigned x : levels[k])
      for (std::size_t i = 0; i < n; ++i) {
        if (x & (1u << i)) continue;
        unsigned y = x | (1u << i);
        Matrix a = stalk ? m.can(i, index(y)) : m.var(i, index(x));
        if (std::popcount(x & ((1u << i) - 1)) % 2) a = -a;
        d.set_block(offset[k + 1][y], offset[k][x], a);
      }
    c.differentials.push_back(std::move(d));
  }
  std::vector<std::vector<Matrix>> chain_maps;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Matrix> per_level;
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<Matrix> blocks;
      for (unsigned x : levels[k]) {
        GridIndex nu = index(x);
        Matrix t = m.theta(i, nu);
        if (nu[i].is_minus_one()) t += Matrix::identity(t.rows());
        blocks.push_back(std::move(t));
      }
      per_level.push_back(block_diag(blocks));
    }
    chain_maps.push_back(std::move(per_level));
  }
  return complex_cohomology(c, chain_maps);
}

KoszulResult point_cohomology(std::size_t dim) {
  KoszulResult r;
  r.degrees[0] = CohomologySpace{dim, Matrix::identity(dim), {}};
  return r;
}

void check_alpha(const std::vector<Rational>& alpha, const MonomialSpec& spec) {
  spec.check();
  if (alpha.size() != spec.n) throw Error(Errc::InvalidSpec, "need one exponent per Y-axis");
  for (const auto& a : alpha)
    if (a < Rational(0) || a >= Rational(1)) throw Error(Errc::InvalidSpec, "exponent " + a.str() + " outside [0, 1)");
}

// Koszul dimensions of commuting 1x1 scalars, degree q in [0, k].
std::map<int, std::size_t> scalar_koszul_dims(const std::vector<Rational>& scalars) {
  if (scalars.empty()) return {{0, 1}};
  std::vector<Matrix> ops;
  for (const auto& s : scalars) ops.push_back(Matrix::scalar(1, s));
  return koszul_cohomology(ops).dims();
}

void append(SpectrumReport& r, const std::map<int, std::size_t>& dims, const Rational& exponent, std::size_t mult) {
  for (const auto& [q, d] : dims)
    if (d) r.entries.push_back({q, exponent, d * mult});
}

}  // namespace

KoszulResult dr_stalk(const NCModule& m) { return corner_cohomology(m, true); }

KoszulResult dr_costalk(const NCModule& m) { return corner_cohomology(m, false); }

KoszulResult dr_global_punctured(const LocalSystemSpec& l) {
  l.check();
  if (l.axes == 0) return point_cohomology(l.rank());
  // Orbit blocks use their representative: every member has a nonzero exponent, so
  // the block is acyclic either way.
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < l.axes; ++i) {
    std::vector<Matrix> blocks;
    for (const auto& b : l.blocks) blocks.push_back(Matrix::scalar(b.dim, b.alpha[i]) + b.nilpotents[i]);
    ops.push_back(block_diag(blocks));
  }
  return koszul_cohomology(ops);
}

long MonomialSpec::gcd() const {
  long g = 0;
  for (long x : m) g = std::gcd(g, x);
  return g;
}

void MonomialSpec::check() const {
  if (m.empty()) throw Error(Errc::InvalidSpec, "monomial needs at least one exponent");
  if (m.size() > n) throw Error(Errc::InvalidSpec, "more monomial exponents than Y-axes");
  if (n > dx) throw Error(Errc::InvalidSpec, "more Y-axes than the ambient dimension");
  for (long x : m)
    if (x < 1) throw Error(Errc::InvalidSpec, "monomial exponents must be positive");
}

void SpectrumReport::normalize() {
  std::map<std::pair<int, Rational>, std::size_t> acc;
  for (const auto& e : entries) acc[{e.degree, e.exponent}] += e.multiplicity;
  entries.clear();
  for (const auto& [k, mult] : acc)
    if (mult) entries.push_back({k.first, k.second, mult});
}

std::size_t SpectrumReport::total_in_degree(int q) const {
  std::size_t t = 0;
  for (const auto& e : entries)
    if (e.degree == q) t += e.multiplicity;
  return t;
}

SpectrumReport nearby_cycles_monomial(const std::vector<Rational>& alpha, const MonomialSpec& spec) {
  check_alpha(alpha, spec);
  const std::size_t n = spec.n, r = spec.r();
  SpectrumReport out;
  // t∂_t eigenvalue s on the pieces z_1^{k} ... ; s m_1 = k + alpha_1.
  for (long k = 0; k < spec.m[0]; ++k) {
    Rational s = (Rational(k) + alpha[0]) / Rational(spec.m[0]);
    // η_i = (z_i∂_i + alpha_i) - (m_i/m_1)(z_1∂_1 + alpha_1), reduced mod integers
    std::vector<Rational> eta;
    for (std::size_t i = 1; i < n; ++i) {
      Rational mi = i < r ? Rational(spec.m[i]) : Rational(0);
      eta.push_back((s * mi - alpha[i]).frac());
    }
    append(out, scalar_koszul_dims(eta), s, 1);
  }
  out.normalize();
  return out;
}

SpectrumReport nearby_cycles_monomial(const LocalSystemSpec& l, const MonomialSpec& spec, bool associated_graded) {
  l.check();
  if (l.axes != spec.n) throw Error(Errc::InvalidSpec, "local system axes must equal the number of Y-axes");
  if (!l.is_rank_one() && !associated_graded)
    throw Error(Errc::RankUnsupported, "nearby cycles are computed for rank one; use the associated-graded mode");
  SpectrumReport out;
  for (const auto& [beta, mult] : l.exponent_multiset()) {
    std::vector<Rational> alpha;
    for (const auto& b : beta) alpha.push_back(b.is_zero() ? b : b + Rational(1));
    for (auto e : nearby_cycles_monomial(alpha, spec).entries) {
      e.multiplicity *= mult;
      out.entries.push_back(e);
    }
  }
  out.normalize();
  out.associated_graded = !l.is_rank_one();
  return out;
}

SpectrumReport psi_oracle(const std::vector<Rational>& alpha, const MonomialSpec& spec) {
  check_alpha(alpha, spec);
  const std::size_t n = spec.n;
  std::vector<long> deg(n, 0);
  for (std::size_t i = 0; i < spec.r(); ++i) deg[i] = spec.m[i];
  IntegerKernel k = integer_kernel(deg);
  auto pair = [&](const std::vector<long>& v) {
    Rational s(0);
    for (std::size_t i = 0; i < n; ++i) s += alpha[i] * Rational(v[i]);
    return s;
  };
  // Restricted character on pi_1 of one component of the Milnor fiber.
  std::vector<Rational> chi;
  for (const auto& b : k.basis) chi.push_back(pair(b).frac().is_zero() ? Rational(0) : Rational(1));
  std::map<int, std::size_t> dims = scalar_koszul_dims(chi);
  // deck transformation: the g components are permuted cyclically, g-th power acts by chi(lift)
  Rational theta = pair(k.lift);
  SpectrumReport out;
  for (long a = 0; a < k.gcd; ++a) append(out, dims, ((theta + Rational(a)) / Rational(k.gcd)).frac(), 1);
  out.normalize();
  return out;
}

}  // namespace nchol
