#include "nchol/deligne.hpp"

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "nchol/errors.hpp"
#include "nchol/jordan.hpp"
#include "nchol/linalg.hpp"

namespace nchol {

Rational normalize_exponent(const Rational& x) {
  Rational f = x.frac();
  return f.is_zero() ? f : f - Rational(1);
}

namespace {

long common_denominator(const ExponentTuple& a) {
  long l = 1;
  for (const auto& x : a) l = std::lcm(l, x.den().get_si());
  return l;
}

bool in_exponent_range(const Rational& a) { return a > Rational(-1) && a <= Rational(0); }

void spec_error(const std::string& msg) { throw Error(Errc::InvalidSpec, msg); }

Matrix jordan_nilpotent(const std::vector<std::size_t>& sizes) {
  std::size_t d = 0;
  for (auto s : sizes) d += s;
  Matrix j(d, d);
  std::size_t off = 0;
  for (auto s : sizes) {
    for (std::size_t k = 0; k + 1 < s; ++k) j(off + k, off + k + 1) = Rational(1);
    off += s;
  }
  return j;
}

// Jordan type of one conjugate when a rational nilpotent is spread evenly over s conjugates.
Matrix split_nilpotent(const Matrix& n, std::size_t s) {
  std::vector<std::size_t> r{n.rows() / s};
  Matrix p = Matrix::identity(n.rows());
  while (r.back() > 0) {
    p = p * n;
    std::size_t rk = rank(p);
    if (rk % s) spec_error("nilpotent rank profile is not divisible by the orbit size");
    r.push_back(rk / s);
  }
  std::vector<std::size_t> sizes;
  for (std::size_t k = r.size() - 1; k >= 1; --k) {
    std::size_t at_least_k = r[k - 1] - r[k];
    std::size_t at_least_next = k + 1 < r.size() ? r[k] - r[k + 1] : 0;
    for (std::size_t c = at_least_next; c < at_least_k; ++c) sizes.push_back(k);
  }
  return jordan_nilpotent(sizes);
}

NCModule deligne_piece(const ExponentTuple& beta, const std::vector<Matrix>& nil, std::size_t d) {
  const std::size_t n = beta.size();
  NCModule m(n);
  unsigned zero_mask = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (beta[i].is_zero()) zero_mask |= 1u << i;
  auto index_of = [&](unsigned s) {
    std::vector<Exponent> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(s & (1u << i) ? Rational(-1) : beta[i]);
    return GridIndex(std::move(c));
  };
  std::vector<unsigned> corners;
  for (unsigned s = zero_mask;; s = (s - 1) & zero_mask) {
    corners.push_back(s);
    if (s == 0) break;
  }
  for (unsigned s : corners) m.set_slice(index_of(s), d);
  for (unsigned s : corners) {
    GridIndex nu = index_of(s);
    for (std::size_t i = 0; i < n; ++i) {
      Matrix t = Matrix::scalar(d, beta[i]) + nil[i];
      if (s & (1u << i)) {
        t -= Matrix::identity(d);
        m.set_var(i, nu, Matrix::identity(d));
        m.set_can(i, nu, nil[i]);
      }
      m.set_theta(i, nu, t);
    }
  }
  return m;
}

}  // namespace

std::vector<ExponentTuple> galois_orbit(const ExponentTuple& alpha) {
  long l = common_denominator(alpha);
  std::set<ExponentTuple> out;
  for (long j = 1; j <= l; ++j) {
    if (std::gcd(j, l) != 1) continue;
    ExponentTuple b;
    for (const auto& x : alpha) b.push_back(normalize_exponent(x * Rational(j)));
    out.insert(std::move(b));
  }
  return {out.begin(), out.end()};
}

LocalSystemSpec LocalSystemSpec::trivial(std::size_t axes, std::size_t rank) {
  LocalSystemSpec l{axes, {}};
  l.blocks.push_back({ExponentTuple(axes, Rational(0)), rank, std::vector<Matrix>(axes, Matrix(rank, rank)), {}});
  return l;
}

LocalSystemSpec LocalSystemSpec::rank_one(const ExponentTuple& alpha) {
  LocalSystemSpec l{alpha.size(), {}};
  l.blocks.push_back({alpha, 1, std::vector<Matrix>(alpha.size(), Matrix(1, 1)), {}});
  return l;
}

void LocalSystemSpec::check() const {
  std::set<ExponentTuple> seen;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    const std::string where = "block " + std::to_string(b) + ": ";
    if (blk.alpha.size() != axes) spec_error(where + "alpha has wrong length");
    for (const auto& a : blk.alpha)
      if (!in_exponent_range(a)) spec_error(where + "exponent " + a.str() + " outside (-1, 0]");
    if (blk.dim == 0) spec_error(where + "dimension must be positive");
    if (blk.nilpotents.size() != axes) spec_error(where + "needs one nilpotent per axis");
    for (const auto& n : blk.nilpotents) {
      if (n.rows() != blk.dim || n.cols() != blk.dim) spec_error(where + "nilpotent has wrong shape");
      if (!is_nilpotent(n)) spec_error(where + "matrix is not nilpotent");
    }
    for (std::size_t i = 0; i < axes; ++i)
      for (std::size_t j = i + 1; j < axes; ++j)
        if (!commute(blk.nilpotents[i], blk.nilpotents[j])) spec_error(where + "nilpotents do not commute");
    if (!blk.orbit.empty()) {
      if (blk.orbit != galois_orbit(blk.alpha)) spec_error(where + "orbit is not the Galois orbit of alpha");
      if (blk.dim % blk.orbit.size()) spec_error(where + "dimension not divisible by orbit size");
    }
    for (const auto& mbr : blk.members())
      if (!seen.insert(mbr).second) spec_error(where + "exponent tuple repeats across blocks");
  }
}

std::size_t LocalSystemSpec::rank() const {
  std::size_t r = 0;
  for (const auto& b : blocks) r += b.dim;
  return r;
}

bool LocalSystemSpec::is_rank_one() const { return rank() == 1; }

LocalSystemSpec LocalSystemSpec::rescaled(const Rational& c) const {
  if (c.is_zero()) throw Error(Errc::InvalidArgument, "rescaling factor must be nonzero");
  LocalSystemSpec out = *this;
  for (auto& b : out.blocks)
    for (auto& n : b.nilpotents) n = n * c;
  return out;
}

std::vector<std::pair<ExponentTuple, std::size_t>> LocalSystemSpec::exponent_multiset() const {
  std::map<ExponentTuple, std::size_t> acc;
  for (const auto& b : blocks)
    for (const auto& m : b.members()) acc[m] += b.member_dim();
  return {acc.begin(), acc.end()};
}

Polynomial LocalSystemSpec::characteristic_polynomial(std::size_t axis) const {
  if (axis >= axes) throw Error(Errc::InvalidArgument, "axis out of range");
  std::map<std::size_t, std::size_t> by_order;
  for (const auto& [beta, mult] : exponent_multiset()) by_order[beta[axis].den().get_ui()] += mult;
  Polynomial p(Rational(1));
  for (const auto& [d, cnt] : by_order) {
    Polynomial phi = cyclotomic(d);
    auto deg = static_cast<std::size_t>(phi.degree());
    if (cnt % deg) spec_error("eigenvalues of axis " + std::to_string(axis) + " are not closed under conjugation");
    p *= phi.pow(cnt / deg);
  }
  return p;
}

NCModule deligne_meromorphic(const LocalSystemSpec& l) {
  l.check();
  std::vector<NCModule> parts;
  for (const auto& b : l.blocks) {
    auto members = b.members();
    std::vector<Matrix> nil = b.nilpotents;
    if (members.size() > 1) {
      std::size_t active = 0;
      for (auto& n : nil) {
        if (n.is_zero()) {
          n = Matrix(b.member_dim(), b.member_dim());
        } else {
          if (++active > 1) spec_error("orbit block with nilpotents on several axes cannot be split over Q");
          n = split_nilpotent(n, members.size());
        }
      }
    }
    for (const auto& beta : members) parts.push_back(deligne_piece(beta, nil, b.member_dim()));
  }
  if (parts.empty()) return zero_module(l.axes);
  return direct_sum(parts).module;
}

namespace {

Matrix monomial_power(const std::vector<Matrix>& t, const std::vector<Matrix>& tinv, const std::vector<long>& a) {
  Matrix m = Matrix::identity(t[0].rows());
  for (std::size_t i = 0; i < t.size(); ++i)
    m = m * (a[i] >= 0 ? t[i] : tinv[i]).pow(static_cast<std::size_t>(std::labs(a[i])));
  return m;
}

std::vector<Rational> primitive_exponents(std::size_t d) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < d; ++k)
    if (std::gcd(k, d) == 1) out.push_back(normalize_exponent(Rational(-static_cast<long>(k), static_cast<long>(d))));
  return out;
}

}  // namespace

MonodromyDecomposition monodromy_decomposition(const std::vector<Matrix>& t) {
  const std::size_t n = t.size();
  if (n == 0) spec_error("monodromy needs at least one axis");
  const std::size_t dim = t[0].rows();
  for (const auto& m : t)
    if (m.rows() != dim || m.cols() != dim) spec_error("monodromy matrices must be square of equal size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commute(t[i], t[j]))
        throw Error(Errc::NonCommuting, "T_" + std::to_string(i) + " and T_" + std::to_string(j) + " do not commute");

  std::vector<std::vector<std::size_t>> orders(n);
  std::vector<std::vector<Matrix>> projs(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Polynomial> factors;
    for (const auto& f : cyclotomic_factorization(characteristic_polynomial(t[i]))) {
      orders[i].push_back(f.order);
      factors.push_back(cyclotomic(f.order).pow(f.multiplicity));
    }
    projs[i] = factors.empty() ? std::vector<Matrix>{} : primary_projectors(t[i], factors);
  }

  MonodromyDecomposition out;
  out.spec.axes = n;
  std::vector<Matrix> basis_cols;
  std::size_t covered = 0;
  std::vector<std::size_t> pick(n, 0);
  bool done = dim == 0;
  while (!done) {
    Matrix p = Matrix::identity(dim);
    for (std::size_t i = 0; i < n; ++i) p = p * projs[i][pick[i]];
    if (!p.is_zero()) {
      Matrix bc = image_basis(p);
      Matrix lc = left_inverse(bc);
      const std::size_t dc = bc.cols();
      std::vector<Matrix> tc, tcinv;
      for (const auto& m : t) {
        tc.push_back(lc * m * bc);
        tcinv.push_back(inverse(tc.back()));
      }
      // candidate exponent tuples of this joint component, grouped into orbits
      std::vector<ExponentTuple> candidates{{}};
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<ExponentTuple> next;
        for (const auto& c : candidates)
          for (const auto& e : primitive_exponents(orders[i][pick[i]])) {
            next.push_back(c);
            next.back().push_back(e);
          }
        candidates = std::move(next);
      }
      std::set<std::vector<ExponentTuple>> seen;
      std::size_t component_covered = 0;
      for (const auto& cand : candidates) {
        auto orbit = galois_orbit(cand);
        if (!seen.insert(orbit).second) continue;
        long l = common_denominator(cand);
        std::vector<long> w;
        for (const auto& a : cand) w.push_back((a * Rational(l)).to_long());
        w.push_back(l);
        std::vector<Matrix> rows;
        for (const auto& g : integer_kernel(w).basis) {
          std::vector<long> a(g.begin(), g.begin() + static_cast<long>(n));
          rows.push_back((monomial_power(tc, tcinv, a) - Matrix::identity(dc)).pow(dc));
        }
        Matrix k = rows.empty() ? Matrix::identity(dc) : kernel_basis(vstack(rows));
        if (k.cols() == 0) continue;
        Matrix lk = left_inverse(k);
        LocalSystemBlock blk;
        blk.alpha = orbit.back();
        blk.dim = k.cols();
        if (orbit.size() > 1) blk.orbit = orbit;
        std::vector<Matrix> ss;
        for (std::size_t i = 0; i < n; ++i) {
          Matrix tw = lk * tc[i] * k;
          Matrix s = semisimple_part(tw, cyclotomic(orders[i][pick[i]]));
          blk.nilpotents.push_back(nilpotent_log(inverse(s) * tw));
          ss.push_back(std::move(s));
        }
        out.spec.blocks.push_back(std::move(blk));
        out.semisimple.push_back(std::move(ss));
        basis_cols.push_back(bc * k);
        component_covered += k.cols();
      }
      if (component_covered != dc) throw std::logic_error("joint primary component not exhausted by orbits");
      covered += dc;
    }
    std::size_t i = 0;
    while (i < n && ++pick[i] == projs[i].size()) pick[i++] = 0;
    done = i == n;
  }
  if (covered != dim) throw std::logic_error("primary components do not exhaust the space");
  out.basis = basis_cols.empty() ? Matrix(dim, 0) : hstack(basis_cols);
  return out;
}

LocalSystemSpec monodromy_to_spec(const std::vector<Matrix>& t) { return monodromy_decomposition(t).spec; }

std::vector<Matrix> reconstruct_monodromy(const MonodromyDecomposition& d) {
  const std::size_t n = d.spec.axes;
  std::vector<Matrix> out;
  Matrix binv = inverse(d.basis);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < d.spec.blocks.size(); ++b)
      blocks.push_back(d.semisimple[b][i] * nilpotent_exp(d.spec.blocks[b].nilpotents[i]));
    out.push_back(d.basis * block_diag(blocks) * binv);
  }
  return out;
}

std::string to_string(ResidueConvention c) { return c == ResidueConvention::ZeroOne ? "[0,1)" : "(-1,0]"; }

void ResidueData::check() const {
  std::size_t total = 0;
  for (const auto& b : blocks) {
    bool ok = convention == ResidueConvention::ZeroOne ? (b.alpha >= Rational(0) && b.alpha < Rational(1))
                                                       : in_exponent_range(b.alpha);
    if (!ok) spec_error("exponent " + b.alpha.str() + " outside " + to_string(convention));
    if (b.nilpotent.rows() != b.nilpotent.cols() || !is_nilpotent(b.nilpotent))
      spec_error("residue block needs a square nilpotent matrix");
    total += b.nilpotent.rows();
  }
  if (total != dim) spec_error("residue block sizes do not add up to the dimension");
}

ResidueData rh_convert(const ResidueData& x, ResidueConvention target) {
  x.check();
  ResidueData out = x;
  out.convention = target;
  if (target == x.convention) return out;
  for (auto& b : out.blocks)
    if (!b.alpha.is_zero()) b.alpha += target == ResidueConvention::MinusOneZero ? Rational(-1) : Rational(1);
  return out;
}

}  // namespace nchol
