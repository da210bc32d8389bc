#include "nchol/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "nchol/errors.hpp"

namespace nchol {

RowEchelon rref(const Matrix& m) {
  RowEchelon out{m, {}};
  Matrix& a = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

RankKernelImage rank_kernel_image(const Matrix& m) {
  RowEchelon e = rref(m);
  RankKernelImage out;
  out.rank = e.pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  out.kernel_basis = Matrix(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    out.kernel_basis(free[k], k) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      out.kernel_basis(e.pivots[i], k) = -e.reduced(i, free[k]);
  }
  out.image_basis = m.select_cols(e.pivots);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }
Matrix kernel_basis(const Matrix& m) { return rank_kernel_image(m).kernel_basis; }
Matrix image_basis(const Matrix& m) { return m.select_cols(rref(m).pivots); }

std::optional<Matrix> try_inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  std::size_t n = m.rows();
  RowEchelon e = rref(hstack(m, Matrix::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

Matrix inverse(const Matrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw Error(Errc::InvalidArgument, "matrix is not invertible");
  return *inv;
}

bool is_invertible(const Matrix& m) { return try_inverse(m).has_value(); }

Matrix left_inverse(const Matrix& k) {
  std::vector<std::size_t> rows = rref(k.transpose()).pivots;
  if (rows.size() != k.cols()) throw Error(Errc::InvalidArgument, "left_inverse needs full column rank");
  Matrix s_inv = inverse(k.select_rows(rows));
  Matrix l(k.cols(), k.rows());
  for (std::size_t i = 0; i < k.cols(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) l(i, rows[j]) = s_inv(i, j);
  return l;
}

Matrix coordinates(const Matrix& b, const Matrix& x) {
  if (b.cols() == 0) {
    if (!x.is_zero()) throw Error(Errc::InvalidArgument, "vector not in span of empty basis");
    return Matrix(0, x.cols());
  }
  Matrix c = left_inverse(b) * x;
  if (!(b * c == x)) throw Error(Errc::InvalidArgument, "vector not in span");
  return c;
}

bool in_span(const Matrix& b, const Matrix& x) {
  return rank(hstack(b, x)) == rank(b);
}

QuotientData quotient_data(const Matrix& b, std::size_t d) {
  Matrix indep = image_basis(b);
  RowEchelon e = rref(hstack(indep, Matrix::identity(d)));
  std::vector<std::size_t> chosen;
  for (auto p : e.pivots)
    if (p >= indep.cols()) chosen.push_back(p - indep.cols());
  Matrix section(d, chosen.size());
  for (std::size_t k = 0; k < chosen.size(); ++k) section(chosen[k], k) = 1;
  Matrix full_inv = inverse(hstack(indep, section));
  return {full_inv.rows_range(indep.cols(), d), section};
}

bool is_nilpotent(const Matrix& m) { return m.pow(m.rows()).is_zero(); }

std::map<int, std::size_t> KoszulResult::dims() const {
  std::map<int, std::size_t> d;
  for (const auto& [j, s] : degrees) d[j] = s.dimension;
  return d;
}

long KoszulResult::euler_characteristic() const {
  long chi = 0;
  for (const auto& [j, s] : degrees) chi += (j % 2 == 0 ? 1 : -1) * static_cast<long>(s.dimension);
  return chi;
}

KoszulResult complex_cohomology(const CochainComplex& c,
                                const std::vector<std::vector<Matrix>>& chain_maps) {
  const std::size_t len = c.dims.size();
  if (c.differentials.size() + 1 != len && !(len == 0 && c.differentials.empty()))
    throw Error(Errc::InvalidArgument, "complex needs one differential between consecutive terms");
  for (std::size_t k = 0; k + 1 < len; ++k) {
    const Matrix& d = c.differentials[k];
    if (d.rows() != c.dims[k + 1] || d.cols() != c.dims[k])
      throw Error(Errc::InvalidArgument, "differential shape mismatch");
    if (k + 2 < len && !(c.differentials[k + 1] * d).is_zero())
      throw Error(Errc::InvalidArgument, "d*d != 0");
  }
  for (const auto& e : chain_maps) {
    if (e.size() != len) throw Error(Errc::InvalidArgument, "chain map length mismatch");
    for (std::size_t k = 0; k + 1 < len; ++k)
      if (!(c.differentials[k] * e[k] == e[k + 1] * c.differentials[k]))
        throw Error(Errc::NonCommuting, "extra operator is not a chain map");
  }

  KoszulResult out;
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t d = c.dims[k];
    Matrix z = k + 1 < len ? kernel_basis(c.differentials[k]) : Matrix::identity(d);
    Matrix b = k > 0 ? image_basis(c.differentials[k - 1]) : Matrix(d, 0);
    RowEchelon e = rref(hstack(b, z));
    std::vector<std::size_t> chosen;
    for (auto p : e.pivots)
      if (p >= b.cols()) chosen.push_back(p - b.cols());
    CohomologySpace h;
    h.basis = z.select_cols(chosen);
    h.dimension = chosen.size();
    if (!chain_maps.empty()) {
      Matrix full = hstack(b, h.basis);
      Matrix linv = full.cols() ? left_inverse(full) : Matrix(0, d);
      for (const auto& em : chain_maps) {
        Matrix coords = linv * (em[k] * h.basis);
        h.induced_operators.push_back(coords.rows_range(b.cols(), full.cols()));
      }
    }
    out.degrees[c.first_degree + static_cast<int>(k)] = std::move(h);
  }
  return out;
}

std::vector<unsigned> subsets_of_size(std::size_t n, std::size_t j) {
  std::vector<unsigned> out;
  for (unsigned s = 0; s < (1u << n); ++s)
    if (static_cast<std::size_t>(std::popcount(s)) == j) out.push_back(s);
  std::sort(out.begin(), out.end(), [](unsigned a, unsigned b) {
    // lexicographic on the sorted element lists
    while (a && b) {
      unsigned la = a & -a, lb = b & -b;
      if (la != lb) return la < lb;
      a ^= la;
      b ^= lb;
    }
    return a == 0 && b != 0;
  });
  return out;
}

KoszulResult koszul_cohomology(const std::vector<Matrix>& ops, const std::vector<Matrix>& extra) {
  const std::size_t n = ops.size();
  std::size_t dim = 0;
  if (n) dim = ops[0].rows();
  else if (!extra.empty()) dim = extra[0].rows();
  for (const auto& a : ops)
    if (!a.is_square() || a.rows() != dim) throw Error(Errc::InvalidArgument, "Koszul operators must be square of equal size");
  for (const auto& e : extra)
    if (!e.is_square() || e.rows() != dim) throw Error(Errc::InvalidArgument, "extra operators must match the Koszul space");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commute(ops[i], ops[j]))
        throw Error(Errc::NonCommuting, "operators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
  for (std::size_t e = 0; e < extra.size(); ++e)
    for (std::size_t i = 0; i < n; ++i)
      if (!commute(extra[e], ops[i]))
        throw Error(Errc::NonCommuting, "extra operator " + std::to_string(e) + " does not commute with operator " + std::to_string(i));

  std::vector<std::vector<unsigned>> subsets(n + 1);
  std::vector<std::map<unsigned, std::size_t>> position(n + 1);
  CochainComplex c;
  c.first_degree = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    subsets[j] = subsets_of_size(n, j);
    for (std::size_t k = 0; k < subsets[j].size(); ++k) position[j][subsets[j][k]] = k;
    c.dims.push_back(dim * subsets[j].size());
  }
  for (std::size_t j = 0; j < n; ++j) {
    Matrix d(c.dims[j + 1], c.dims[j]);
    for (std::size_t src = 0; src < subsets[j].size(); ++src) {
      unsigned s = subsets[j][src];
      for (std::size_t i = 0; i < n; ++i) {
        if (s & (1u << i)) continue;
        int below = std::popcount(s & ((1u << i) - 1));
        std::size_t tgt = position[j + 1][s | (1u << i)];
        Matrix blk = below % 2 ? -ops[i] : ops[i];
        d.set_block(tgt * dim, src * dim, blk);
      }
    }
    c.differentials.push_back(std::move(d));
  }
  std::vector<std::vector<Matrix>> maps;
  for (const auto& e : extra) {
    std::vector<Matrix> per_degree;
    for (std::size_t j = 0; j <= n; ++j)
      per_degree.push_back(kron(Matrix::identity(subsets[j].size()), e));
    maps.push_back(std::move(per_degree));
  }
  return complex_cohomology(c, maps);
}

}  // namespace nchol

namespace nchol {

IntegerKernel integer_kernel(const std::vector<long>& w) {
  const std::size_t k = w.size();
  std::vector<long> v = w;
  // columns of u, kept unimodular; w.u[j] = v[j] throughout
  std::vector<std::vector<long>> u(k, std::vector<long>(k, 0));
  for (std::size_t j = 0; j < k; ++j) u[j][j] = 1;
  for (;;) {
    std::size_t piv = k;
    for (std::size_t j = 0; j < k; ++j)
      if (v[j] != 0 && (piv == k || std::labs(v[j]) < std::labs(v[piv]))) piv = j;
    if (piv == k) break;
    bool reduced = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == piv || v[j] == 0) continue;
      long q = v[j] / v[piv];
      v[j] -= q * v[piv];
      for (std::size_t r = 0; r < k; ++r) u[j][r] -= q * u[piv][r];
      reduced = true;
    }
    if (!reduced) break;
  }
  IntegerKernel out;
  out.lift.assign(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    if (v[j] == 0) {
      out.basis.push_back(u[j]);
    } else {
      out.gcd = std::labs(v[j]);
      out.lift = u[j];
      if (v[j] < 0)
        for (auto& x : out.lift) x = -x;
    }
  }
  return out;
}

}  // namespace nchol
