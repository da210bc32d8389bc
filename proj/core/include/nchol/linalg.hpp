#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "nchol/matrix.hpp"

namespace nchol {

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon rref(const Matrix& m);

struct RankKernelImage {
  std::size_t rank = 0;
  Matrix kernel_basis;  // cols x (cols - rank)
  Matrix image_basis;   // rows x rank, pivot columns of the input
};

RankKernelImage rank_kernel_image(const Matrix& m);
std::size_t rank(const Matrix& m);
Matrix kernel_basis(const Matrix& m);
Matrix image_basis(const Matrix& m);

Matrix inverse(const Matrix& m);
std::optional<Matrix> try_inverse(const Matrix& m);
bool is_invertible(const Matrix& m);

// L with L*K = I for K of full column rank.
Matrix left_inverse(const Matrix& k);
// C with B*C = X; throws if some column of X leaves span(B). B must have full column rank.
Matrix coordinates(const Matrix& b, const Matrix& x);
bool in_span(const Matrix& b, const Matrix& x);

// Complement of span(B) in K^d chosen among standard basis vectors in index order.
struct QuotientData {
  Matrix projection;  // c x d, kills span(B)
  Matrix section;     // d x c, standard basis vectors; projection*section = I
};
QuotientData quotient_data(const Matrix& b, std::size_t d);

bool is_nilpotent(const Matrix& m);

struct CohomologySpace {
  std::size_t dimension = 0;
  Matrix basis;  // columns: representing cocycles
  std::vector<Matrix> induced_operators;
};

struct KoszulResult {
  std::map<int, CohomologySpace> degrees;
  std::map<int, std::size_t> dims() const;
  long euler_characteristic() const;
};

// differentials[k] : C^{first_degree+k} -> C^{first_degree+k+1}
struct CochainComplex {
  int first_degree = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix> differentials;
};

// chain_maps[e][k] acts on C^{first_degree+k} and must commute with the differential.
KoszulResult complex_cohomology(const CochainComplex& c,
                                const std::vector<std::vector<Matrix>>& chain_maps = {});

KoszulResult koszul_cohomology(const std::vector<Matrix>& ops,
                               const std::vector<Matrix>& extra = {});

struct IntegerKernel {
  std::vector<std::vector<long>> basis;  // Z-basis of {x in Z^k : w.x = 0}
  std::vector<long> lift;                // w.lift = gcd
  long gcd = 0;                          // gcd(w) >= 0
};
IntegerKernel integer_kernel(const std::vector<long>& w);

// Subsets of {0..n-1} of size j in lexicographic order, as bitmasks.
std::vector<unsigned> subsets_of_size(std::size_t n, std::size_t j);

}  // namespace nchol
