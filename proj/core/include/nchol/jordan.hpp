#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nchol/matrix.hpp"
#include "nchol/polynomial.hpp"

namespace nchol {

// R_i with sum R_i * prod_{j != i} P_j = 1, deg R_i < deg P_i.
std::vector<Polynomial> bezout_cofactors(const std::vector<Polynomial>& factors);

// Q_i = R_i * P_i^vee reduced mod prod P_j.
std::vector<Polynomial> projector_polynomials(const std::vector<Polynomial>& factors);

std::vector<Matrix> primary_projectors(const Matrix& t, const std::vector<Polynomial>& factors);

Matrix nilpotent_log(const Matrix& u);
Matrix nilpotent_exp(const Matrix& n);

struct CyclotomicFactor {
  std::size_t order;
  std::size_t multiplicity;
};

// Throws NotQuasiUnipotent if p has a non-cyclotomic irreducible factor.
std::vector<CyclotomicFactor> cyclotomic_factorization(const Polynomial& p);

// Semisimple part of t given a squarefree polynomial annihilating its semisimple part.
Matrix semisimple_part(const Matrix& t, const Polynomial& squarefree);

}  // namespace nchol
