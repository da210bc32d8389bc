#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "nchol/deligne.hpp"
#include "nchol/functors.hpp"
#include "nchol/ncmodule.hpp"
#include "nchol/polynomial.hpp"

namespace nchol::testing {

using Rng = std::mt19937;

// Disk models on one axis.
NCModule o_model();          // O: V_0 = C
NCModule o_localized();      // O[1/z]: var = 1, can = 0
NCModule delta_model();      // δ: V_{-1} = C
NCModule j_shriek_model();   // j_! O: var = 0, can = 1
NCModule fractional_model(const Rational& alpha, std::size_t jordan = 1);

// Fixed small modules covering the shapes used across suites.
std::vector<NCModule> standard_corpus();

Rational random_rational(Rng& rng, int lo = -3, int hi = 3);
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int lo = -3, int hi = 3);
Matrix random_invertible(Rng& rng, std::size_t n);
// Strictly upper triangular conjugated by a random invertible matrix.
Matrix random_nilpotent(Rng& rng, std::size_t n);

// One-axis module with every slice of dimension <= max_dim.
NCModule random_one_axis(Rng& rng, std::size_t max_dim);
// External products of one-axis pieces, optionally summed.
NCModule random_module(Rng& rng, std::size_t axes, std::size_t max_slice_dim);

// Basis of Hom(a, b).
std::vector<NCMorphism> hom_space(const NCModule& a, const NCModule& b);
NCMorphism random_morphism(Rng& rng, const NCModule& a, const NCModule& b);

// Every coordinate divisor spec with one union, and every coordinate subspace.
std::vector<CoordinateDivisorSpec> divisor_specs(std::size_t axes);
std::vector<CoordinateDivisorSpec> all_specs(std::size_t axes);

std::size_t max_slice_dim(const NCModule& m);

// Random commuting nilpotents for a block of dimension d.
std::vector<Matrix> random_commuting_nilpotents(Rng& rng, std::size_t axes, std::size_t d);
LocalSystemSpec random_local_system(Rng& rng, std::size_t axes, std::size_t max_blocks, std::size_t max_dim);

}  // namespace nchol::testing

namespace nchol::testing {

Matrix companion(const Polynomial& monic);
// Random conjugate of a block sum of companion matrices whose product of factors annihilates it.
Matrix random_with_annihilator(Rng& rng, const std::vector<Polynomial>& factors);

// Independent determinant by cofactor expansion (small sizes only).
Rational laplace_determinant(const Matrix& m);

}  // namespace nchol::testing

namespace nchol::testing {

// Searches Hom(a, b) for an isomorphism by random combinations of a basis.
bool isomorphic(const NCModule& a, const NCModule& b, unsigned seed = 1);
// Dimension of the submodule generated by vector v of slice nu.
std::size_t generated_dimension(const NCModule& m, const GridIndex& nu, const Matrix& v);

}  // namespace nchol::testing
