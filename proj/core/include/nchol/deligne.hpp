#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nchol/matrix.hpp"
#include "nchol/ncmodule.hpp"
#include "nchol/polynomial.hpp"
#include "nchol/rational.hpp"

namespace nchol {

using ExponentTuple = std::vector<Rational>;

// Reduce into (-1, 0].
Rational normalize_exponent(const Rational& x);
// {j * alpha mod 1 : gcd(j, L) = 1}, L the common denominator, sorted ascending.
std::vector<ExponentTuple> galois_orbit(const ExponentTuple& alpha);

// Block (alpha, N): Θ_i = alpha_i + N_i. When `orbit` has more than one member the
// block is kept over Q: the monodromy eigenvalue tuples are the whole orbit, each
// with multiplicity dim / |orbit|, and `nilpotents` act on the rational block.
struct LocalSystemBlock {
  ExponentTuple alpha;
  std::size_t dim = 0;
  std::vector<Matrix> nilpotents;
  std::vector<ExponentTuple> orbit;  // empty means {alpha}

  std::vector<ExponentTuple> members() const { return orbit.empty() ? std::vector<ExponentTuple>{alpha} : orbit; }
  std::size_t member_dim() const { return dim / members().size(); }
};

struct LocalSystemSpec {
  std::size_t axes = 0;
  std::vector<LocalSystemBlock> blocks;

  static LocalSystemSpec trivial(std::size_t axes, std::size_t rank = 1);
  static LocalSystemSpec rank_one(const ExponentTuple& alpha);

  void check() const;  // throws InvalidSpec
  std::size_t rank() const;
  bool is_rank_one() const;
  LocalSystemSpec rescaled(const Rational& c) const;
  // Expanded (exponent tuple, multiplicity), sorted.
  std::vector<std::pair<ExponentTuple, std::size_t>> exponent_multiset() const;
  // Product of (t - e^{-2πi β_i})^{mult} over expanded members, as a polynomial over Q.
  Polynomial characteristic_polynomial(std::size_t axis) const;
};

NCModule deligne_meromorphic(const LocalSystemSpec& l);

struct MonodromyDecomposition {
  LocalSystemSpec spec;
  Matrix basis;                               // columns: concatenated block bases
  std::vector<std::vector<Matrix>> semisimple;  // [block][axis]
};

MonodromyDecomposition monodromy_decomposition(const std::vector<Matrix>& t);
LocalSystemSpec monodromy_to_spec(const std::vector<Matrix>& t);
// T_i = basis * diag(S_{b,i} exp(N_{b,i})) * basis^{-1}
std::vector<Matrix> reconstruct_monodromy(const MonodromyDecomposition& d);

enum class ResidueConvention { ZeroOne, MinusOneZero };  // [0,1) and (-1,0]

struct ResidueBlock {
  Rational alpha;
  Matrix nilpotent;
};

struct ResidueData {
  std::size_t dim = 0;
  std::vector<ResidueBlock> blocks;
  ResidueConvention convention = ResidueConvention::MinusOneZero;

  void check() const;  // throws InvalidSpec
};

ResidueData rh_convert(const ResidueData& x, ResidueConvention target);

std::string to_string(ResidueConvention c);

}  // namespace nchol
