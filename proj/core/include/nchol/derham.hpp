#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nchol/deligne.hpp"
#include "nchol/linalg.hpp"
#include "nchol/ncmodule.hpp"

namespace nchol {

// Corner complex of the can_i : V(nu_i = 0) -> V(nu_i = -1); degrees [-n, 0],
// corner (0,...,0) in degree -n. induced_operators[i] is the action of z_i∂_{z_i}.
KoszulResult dr_stalk(const NCModule& m);
// Corner complex of the var_i : V(nu_i = -1) -> V(nu_i = 0); corner (-1,...,-1) in degree -n.
KoszulResult dr_costalk(const NCModule& m);
// Koszul cohomology of Θ_i = alpha_i + N_i on the block space; degrees [0, n].
KoszulResult dr_global_punctured(const LocalSystemSpec& l);

// f = prod_{i < r} z_i^{m_i}; Y = {z_0 ... z_{n-1} = 0} inside a d_X-dimensional space.
struct MonomialSpec {
  std::size_t dx = 1;
  std::size_t n = 1;
  std::vector<long> m;

  std::size_t r() const { return m.size(); }
  long gcd() const;
  void check() const;  // throws InvalidSpec
};

struct SpectrumEntry {
  int degree = 0;
  Rational exponent;  // in [0, 1)
  std::size_t multiplicity = 0;

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;
  bool associated_graded = false;

  // merges repeated (degree, exponent) pairs and sorts
  void normalize();
  std::size_t total_in_degree(int q) const;
  bool empty() const { return entries.empty(); }
  friend bool operator==(const SpectrumReport& a, const SpectrumReport& b) { return a.entries == b.entries; }
};

// alpha_i in [0, 1), one per Y-axis; rank-one local system.
SpectrumReport nearby_cycles_monomial(const std::vector<Rational>& alpha, const MonomialSpec& spec);
// Exponents of l are converted from (-1, 0] to [0, 1). Higher rank needs associated_graded.
SpectrumReport nearby_cycles_monomial(const LocalSystemSpec& l, const MonomialSpec& spec,
                                      bool associated_graded = false);
// Milnor-fiber computation: Koszul over the kernel lattice of deg plus deck action.
SpectrumReport psi_oracle(const std::vector<Rational>& alpha, const MonomialSpec& spec);

}  // namespace nchol
