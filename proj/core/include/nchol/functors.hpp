#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nchol/ncmodule.hpp"

namespace nchol {

// Y = intersection over `unions` of Z_I = union_{i in I} {z_i = 0}.
struct CoordinateDivisorSpec {
  std::vector<std::vector<std::size_t>> unions;

  static CoordinateDivisorSpec divisor(std::vector<std::size_t> axes) { return {{std::move(axes)}}; }
  static CoordinateDivisorSpec coordinate_subspace(const std::vector<std::size_t>& axes);
  static CoordinateDivisorSpec parse(const std::string& s);  // "0,1;2"
  void check(std::size_t axes) const;
  std::string str() const;
};

using GradedResult = std::map<int, NCModule>;

struct LocalizationResult {
  NCModule module;
  NCMorphism unit;
};

LocalizationResult localize(const NCModule& m, const std::vector<std::size_t>& axes);
NCMorphism localize(const NCMorphism& f, const std::vector<std::size_t>& axes);
bool is_localized(const NCModule& m, const std::vector<std::size_t>& axes);

struct LocalCohomology {
  GradedResult gamma;    // H^j_[Y] M, j in [0, r]
  GradedResult cogamma;  // H^j_[X|Y] M, j in [0, r-1]
  // 0 -> H^0_[Y] M -> M -> H^0_[X|Y] M -> H^1_[Y] M -> 0
  NCMorphism gamma0_to_m;
  NCMorphism m_to_cogamma0;
  NCMorphism cogamma0_to_gamma1;
};

LocalCohomology local_cohomology(const NCModule& m, const CoordinateDivisorSpec& y);

// Interior exponents reflect (a -> -1 - a); 0 and -1 are fixed.
GridIndex dual_index(const GridIndex& nu);
NCModule dual(const NCModule& m);
// D(f) : D(target) -> D(source)
NCMorphism dual(const NCMorphism& f);
// Signed identity M -> D(D(M)), sign (-1)^{#{i : nu_i = -1}}.
NCMorphism double_dual_iso(const NCModule& m);

struct DualLocalCohomology {
  GradedResult dual_gamma;    // ∨H^j_[Y] M = D H^{-j}_[Y] D M, j in [-r, 0]
  GradedResult dual_cogamma;  // ∨H^j_[X|Y] M, j in [-(r-1), 0]
  // 0 -> ∨H^{-1}_[Y] M -> ∨H^0_[X|Y] M -> M -> ∨H^0_[Y] M -> 0
  NCMorphism dual_gamma_m1_to_dual_cogamma0;
  NCMorphism dual_cogamma0_to_m;
  NCMorphism m_to_dual_gamma0;
  LocalCohomology direct;
  // ∨H^0_[X|Y] M -> H^0_[X|Y] M
  NCMorphism iota;
  bool direct_sequence_exact = false;
  bool dual_sequence_exact = false;
};

DualLocalCohomology dual_local_cohomology(const NCModule& m, const CoordinateDivisorSpec& y);

// 0 -> A -a-> B -b-> C -c-> D -> 0
bool four_term_exact(const NCMorphism& a, const NCMorphism& b, const NCMorphism& c);

NCModule minimal_extension(const NCModule& m, const CoordinateDivisorSpec& y);

NCModule kashiwara_push(const NCModule& m, std::size_t new_axis);
NCModule kashiwara_pull(const NCModule& m, std::size_t axis);

}  // namespace nchol
