#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nchol/ncmodule.hpp"
#include "nchol/rational.hpp"

namespace nchol {

using MultiIndex = std::vector<unsigned>;

// η ∂^left ⊗ ∂^right, η a formal basis label.
struct SymbolKey {
  std::string label;
  MultiIndex left;
  MultiIndex right;

  friend auto operator<=>(const SymbolKey&, const SymbolKey&) = default;
  friend bool operator==(const SymbolKey&, const SymbolKey&) = default;
};

class SymbolElement {
 public:
  static constexpr std::size_t default_order_bound = 4;

  explicit SymbolElement(std::size_t n, std::size_t order_bound = default_order_bound);
  // η ⊗ ∂^right
  static SymbolElement basis(std::size_t n, const std::string& label, const MultiIndex& right,
                             std::size_t order_bound = default_order_bound);

  std::size_t variables() const { return n_; }
  std::size_t order_bound() const { return bound_; }
  const std::map<SymbolKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Throws OrderOverflow when |left| + |right| exceeds the bound.
  void add(const std::string& label, const MultiIndex& left, const MultiIndex& right, const Rational& c);

  std::string str() const;

  friend bool operator==(const SymbolElement& a, const SymbolElement& b) { return a.terms_ == b.terms_; }

 private:
  std::size_t n_;
  std::size_t bound_;
  std::map<SymbolKey, Rational> terms_;
};

// All multi-indices of length n with |nu| <= order, graded then lexicographic.
std::vector<MultiIndex> multi_indices(std::size_t n, std::size_t order);

// η∂^μ ⊗ ∂^ν -> Σ_{k <= ν} C(ν, k) (-1)^{|k|} η∂^{μ+ν-k} ⊗ ∂^k
SymbolElement involution_iota(const SymbolElement& x);

// Right-module grid: slice at -1-nu, Θ -> -1 - Θ, var/can exchanged with a sign.
NCModule side_change(const NCModule& m);
// Signed identity M -> side_change(side_change(M)).
NCMorphism side_change_double_iso(const NCModule& m);
// Slice-wise transpose: Θ^T, var' = can^T, can' = var^T, same grid.
NCModule transpose_module(const NCModule& m);

}  // namespace nchol
