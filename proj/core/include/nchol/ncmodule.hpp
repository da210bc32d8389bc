#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nchol/matrix.hpp"
#include "nchol/rational.hpp"

namespace nchol {

// Grid exponent in [-1, 0].
class Exponent {
 public:
  Exponent() = default;
  Exponent(const Rational& v);
  Exponent(int v) : Exponent(Rational(v)) {}

  const Rational& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_minus_one() const { return v_ == Rational(-1); }
  bool is_interior() const { return !is_zero() && !is_minus_one(); }

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend auto operator<=>(const Exponent& a, const Exponent& b) { return a.v_ <=> b.v_; }

 private:
  Rational v_;
};

class GridIndex {
 public:
  GridIndex() = default;
  explicit GridIndex(std::vector<Exponent> coords) : c_(std::move(coords)) {}
  GridIndex(std::initializer_list<Exponent> coords) : c_(coords) {}
  static GridIndex from_rationals(const std::vector<Rational>& v);
  static GridIndex zeros(std::size_t n) { return GridIndex(std::vector<Exponent>(n)); }

  std::size_t size() const { return c_.size(); }
  const Exponent& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Exponent>& coords() const { return c_; }

  GridIndex with(std::size_t i, const Exponent& e) const;
  // ν + 1_i, valid when ν_i = -1.
  GridIndex raised(std::size_t i) const { return with(i, Exponent(0)); }
  // ν - 1_i, valid when ν_i = 0.
  GridIndex lowered(std::size_t i) const { return with(i, Exponent(-1)); }
  GridIndex inserted(std::size_t pos, const Exponent& e) const;
  GridIndex erased(std::size_t pos) const;
  std::size_t count_minus_one() const;

  std::string str() const;

  friend bool operator==(const GridIndex&, const GridIndex&) = default;
  friend auto operator<=>(const GridIndex& a, const GridIndex& b) { return a.c_ <=> b.c_; }

 private:
  std::vector<Exponent> c_;
};

using SliceMaps = std::map<GridIndex, Matrix>;

class NCModule {
 public:
  NCModule() = default;
  explicit NCModule(std::size_t axes);

  std::size_t axes() const { return axes_; }
  const std::map<GridIndex, std::size_t>& slices() const { return slices_; }
  std::size_t dim(const GridIndex& nu) const;
  std::size_t total_dim() const;
  bool has_slice(const GridIndex& nu) const { return slices_.count(nu) > 0; }
  bool is_zero() const { return slices_.empty(); }

  // Setting dimension 0 removes the slice and every map touching it.
  void set_slice(const GridIndex& nu, std::size_t dim);
  void set_theta(std::size_t axis, const GridIndex& nu, Matrix m);
  void set_var(std::size_t axis, const GridIndex& nu, Matrix m);
  void set_can(std::size_t axis, const GridIndex& nu, Matrix m);

  const Matrix* find_theta(std::size_t axis, const GridIndex& nu) const;
  const Matrix* find_var(std::size_t axis, const GridIndex& nu) const;
  const Matrix* find_can(std::size_t axis, const GridIndex& nu) const;

  // Stored theta; 0x0 for absent slices; nu_i * id if missing on a present slice.
  Matrix theta(std::size_t axis, const GridIndex& nu) const;
  // var_i[nu]: V_nu -> V_{nu+1_i}; zero of the right shape when not stored.
  Matrix var(std::size_t axis, const GridIndex& nu) const;
  // can_i[nu]: V_{nu+1_i} -> V_nu; zero of the right shape when not stored.
  Matrix can(std::size_t axis, const GridIndex& nu) const;

  const SliceMaps& theta_maps(std::size_t axis) const { return theta_[axis]; }
  const SliceMaps& var_maps(std::size_t axis) const { return var_[axis]; }
  const SliceMaps& can_maps(std::size_t axis) const { return can_[axis]; }

  friend bool operator==(const NCModule&, const NCModule&) = default;

 private:
  std::size_t axes_ = 0;
  std::map<GridIndex, std::size_t> slices_;
  std::vector<SliceMaps> theta_, var_, can_;
};

struct Violation {
  std::optional<std::size_t> axis;
  GridIndex index;
  std::string identity;
  std::string detail;
  std::string str() const;
};

std::vector<Violation> validate(const NCModule& m);
bool is_valid(const NCModule& m);
// Throws InvalidModule naming the first violation.
void require_valid(const NCModule& m, const std::string& context);

class NCMorphism {
 public:
  NCMorphism() = default;
  NCMorphism(NCModule source, NCModule target);

  const NCModule& source() const { return src_; }
  const NCModule& target() const { return tgt_; }
  const SliceMaps& maps() const { return maps_; }

  void set(const GridIndex& nu, Matrix m);
  // Stored map or the zero map of shape dim_target x dim_source.
  Matrix at(const GridIndex& nu) const;
  std::vector<GridIndex> support() const;

  friend bool operator==(const NCMorphism&, const NCMorphism&) = default;

 private:
  NCModule src_, tgt_;
  SliceMaps maps_;
};

std::vector<Violation> validate(const NCMorphism& f);
void require_valid(const NCMorphism& f, const std::string& context);

NCMorphism identity_morphism(const NCModule& m);
NCMorphism zero_morphism(const NCModule& source, const NCModule& target);
NCMorphism compose(const NCMorphism& g, const NCMorphism& f);
NCMorphism scale(const NCMorphism& f, const Rational& c);
NCMorphism add(const NCMorphism& f, const NCMorphism& g);
bool is_zero_morphism(const NCMorphism& f);
bool is_isomorphism(const NCMorphism& f);
bool is_monomorphism(const NCMorphism& f);
bool is_epimorphism(const NCMorphism& f);
NCMorphism inverse(const NCMorphism& f);

struct SubobjectResult {
  NCModule module;
  NCMorphism inclusion;
};
struct QuotientResult {
  NCModule module;
  NCMorphism projection;
};
struct ImageFactorization {
  NCModule module;
  NCMorphism epi;   // source -> image
  NCMorphism mono;  // image -> target
};

SubobjectResult kernel(const NCMorphism& f);
QuotientResult cokernel(const NCMorphism& f);
NCModule image(const NCMorphism& f);
ImageFactorization image_factorization(const NCMorphism& f);

// Sub-object spanned slice-wise by the columns of `bases` (must be stable under structure maps).
SubobjectResult submodule(const NCModule& m, const SliceMaps& bases);
// Quotient by the slice-wise spans of `bases` (must be stable under structure maps).
QuotientResult quotient(const NCModule& m, const SliceMaps& bases);

struct DirectSum {
  NCModule module;
  std::vector<NCMorphism> injections;
  std::vector<NCMorphism> projections;
  std::vector<std::map<GridIndex, std::size_t>> offsets;  // per part, per slice
};

NCModule direct_sum(const NCModule& a, const NCModule& b);
DirectSum direct_sum(const std::vector<NCModule>& parts);
// Morphism between direct sums assembled from components (target j, source i).
NCMorphism block_morphism(const DirectSum& source, const DirectSum& target,
                          const std::map<std::pair<std::size_t, std::size_t>, NCMorphism>& parts);

bool is_exact(const NCMorphism& f, const NCMorphism& g);

std::size_t eigenspace_dim(const NCModule& m, const std::vector<Rational>& nu);

// Axes of `a` first, then axes of `b`.
NCModule external_product(const NCModule& a, const NCModule& b);
NCModule zero_module(std::size_t axes);

namespace detail {
SubobjectResult kernel_unchecked(const NCMorphism& f);
QuotientResult cokernel_unchecked(const NCMorphism& f);
ImageFactorization image_unchecked(const NCMorphism& f);
NCMorphism compose_unchecked(const NCMorphism& g, const NCMorphism& f);
// Indices nu with nu_i = -1 such that nu or nu + 1_i is a slice of some module in `ms`.
std::vector<GridIndex> minus_one_keys(std::size_t axis, const std::vector<const NCModule*>& ms);
}  // namespace detail
NCModule point_module(std::size_t dim = 1);

}  // namespace nchol
