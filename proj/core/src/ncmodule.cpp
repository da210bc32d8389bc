#include "nchol/ncmodule.hpp"

#include <set>
#include <sstream>

#include "nchol/errors.hpp"
#include "nchol/linalg.hpp"

namespace nchol {

Exponent::Exponent(const Rational& v) : v_(v) {
  if (v < Rational(-1) || v > Rational(0))
    throw Error(Errc::InvalidArgument, "exponent " + v.str() + " outside [-1, 0]");
}

GridIndex GridIndex::from_rationals(const std::vector<Rational>& v) {
  std::vector<Exponent> c;
  c.reserve(v.size());
  for (const auto& x : v) c.emplace_back(x);
  return GridIndex(std::move(c));
}

GridIndex GridIndex::with(std::size_t i, const Exponent& e) const {
  GridIndex g = *this;
  g.c_.at(i) = e;
  return g;
}

GridIndex GridIndex::inserted(std::size_t pos, const Exponent& e) const {
  GridIndex g = *this;
  g.c_.insert(g.c_.begin() + static_cast<std::ptrdiff_t>(pos), e);
  return g;
}

GridIndex GridIndex::erased(std::size_t pos) const {
  GridIndex g = *this;
  g.c_.erase(g.c_.begin() + static_cast<std::ptrdiff_t>(pos));
  return g;
}

std::size_t GridIndex::count_minus_one() const {
  std::size_t k = 0;
  for (const auto& e : c_) k += e.is_minus_one();
  return k;
}

std::string GridIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? ", " : "") + c_[i].value().pretty();
  return s + ")";
}

NCModule::NCModule(std::size_t axes) : axes_(axes), theta_(axes), var_(axes), can_(axes) {}

std::size_t NCModule::dim(const GridIndex& nu) const {
  auto it = slices_.find(nu);
  return it == slices_.end() ? 0 : it->second;
}

std::size_t NCModule::total_dim() const {
  std::size_t t = 0;
  for (const auto& [nu, d] : slices_) t += d;
  return t;
}

void NCModule::set_slice(const GridIndex& nu, std::size_t dim) {
  if (nu.size() != axes_) throw Error(Errc::InvalidArgument, "grid index " + nu.str() + " has wrong length");
  if (dim > 0) {
    slices_[nu] = dim;
    return;
  }
  slices_.erase(nu);
  for (std::size_t i = 0; i < axes_; ++i) {
    theta_[i].erase(nu);
    if (nu[i].is_minus_one()) {
      var_[i].erase(nu);
      can_[i].erase(nu);
    } else if (nu[i].is_zero()) {
      var_[i].erase(nu.lowered(i));
      can_[i].erase(nu.lowered(i));
    }
  }
}

void NCModule::set_theta(std::size_t axis, const GridIndex& nu, Matrix m) {
  if (axis >= axes_ || nu.size() != axes_) throw Error(Errc::InvalidArgument, "theta key out of range");
  theta_[axis][nu] = std::move(m);
}

void NCModule::set_var(std::size_t axis, const GridIndex& nu, Matrix m) {
  if (axis >= axes_ || nu.size() != axes_) throw Error(Errc::InvalidArgument, "var key out of range");
  var_[axis][nu] = std::move(m);
}

void NCModule::set_can(std::size_t axis, const GridIndex& nu, Matrix m) {
  if (axis >= axes_ || nu.size() != axes_) throw Error(Errc::InvalidArgument, "can key out of range");
  can_[axis][nu] = std::move(m);
}

namespace {

const Matrix* find_in(const SliceMaps& m, const GridIndex& nu) {
  auto it = m.find(nu);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

const Matrix* NCModule::find_theta(std::size_t axis, const GridIndex& nu) const { return find_in(theta_.at(axis), nu); }
const Matrix* NCModule::find_var(std::size_t axis, const GridIndex& nu) const { return find_in(var_.at(axis), nu); }
const Matrix* NCModule::find_can(std::size_t axis, const GridIndex& nu) const { return find_in(can_.at(axis), nu); }

Matrix NCModule::theta(std::size_t axis, const GridIndex& nu) const {
  if (const Matrix* m = find_theta(axis, nu)) return *m;
  return Matrix::scalar(dim(nu), nu[axis].value());
}

Matrix NCModule::var(std::size_t axis, const GridIndex& nu) const {
  if (const Matrix* m = find_var(axis, nu)) return *m;
  return Matrix(dim(nu.raised(axis)), dim(nu));
}

Matrix NCModule::can(std::size_t axis, const GridIndex& nu) const {
  if (const Matrix* m = find_can(axis, nu)) return *m;
  return Matrix(dim(nu), dim(nu.raised(axis)));
}

std::string Violation::str() const {
  std::ostringstream os;
  if (axis) os << "axis " << *axis << ", ";
  os << "index " << index.str() << ": " << identity;
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

namespace detail {

std::vector<GridIndex> minus_one_keys(std::size_t axis, const std::vector<const NCModule*>& ms) {
  std::set<GridIndex> keys;
  for (const NCModule* m : ms)
    for (const auto& [nu, d] : m->slices()) {
      if (nu.size() <= axis) continue;
      if (nu[axis].is_minus_one()) keys.insert(nu);
      else if (nu[axis].is_zero()) keys.insert(nu.lowered(axis));
    }
  return {keys.begin(), keys.end()};
}

}  // namespace detail

namespace {

// Indices nu with nu_i = nu_j = -1 whose square touches a slice.
std::vector<GridIndex> square_keys(std::size_t i, std::size_t j, const std::vector<const NCModule*>& ms) {
  std::set<GridIndex> keys;
  for (const NCModule* m : ms)
    for (const auto& [nu, d] : m->slices()) {
      if (nu[i].is_interior() || nu[j].is_interior()) continue;
      keys.insert(nu.with(i, Exponent(-1)).with(j, Exponent(-1)));
    }
  return {keys.begin(), keys.end()};
}

std::vector<Violation> structural_violations(const NCModule& m) {
  std::vector<Violation> out;
  const std::size_t n = m.axes();
  for (const auto& [nu, d] : m.slices()) {
    if (nu.size() != n) {
      out.push_back({std::nullopt, nu, "index-length", "expected " + std::to_string(n) + " coordinates"});
      continue;
    }
    if (d == 0) out.push_back({std::nullopt, nu, "slice-dimension", "stored slice has dimension 0"});
    for (std::size_t i = 0; i < n; ++i) {
      const Matrix* t = m.find_theta(i, nu);
      if (!t) out.push_back({i, nu, "theta-missing", ""});
      else if (t->rows() != d || t->cols() != d)
        out.push_back({i, nu, "theta-shape", "expected " + std::to_string(d) + "x" + std::to_string(d)});
    }
  }
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [nu, t] : m.theta_maps(i))
      if (!m.has_slice(nu)) out.push_back({i, nu, "theta-absent-slice", "theta given for a slice that is not declared"});
    auto check_map = [&](const SliceMaps& maps, const char* name, bool is_var) {
      for (const auto& [nu, a] : maps) {
        if (!nu[i].is_minus_one()) {
          out.push_back({i, nu, std::string(name) + "-key", "key must have coordinate -1 on its axis"});
          continue;
        }
        GridIndex up = nu.raised(i);
        if (!m.has_slice(nu) || !m.has_slice(up)) {
          out.push_back({i, nu, std::string(name) + "-absent-slice",
                         "references " + (m.has_slice(nu) ? up.str() : nu.str()) + ", which is not declared"});
          continue;
        }
        std::size_t r = is_var ? m.dim(up) : m.dim(nu), c = is_var ? m.dim(nu) : m.dim(up);
        if (a.rows() != r || a.cols() != c)
          out.push_back({i, nu, std::string(name) + "-shape", "expected " + std::to_string(r) + "x" + std::to_string(c)});
      }
    };
    check_map(m.var_maps(i), "var", true);
    check_map(m.can_maps(i), "can", false);
    for (const auto& [nu, d] : m.slices()) {
      if (!nu[i].is_minus_one() || !m.has_slice(nu.raised(i))) continue;
      if (!m.find_var(i, nu)) out.push_back({i, nu, "var-missing", "both slices present"});
      if (!m.find_can(i, nu)) out.push_back({i, nu, "can-missing", "both slices present"});
    }
  }
  return out;
}

}  // namespace

std::vector<Violation> validate(const NCModule& m) {
  std::vector<Violation> out = structural_violations(m);
  if (!out.empty()) return out;
  const std::size_t n = m.axes();
  for (const auto& [nu, d] : m.slices()) {
    for (std::size_t i = 0; i < n; ++i) {
      Matrix t = m.theta(i, nu);
      if (!(t - Matrix::scalar(d, nu[i].value())).pow(d).is_zero())
        out.push_back({i, nu, "nilpotency", "theta - " + nu[i].value().pretty() + " is not nilpotent"});
      for (std::size_t j = i + 1; j < n; ++j)
        if (!commute(t, m.theta(j, nu)))
          out.push_back({i, nu, "theta-commutation", "theta_" + std::to_string(i) + " and theta_" + std::to_string(j)});
    }
  }
  const std::vector<const NCModule*> ms{&m};
  for (std::size_t i = 0; i < n; ++i) {
    for (const GridIndex& nu : detail::minus_one_keys(i, ms)) {
      GridIndex up = nu.raised(i);
      Matrix v = m.var(i, nu), c = m.can(i, nu);
      if (!(c * v == m.theta(i, nu) + Matrix::identity(m.dim(nu))))
        out.push_back({i, nu, "can-var", "can∘var != theta + id on the -1 slice"});
      if (!(v * c == m.theta(i, up)))
        out.push_back({i, up, "var-can", "var∘can != theta on the 0 slice"});
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Matrix tl = m.theta(j, nu), tu = m.theta(j, up);
        if (!(tu * v == v * tl))
          out.push_back({i, nu, "var-theta-commutation", "var_" + std::to_string(i) + " vs theta_" + std::to_string(j)});
        if (!(c * tu == tl * c))
          out.push_back({i, nu, "can-theta-commutation", "can_" + std::to_string(i) + " vs theta_" + std::to_string(j)});
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const GridIndex& a : square_keys(i, j, ms)) {
        GridIndex b = a.raised(i), c = a.raised(j);
        auto where = [&](const char* id) { return Violation{i, a, id, "square with axis " + std::to_string(j)}; };
        if (!(m.var(i, c) * m.var(j, a) == m.var(j, b) * m.var(i, a))) out.push_back(where("var-var-commutation"));
        if (!(m.can(j, a) * m.can(i, c) == m.can(i, a) * m.can(j, b))) out.push_back(where("can-can-commutation"));
        if (!(m.var(i, a) * m.can(j, a) == m.can(j, b) * m.var(i, c))) out.push_back(where("var-can-commutation"));
        if (!(m.var(j, a) * m.can(i, a) == m.can(i, c) * m.var(j, b))) out.push_back(where("can-var-commutation"));
      }
    }
  }
  return out;
}

bool is_valid(const NCModule& m) { return validate(m).empty(); }

void require_valid(const NCModule& m, const std::string& context) {
  auto v = validate(m);
  if (!v.empty()) throw Error(Errc::InvalidModule, context + ": " + v.front().str());
}

NCMorphism::NCMorphism(NCModule source, NCModule target) : src_(std::move(source)), tgt_(std::move(target)) {
  if (src_.axes() != tgt_.axes()) throw Error(Errc::InvalidMorphism, "source and target have different axis counts");
}

void NCMorphism::set(const GridIndex& nu, Matrix m) { maps_[nu] = std::move(m); }

Matrix NCMorphism::at(const GridIndex& nu) const {
  if (auto it = maps_.find(nu); it != maps_.end()) return it->second;
  return Matrix(tgt_.dim(nu), src_.dim(nu));
}

std::vector<GridIndex> NCMorphism::support() const {
  std::set<GridIndex> s;
  for (const auto& [nu, d] : src_.slices()) s.insert(nu);
  for (const auto& [nu, d] : tgt_.slices()) s.insert(nu);
  return {s.begin(), s.end()};
}

std::vector<Violation> validate(const NCMorphism& f) {
  std::vector<Violation> out;
  const NCModule& s = f.source();
  const NCModule& t = f.target();
  for (const auto& [nu, a] : f.maps()) {
    if (!s.has_slice(nu) && !t.has_slice(nu)) {
      out.push_back({std::nullopt, nu, "map-absent-slice", "index absent from source and target"});
      continue;
    }
    if (a.rows() != t.dim(nu) || a.cols() != s.dim(nu))
      out.push_back({std::nullopt, nu, "map-shape",
                     "expected " + std::to_string(t.dim(nu)) + "x" + std::to_string(s.dim(nu))});
  }
  if (!out.empty()) return out;
  for (const GridIndex& nu : f.support())
    for (std::size_t i = 0; i < s.axes(); ++i)
      if (!(t.theta(i, nu) * f.at(nu) == f.at(nu) * s.theta(i, nu)))
        out.push_back({i, nu, "theta-naturality", "f does not commute with theta"});
  const std::vector<const NCModule*> ms{&s, &t};
  for (std::size_t i = 0; i < s.axes(); ++i)
    for (const GridIndex& nu : detail::minus_one_keys(i, ms)) {
      GridIndex up = nu.raised(i);
      if (!(t.var(i, nu) * f.at(nu) == f.at(up) * s.var(i, nu)))
        out.push_back({i, nu, "var-naturality", "f does not commute with var"});
      if (!(t.can(i, nu) * f.at(up) == f.at(nu) * s.can(i, nu)))
        out.push_back({i, nu, "can-naturality", "f does not commute with can"});
    }
  return out;
}

void require_valid(const NCMorphism& f, const std::string& context) {
  auto v = validate(f);
  if (!v.empty()) throw Error(Errc::InvalidMorphism, context + ": " + v.front().str());
}

NCMorphism identity_morphism(const NCModule& m) {
  NCMorphism f(m, m);
  for (const auto& [nu, d] : m.slices()) f.set(nu, Matrix::identity(d));
  return f;
}

NCMorphism zero_morphism(const NCModule& source, const NCModule& target) { return NCMorphism(source, target); }

namespace detail {

NCMorphism compose_unchecked(const NCMorphism& g, const NCMorphism& f) {
  NCMorphism h(f.source(), g.target());
  for (const auto& [nu, d] : f.source().slices())
    if (g.target().has_slice(nu)) {
      Matrix m = g.at(nu) * f.at(nu);
      if (!m.is_zero()) h.set(nu, std::move(m));
    }
  return h;
}

}  // namespace detail

NCMorphism compose(const NCMorphism& g, const NCMorphism& f) {
  if (!(f.target() == g.source())) throw Error(Errc::InvalidMorphism, "compose: target of f is not the source of g");
  return detail::compose_unchecked(g, f);
}

NCMorphism scale(const NCMorphism& f, const Rational& c) {
  NCMorphism h(f.source(), f.target());
  if (c.is_zero()) return h;
  for (const auto& [nu, a] : f.maps()) h.set(nu, a * c);
  return h;
}

NCMorphism add(const NCMorphism& f, const NCMorphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw Error(Errc::InvalidMorphism, "add: morphisms have different source or target");
  NCMorphism h(f.source(), f.target());
  for (const GridIndex& nu : f.support()) {
    Matrix m = f.at(nu) + g.at(nu);
    if (!m.is_zero()) h.set(nu, std::move(m));
  }
  return h;
}

bool is_zero_morphism(const NCMorphism& f) {
  for (const auto& [nu, a] : f.maps())
    if (!a.is_zero()) return false;
  return true;
}

bool is_isomorphism(const NCMorphism& f) {
  for (const GridIndex& nu : f.support())
    if (f.source().dim(nu) != f.target().dim(nu) || !is_invertible(f.at(nu))) return false;
  return true;
}

bool is_monomorphism(const NCMorphism& f) {
  for (const auto& [nu, d] : f.source().slices())
    if (rank(f.at(nu)) != d) return false;
  return true;
}

bool is_epimorphism(const NCMorphism& f) {
  for (const auto& [nu, d] : f.target().slices())
    if (rank(f.at(nu)) != d) return false;
  return true;
}

NCMorphism inverse(const NCMorphism& f) {
  if (!is_isomorphism(f)) throw Error(Errc::InvalidMorphism, "morphism is not invertible");
  NCMorphism g(f.target(), f.source());
  for (const auto& [nu, d] : f.source().slices()) g.set(nu, nchol::inverse(f.at(nu)));
  return g;
}

namespace {

SubobjectResult submodule_unchecked(const NCModule& m, const SliceMaps& bases) {
  NCModule sub(m.axes());
  std::map<GridIndex, Matrix> linv;
  for (const auto& [nu, k] : bases) {
    if (k.cols() == 0) continue;
    sub.set_slice(nu, k.cols());
    linv[nu] = left_inverse(k);
  }
  for (const auto& [nu, d] : sub.slices()) {
    const Matrix& k = bases.at(nu);
    for (std::size_t i = 0; i < m.axes(); ++i) {
      sub.set_theta(i, nu, linv[nu] * (m.theta(i, nu) * k));
      if (!nu[i].is_minus_one()) continue;
      GridIndex up = nu.raised(i);
      if (!sub.has_slice(up)) continue;
      const Matrix& ku = bases.at(up);
      sub.set_var(i, nu, linv[up] * (m.var(i, nu) * k));
      sub.set_can(i, nu, linv[nu] * (m.can(i, nu) * ku));
    }
  }
  NCMorphism incl(sub, m);
  for (const auto& [nu, d] : sub.slices()) incl.set(nu, bases.at(nu));
  return {std::move(sub), std::move(incl)};
}

QuotientResult quotient_unchecked(const NCModule& m, const SliceMaps& bases) {
  NCModule q(m.axes());
  std::map<GridIndex, QuotientData> qd;
  for (const auto& [nu, d] : m.slices()) {
    auto it = bases.find(nu);
    Matrix b = it == bases.end() ? Matrix(d, 0) : it->second;
    QuotientData data = quotient_data(b, d);
    if (data.section.cols() > 0) q.set_slice(nu, data.section.cols());
    qd.emplace(nu, std::move(data));
  }
  for (const auto& [nu, d] : q.slices()) {
    const QuotientData& here = qd.at(nu);
    for (std::size_t i = 0; i < m.axes(); ++i) {
      q.set_theta(i, nu, here.projection * (m.theta(i, nu) * here.section));
      if (!nu[i].is_minus_one()) continue;
      GridIndex up = nu.raised(i);
      if (!q.has_slice(up)) continue;
      const QuotientData& there = qd.at(up);
      q.set_var(i, nu, there.projection * (m.var(i, nu) * here.section));
      q.set_can(i, nu, here.projection * (m.can(i, nu) * there.section));
    }
  }
  NCMorphism proj(m, q);
  for (const auto& [nu, d] : q.slices()) proj.set(nu, qd.at(nu).projection);
  return {std::move(q), std::move(proj)};
}

}  // namespace

SubobjectResult submodule(const NCModule& m, const SliceMaps& bases) {
  require_valid(m, "submodule");
  for (const auto& [nu, k] : bases)
    if (k.cols() && (!m.has_slice(nu) || k.rows() != m.dim(nu) || rank(k) != k.cols()))
      throw Error(Errc::InvalidArgument, "basis at " + nu.str() + " must have full column rank in the slice");
  SubobjectResult r = submodule_unchecked(m, bases);
  if (!validate(r.inclusion).empty())
    throw Error(Errc::InvalidArgument, "subspaces are not stable under the structure maps");
  return r;
}

QuotientResult quotient(const NCModule& m, const SliceMaps& bases) {
  require_valid(m, "quotient");
  for (const auto& [nu, b] : bases)
    if (b.cols() && (!m.has_slice(nu) || b.rows() != m.dim(nu)))
      throw Error(Errc::InvalidArgument, "span at " + nu.str() + " does not fit the slice");
  QuotientResult r = quotient_unchecked(m, bases);
  if (!validate(r.projection).empty())
    throw Error(Errc::InvalidArgument, "subspaces are not stable under the structure maps");
  return r;
}

namespace detail {

SubobjectResult kernel_unchecked(const NCMorphism& f) {
  SliceMaps bases;
  for (const auto& [nu, d] : f.source().slices()) bases[nu] = kernel_basis(f.at(nu));
  return submodule_unchecked(f.source(), bases);
}

QuotientResult cokernel_unchecked(const NCMorphism& f) {
  SliceMaps bases;
  for (const auto& [nu, d] : f.target().slices()) bases[nu] = f.at(nu);
  return quotient_unchecked(f.target(), bases);
}

ImageFactorization image_unchecked(const NCMorphism& f) {
  SliceMaps bases;
  for (const auto& [nu, d] : f.target().slices()) bases[nu] = image_basis(f.at(nu));
  SubobjectResult im = submodule_unchecked(f.target(), bases);
  NCMorphism epi(f.source(), im.module);
  for (const auto& [nu, d] : im.module.slices())
    if (f.source().has_slice(nu)) epi.set(nu, left_inverse(bases.at(nu)) * f.at(nu));
  return {std::move(im.module), std::move(epi), std::move(im.inclusion)};
}

}  // namespace detail

SubobjectResult kernel(const NCMorphism& f) {
  require_valid(f, "kernel");
  return detail::kernel_unchecked(f);
}

QuotientResult cokernel(const NCMorphism& f) {
  require_valid(f, "cokernel");
  return detail::cokernel_unchecked(f);
}

ImageFactorization image_factorization(const NCMorphism& f) {
  require_valid(f, "image");
  return detail::image_unchecked(f);
}

NCModule image(const NCMorphism& f) { return image_factorization(f).module; }

DirectSum direct_sum(const std::vector<NCModule>& parts) {
  if (parts.empty()) throw Error(Errc::InvalidArgument, "direct sum of no modules");
  const std::size_t n = parts[0].axes();
  for (const auto& p : parts)
    if (p.axes() != n) throw Error(Errc::InvalidArgument, "direct sum of modules with different axis counts");
  DirectSum out;
  out.module = NCModule(n);
  out.offsets.resize(parts.size());
  std::set<GridIndex> all;
  for (const auto& p : parts)
    for (const auto& [nu, d] : p.slices()) all.insert(nu);
  for (const GridIndex& nu : all) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      out.offsets[k][nu] = off;
      off += parts[k].dim(nu);
    }
    out.module.set_slice(nu, off);
  }
  for (const GridIndex& nu : all)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Matrix> t;
      for (const auto& p : parts) t.push_back(p.theta(i, nu));
      out.module.set_theta(i, nu, block_diag(t));
      if (!nu[i].is_minus_one() || !all.count(nu.raised(i))) continue;
      std::vector<Matrix> v, c;
      for (const auto& p : parts) {
        v.push_back(p.var(i, nu));
        c.push_back(p.can(i, nu));
      }
      out.module.set_var(i, nu, block_diag(v));
      out.module.set_can(i, nu, block_diag(c));
    }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    NCMorphism inj(parts[k], out.module), proj(out.module, parts[k]);
    for (const auto& [nu, d] : parts[k].slices()) {
      Matrix e(out.module.dim(nu), d);
      e.set_block(out.offsets[k][nu], 0, Matrix::identity(d));
      inj.set(nu, e);
      proj.set(nu, e.transpose());
    }
    out.injections.push_back(std::move(inj));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

NCModule direct_sum(const NCModule& a, const NCModule& b) { return direct_sum(std::vector<NCModule>{a, b}).module; }

NCMorphism block_morphism(const DirectSum& source, const DirectSum& target,
                          const std::map<std::pair<std::size_t, std::size_t>, NCMorphism>& parts) {
  NCMorphism f(source.module, target.module);
  std::set<GridIndex> all;
  for (const auto& [nu, d] : source.module.slices()) all.insert(nu);
  for (const auto& [nu, d] : target.module.slices()) all.insert(nu);
  for (const GridIndex& nu : all) {
    Matrix m(target.module.dim(nu), source.module.dim(nu));
    for (const auto& [ji, phi] : parts) {
      Matrix blk = phi.at(nu);
      if (blk.rows() == 0 || blk.cols() == 0) continue;
      m.set_block(target.offsets.at(ji.first).at(nu), source.offsets.at(ji.second).at(nu), blk);
    }
    if (!m.is_zero()) f.set(nu, std::move(m));
  }
  return f;
}

bool is_exact(const NCMorphism& f, const NCMorphism& g) {
  if (!(f.target() == g.source())) throw Error(Errc::InvalidMorphism, "is_exact: f and g are not composable");
  if (!is_zero_morphism(detail::compose_unchecked(g, f)))
    throw Error(Errc::CompositionNonzero, "g∘f is not zero");
  for (const auto& [nu, d] : f.target().slices())
    if (rank(f.at(nu)) + rank(g.at(nu)) != d) return false;
  return true;
}

std::size_t eigenspace_dim(const NCModule& m, const std::vector<Rational>& nu) {
  if (nu.size() != m.axes()) throw Error(Errc::InvalidArgument, "eigenspace_dim: tuple length differs from axis count");
  std::vector<Exponent> g;
  for (const auto& x : nu) {
    if (x.is_integer()) g.emplace_back(x <= Rational(-1) ? -1 : 0);
    else g.emplace_back(x - Rational(x.ceil(), mpz_class(1)));
  }
  return m.dim(GridIndex(std::move(g)));
}

NCModule zero_module(std::size_t axes) { return NCModule(axes); }

NCModule point_module(std::size_t dim) {
  NCModule m(0);
  if (dim) m.set_slice(GridIndex{}, dim);
  return m;
}

NCModule external_product(const NCModule& a, const NCModule& b) {
  const std::size_t p = a.axes(), n = a.axes() + b.axes();
  NCModule out(n);
  auto concat = [](const GridIndex& x, const GridIndex& y) {
    std::vector<Exponent> c = x.coords();
    c.insert(c.end(), y.coords().begin(), y.coords().end());
    return GridIndex(std::move(c));
  };
  for (const auto& [mu, da] : a.slices())
    for (const auto& [nu, db] : b.slices()) out.set_slice(concat(mu, nu), da * db);
  for (const auto& [mu, da] : a.slices())
    for (const auto& [nu, db] : b.slices()) {
      GridIndex g = concat(mu, nu);
      Matrix ia = Matrix::identity(da), ib = Matrix::identity(db);
      for (std::size_t i = 0; i < n; ++i) {
        bool left = i < p;
        out.set_theta(i, g, left ? kron(a.theta(i, mu), ib) : kron(ia, b.theta(i - p, nu)));
        if (!g[i].is_minus_one() || !out.has_slice(g.raised(i))) continue;
        if (left) {
          out.set_var(i, g, kron(a.var(i, mu), ib));
          out.set_can(i, g, kron(a.can(i, mu), ib));
        } else {
          out.set_var(i, g, kron(ia, b.var(i - p, nu)));
          out.set_can(i, g, kron(ia, b.can(i - p, nu)));
        }
      }
    }
  return out;
}

}  // namespace nchol
