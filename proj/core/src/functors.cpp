#include "nchol/functors.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "nchol/errors.hpp"
#include "nchol/linalg.hpp"

namespace nchol {

CoordinateDivisorSpec CoordinateDivisorSpec::coordinate_subspace(const std::vector<std::size_t>& axes) {
  CoordinateDivisorSpec y;
  for (auto a : axes) y.unions.push_back({a});
  return y;
}

CoordinateDivisorSpec CoordinateDivisorSpec::parse(const std::string& s) {
  CoordinateDivisorSpec y;
  std::stringstream outer(s);
  std::string group;
  while (std::getline(outer, group, ';')) {
    std::vector<std::size_t> u;
    std::stringstream inner(group);
    std::string tok;
    while (std::getline(inner, tok, ',')) {
      if (tok.empty()) continue;
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw Error(Errc::ParseError, "bad axis '" + tok + "' in divisor spec '" + s + "'");
      u.push_back(std::stoul(tok));
    }
    y.unions.push_back(std::move(u));
  }
  return y;
}

void CoordinateDivisorSpec::check(std::size_t axes) const {
  if (unions.empty()) throw Error(Errc::InvalidSpec, "divisor spec has no unions");
  for (const auto& u : unions) {
    if (u.empty()) throw Error(Errc::InvalidSpec, "divisor spec contains an empty union");
    for (auto a : u)
      if (a >= axes) throw Error(Errc::InvalidSpec, "axis " + std::to_string(a) + " out of range");
  }
}

std::string CoordinateDivisorSpec::str() const {
  std::string s;
  for (std::size_t k = 0; k < unions.size(); ++k) {
    if (k) s += ";";
    for (std::size_t j = 0; j < unions[k].size(); ++j) s += (j ? "," : "") + std::to_string(unions[k][j]);
  }
  return s;
}

namespace {

NCModule localize_module_axis(const NCModule& m, std::size_t i) {
  const std::size_t n = m.axes();
  NCModule l(n);
  // source slice in m for each slice of l
  auto origin = [&](const GridIndex& nu) { return nu[i].is_minus_one() ? nu.raised(i) : nu; };
  for (const auto& [nu, d] : m.slices()) {
    if (nu[i].is_minus_one()) continue;
    l.set_slice(nu, d);
    if (nu[i].is_zero()) l.set_slice(nu.lowered(i), d);
  }
  for (const auto& [nu, d] : l.slices()) {
    GridIndex o = origin(nu);
    for (std::size_t j = 0; j < n; ++j) {
      Matrix t = m.theta(j, o);
      if (j == i && nu[i].is_minus_one()) t -= Matrix::identity(d);
      l.set_theta(j, nu, t);
    }
  }
  for (const auto& [nu, d] : l.slices())
    for (std::size_t j = 0; j < n; ++j) {
      if (!nu[j].is_minus_one() || !l.has_slice(nu.raised(j))) continue;
      if (j == i) {
        l.set_var(i, nu, Matrix::identity(d));
        l.set_can(i, nu, m.theta(i, nu.raised(i)));
      } else {
        GridIndex o = origin(nu);
        l.set_var(j, nu, m.var(j, o));
        l.set_can(j, nu, m.can(j, o));
      }
    }
  return l;
}

LocalizationResult localize_axis(const NCModule& m, std::size_t i) {
  NCModule l = localize_module_axis(m, i);
  NCMorphism unit(m, l);
  for (const auto& [nu, d] : m.slices()) {
    if (!l.has_slice(nu)) continue;
    unit.set(nu, nu[i].is_minus_one() ? m.var(i, nu) : Matrix::identity(d));
  }
  return {std::move(l), std::move(unit)};
}

NCMorphism localize_morphism_axis(const NCMorphism& f, std::size_t i) {
  NCMorphism g(localize_module_axis(f.source(), i), localize_module_axis(f.target(), i));
  std::set<GridIndex> all;
  for (const auto& [nu, d] : g.source().slices()) all.insert(nu);
  for (const auto& [nu, d] : g.target().slices()) all.insert(nu);
  for (const GridIndex& nu : all) {
    Matrix a = f.at(nu[i].is_minus_one() ? nu.raised(i) : nu);
    if (!a.is_zero()) g.set(nu, std::move(a));
  }
  return g;
}

std::vector<std::size_t> normalized_axes(const std::vector<std::size_t>& axes, std::size_t n) {
  std::set<std::size_t> s(axes.begin(), axes.end());
  for (auto a : s)
    if (a >= n) throw Error(Errc::InvalidArgument, "axis " + std::to_string(a) + " out of range");
  return {s.begin(), s.end()};
}

LocalizationResult localize_unchecked(const NCModule& m, const std::vector<std::size_t>& axes) {
  LocalizationResult r{m, identity_morphism(m)};
  for (auto i : normalized_axes(axes, m.axes())) {
    LocalizationResult step = localize_axis(r.module, i);
    r.unit = detail::compose_unchecked(step.unit, r.unit);
    r.module = std::move(step.module);
  }
  return r;
}

}  // namespace

LocalizationResult localize(const NCModule& m, const std::vector<std::size_t>& axes) {
  require_valid(m, "localize");
  return localize_unchecked(m, axes);
}

NCMorphism localize(const NCMorphism& f, const std::vector<std::size_t>& axes) {
  NCMorphism g = f;
  for (auto i : normalized_axes(axes, f.source().axes())) g = localize_morphism_axis(g, i);
  return g;
}

bool is_localized(const NCModule& m, const std::vector<std::size_t>& axes) {
  return is_isomorphism(localize(m, axes).unit);
}

namespace {

struct TermCohomology {
  NCModule h;
  SubobjectResult cycles;  // ker(out) in C
  NCMorphism to_h;         // cycles -> h
};

// Factor f : A -> C through the mono incl : K -> C.
NCMorphism lift_through(const NCMorphism& f, const NCMorphism& incl) {
  NCMorphism g(f.source(), incl.source());
  for (const auto& [nu, d] : incl.source().slices())
    if (f.source().has_slice(nu)) {
      Matrix a = left_inverse(incl.at(nu)) * f.at(nu);
      if (!a.is_zero()) g.set(nu, std::move(a));
    }
  return g;
}

TermCohomology cohomology_at(const NCModule& c, const NCMorphism* in, const NCMorphism* out) {
  SubobjectResult cycles = out ? detail::kernel_unchecked(*out) : SubobjectResult{c, identity_morphism(c)};
  NCMorphism e = in ? lift_through(*in, cycles.inclusion) : zero_morphism(zero_module(c.axes()), cycles.module);
  QuotientResult q = detail::cokernel_unchecked(e);
  return {std::move(q.module), std::move(cycles), std::move(q.projection)};
}

unsigned axis_mask(const std::vector<std::size_t>& axes) {
  unsigned m = 0;
  for (auto a : axes) m |= 1u << a;
  return m;
}

std::vector<std::size_t> mask_axes(unsigned m) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; m >> a; ++a)
    if (m & (1u << a)) out.push_back(a);
  return out;
}

}  // namespace

LocalCohomology local_cohomology(const NCModule& m, const CoordinateDivisorSpec& y) {
  require_valid(m, "local_cohomology");
  y.check(m.axes());
  const std::size_t r = y.unions.size();
  std::vector<unsigned> union_mask;
  for (const auto& u : y.unions) union_mask.push_back(axis_mask(u));

  std::map<unsigned, NCModule> loc;  // by localized axis mask
  auto loc_of = [&](unsigned mask) -> const NCModule& {
    auto it = loc.find(mask);
    if (it == loc.end()) it = loc.emplace(mask, localize_unchecked(m, mask_axes(mask)).module).first;
    return it->second;
  };
  auto axes_of = [&](unsigned subset) {
    unsigned mask = 0;
    for (std::size_t k = 0; k < r; ++k)
      if (subset & (1u << k)) mask |= union_mask[k];
    return mask;
  };

  std::vector<std::vector<unsigned>> subsets(r + 1);
  std::vector<DirectSum> terms;
  for (std::size_t p = 0; p <= r; ++p) {
    subsets[p] = subsets_of_size(r, p);
    std::vector<NCModule> parts;
    for (unsigned s : subsets[p]) parts.push_back(loc_of(axes_of(s)));
    terms.push_back(direct_sum(parts));
  }
  std::vector<NCMorphism> d;
  for (std::size_t p = 0; p < r; ++p) {
    std::map<std::pair<std::size_t, std::size_t>, NCMorphism> parts;
    for (std::size_t src = 0; src < subsets[p].size(); ++src) {
      unsigned s = subsets[p][src];
      const NCModule& from = loc_of(axes_of(s));
      for (std::size_t k = 0; k < r; ++k) {
        if (s & (1u << k)) continue;
        unsigned t = s | (1u << k);
        std::size_t tgt = std::find(subsets[p + 1].begin(), subsets[p + 1].end(), t) - subsets[p + 1].begin();
        unsigned extra = axes_of(t) & ~axes_of(s);
        LocalizationResult step = localize_unchecked(from, mask_axes(extra));
        if (!(step.module == loc_of(axes_of(t))))
          throw std::logic_error("localization along a union depends on the order of axes");
        int sign = std::popcount(s & ((1u << k) - 1)) % 2 ? -1 : 1;
        parts.emplace(std::make_pair(tgt, src), scale(step.unit, Rational(sign)));
      }
    }
    d.push_back(block_morphism(terms[p], terms[p + 1], parts));
  }

  LocalCohomology out;
  std::vector<TermCohomology> h;
  for (std::size_t p = 0; p <= r; ++p) {
    const NCMorphism* in = p > 0 ? &d[p - 1] : nullptr;
    const NCMorphism* o = p < r ? &d[p] : nullptr;
    h.push_back(cohomology_at(terms[p].module, in, o));
    out.gamma[static_cast<int>(p)] = h.back().h;
  }
  // truncated complex: C^1 -> C^2 -> ...
  TermCohomology first = cohomology_at(terms[1].module, nullptr, r > 1 ? &d[1] : nullptr);
  out.cogamma[0] = first.h;
  for (std::size_t q = 1; q < r; ++q) out.cogamma[static_cast<int>(q)] = out.gamma[static_cast<int>(q + 1)];

  const NCMorphism& to_m = terms[0].projections[0];
  out.gamma0_to_m = detail::compose_unchecked(to_m, h[0].cycles.inclusion);
  NCMorphism m_to_c0 = detail::compose_unchecked(d[0], terms[0].injections[0]);
  // first.cycles and h[1].cycles are the same submodule of C^1
  out.m_to_cogamma0 = detail::compose_unchecked(first.to_h, lift_through(m_to_c0, first.cycles.inclusion));
  NCMorphism first_to_cycles = inverse(first.to_h);
  out.cogamma0_to_gamma1 = detail::compose_unchecked(h[1].to_h, first_to_cycles);
  return out;
}

GridIndex dual_index(const GridIndex& nu) {
  std::vector<Exponent> c;
  for (const auto& e : nu.coords()) c.emplace_back(e.is_interior() ? Rational(-1) - e.value() : e.value());
  return GridIndex(std::move(c));
}

namespace {

NCModule dual_unchecked(const NCModule& m) {
  NCModule out(m.axes());
  for (const auto& [nu, d] : m.slices()) out.set_slice(dual_index(nu), d);
  for (const auto& [nu, d] : m.slices()) {
    GridIndex rho = dual_index(nu);
    for (std::size_t i = 0; i < m.axes(); ++i) {
      Matrix nil = m.theta(i, nu) - Matrix::scalar(d, nu[i].value());
      out.set_theta(i, rho, Matrix::scalar(d, rho[i].value()) - nil.transpose());
      if (!nu[i].is_minus_one() || !m.has_slice(nu.raised(i))) continue;
      out.set_can(i, rho, -m.var(i, nu).transpose());
      out.set_var(i, rho, m.can(i, nu).transpose());
    }
  }
  return out;
}

NCMorphism dual_morphism_unchecked(const NCMorphism& f) {
  NCMorphism g(dual_unchecked(f.target()), dual_unchecked(f.source()));
  for (const auto& [nu, a] : f.maps())
    if (!a.is_zero()) g.set(dual_index(nu), a.transpose());
  return g;
}

}  // namespace

NCModule dual(const NCModule& m) {
  require_valid(m, "dual");
  return dual_unchecked(m);
}

NCMorphism dual(const NCMorphism& f) { return dual_morphism_unchecked(f); }

NCMorphism double_dual_iso(const NCModule& m) {
  NCMorphism f(m, dual_unchecked(dual_unchecked(m)));
  for (const auto& [nu, d] : m.slices())
    f.set(nu, Matrix::scalar(d, Rational(nu.count_minus_one() % 2 ? -1 : 1)));
  return f;
}

bool four_term_exact(const NCMorphism& a, const NCMorphism& b, const NCMorphism& c) {
  return is_monomorphism(a) && is_exact(a, b) && is_exact(b, c) && is_epimorphism(c);
}

DualLocalCohomology dual_local_cohomology(const NCModule& m, const CoordinateDivisorSpec& y) {
  require_valid(m, "dual_local_cohomology");
  y.check(m.axes());
  DualLocalCohomology out;
  NCModule dm = dual_unchecked(m);
  LocalCohomology lc = local_cohomology(dm, y);
  for (const auto& [j, h] : lc.gamma) out.dual_gamma[-j] = dual_unchecked(h);
  for (const auto& [j, h] : lc.cogamma) out.dual_cogamma[-j] = dual_unchecked(h);

  NCMorphism phi = double_dual_iso(m);
  NCMorphism phi_inv = inverse(phi);
  out.dual_gamma_m1_to_dual_cogamma0 = dual_morphism_unchecked(lc.cogamma0_to_gamma1);
  out.dual_cogamma0_to_m = detail::compose_unchecked(phi_inv, dual_morphism_unchecked(lc.m_to_cogamma0));
  out.m_to_dual_gamma0 = detail::compose_unchecked(dual_morphism_unchecked(lc.gamma0_to_m), phi);

  out.direct = local_cohomology(m, y);
  out.iota = detail::compose_unchecked(out.direct.m_to_cogamma0, out.dual_cogamma0_to_m);
  out.direct_sequence_exact =
      four_term_exact(out.direct.gamma0_to_m, out.direct.m_to_cogamma0, out.direct.cogamma0_to_gamma1);
  out.dual_sequence_exact =
      four_term_exact(out.dual_gamma_m1_to_dual_cogamma0, out.dual_cogamma0_to_m, out.m_to_dual_gamma0);
  return out;
}

NCModule minimal_extension(const NCModule& m, const CoordinateDivisorSpec& y) {
  require_valid(m, "minimal_extension");
  y.check(m.axes());
  if (y.unions.size() != 1) throw Error(Errc::InvalidSpec, "minimal_extension needs a divisor (a single union)");
  if (!is_isomorphism(localize_unchecked(m, y.unions[0]).unit))
    throw Error(Errc::NotLocalized, "module is not isomorphic to its localization along " + y.str());
  DualLocalCohomology dlc = dual_local_cohomology(m, y);
  return detail::image_unchecked(dlc.iota).module;
}

NCModule kashiwara_push(const NCModule& m, std::size_t new_axis) {
  require_valid(m, "kashiwara_push");
  const std::size_t n = m.axes();
  if (new_axis > n) throw Error(Errc::InvalidArgument, "insertion position out of range");
  auto shift = [&](std::size_t i) { return i < new_axis ? i : i + 1; };
  NCModule out(n + 1);
  for (const auto& [nu, d] : m.slices()) out.set_slice(nu.inserted(new_axis, Exponent(-1)), d);
  for (const auto& [nu, d] : m.slices()) {
    GridIndex g = nu.inserted(new_axis, Exponent(-1));
    out.set_theta(new_axis, g, Matrix::scalar(d, Rational(-1)));
    for (std::size_t i = 0; i < n; ++i) {
      out.set_theta(shift(i), g, m.theta(i, nu));
      if (const Matrix* v = m.find_var(i, nu)) out.set_var(shift(i), g, *v);
      if (const Matrix* c = m.find_can(i, nu)) out.set_can(shift(i), g, *c);
    }
  }
  return out;
}

NCModule kashiwara_pull(const NCModule& m, std::size_t axis) {
  require_valid(m, "kashiwara_pull");
  if (axis >= m.axes()) throw Error(Errc::InvalidArgument, "axis out of range");
  if (!localize_unchecked(m, {axis}).module.is_zero())
    throw Error(Errc::NotSupported, "module is not supported on {z_" + std::to_string(axis) + " = 0}");
  const std::size_t n = m.axes();
  auto shift = [&](std::size_t i) { return i < axis ? i : i - 1; };
  NCModule out(n - 1);
  for (const auto& [nu, d] : m.slices()) out.set_slice(nu.erased(axis), d);
  for (const auto& [nu, d] : m.slices()) {
    GridIndex g = nu.erased(axis);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == axis) continue;
      out.set_theta(shift(i), g, m.theta(i, nu));
      if (const Matrix* v = m.find_var(i, nu)) out.set_var(shift(i), g, *v);
      if (const Matrix* c = m.find_can(i, nu)) out.set_can(shift(i), g, *c);
    }
  }
  return out;
}

}  // namespace nchol
